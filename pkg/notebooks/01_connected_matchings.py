"""
Connected matchings in one color
================================

A connected matching is a matching whose edges all sit in one component of
the color class.  It can be much smaller than the plain matching number.
"""

from connmatch import alpha_star, graph_from_edges, max_matching

# two disjoint edges: matching number 2, but each component holds only one
g = graph_from_edges(4, [(0, 1), (2, 3)])
print("plain matching:", max_matching(g, 1).size)
print("connected matching:", alpha_star(g, 1).size)

# joining the two edges by a bridge puts everything in one component
g = graph_from_edges(4, [(0, 1), (1, 2), (2, 3)])
cert = alpha_star(g, 1)
print("after bridging:", cert.size, cert.edges)

# certificates check themselves against the graph
cert.validate(g, 1)
print(cert.to_dict())
