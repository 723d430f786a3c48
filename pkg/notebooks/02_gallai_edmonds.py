"""
The D / A / C decomposition
===========================

D holds vertices missed by some maximum matching, A their other neighbours,
C the rest.  The checker re-derives every structural property from scratch.
"""

from connmatch import ge_decompose, graph_from_edges, verify_ge

# a triangle and two pendant leaves hanging off vertex 3
edges = [(0, 1), (1, 2), (0, 2), (3, 4), (3, 5), (3, 0)]
g = graph_from_edges(6, edges)
dec = ge_decompose(g, 1)
print(dec.to_dict())

report = verify_ge(dec, g, 1)
print("checker passed:", report.passed)

# unmatched vertices of a maximum matching = (#D-components) - |A|
print("deficiency:", dec.k - dec.a, "matching size:", dec.matching_size)
