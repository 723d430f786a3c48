"""
Colorings with no large connected matching
==========================================

Two explicit 2-colorings keep both colors below n, which shows the host
size conditions cannot be weakened.  A search finds the 3-color analogue.
"""

from connmatch import alpha_star, components, figure1_coloring, figure2_coloring, search_3color_lower_bound

for n in (2, 3, 4):
    g = figure1_coloring(n)
    sizes = [alpha_star(g, c).size for c in (1, 2)]
    print(f"K_{g.N}: connected matching numbers {sizes}, blue components "
          f"{sorted(components(g, 2).component_sizes)}")

for n, n1 in [(3, 3), (3, 6), (3, 9)]:
    g = figure2_coloring(n, n1)
    print(f"n={n}, n1={n1}: {[alpha_star(g, c).size for c in (1, 2)]}")

out = search_3color_lower_bound(2)
print("3-coloring of K_5:", out.graph.coloring_word(), out.alpha_star, f"after {out.evaluated} colorings")
