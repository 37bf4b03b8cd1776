"""Stable graphs and their automorphism groups."""

from collections import Counter

from cohftvoa import enumerate_graphs
from cohftvoa.graphs import StableGraph, aut_order

for g, n in [(0, 3), (0, 4), (1, 1), (1, 2), (2, 0), (0, 5), (1, 3), (2, 2)]:
    graphs = enumerate_graphs(g, n)
    by_edges = Counter(gr.num_edges for gr, _ in graphs)
    print(f"({g},{n}): {len(graphs):4d} graphs, by edge count {dict(sorted(by_edges.items()))}")

for gr, aut in enumerate_graphs(2, 0):
    print(f"  genera={gr.genera} edges={gr.edges}  |Aut|={aut}")

# two genus-0 vertices joined by three edges: swap the vertices, permute the edges
print("theta graph:", aut_order(StableGraph((0, 0), (), ((0, 1),) * 3)))
