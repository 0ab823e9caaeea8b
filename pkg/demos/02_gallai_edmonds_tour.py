"""The Gallai-Edmonds decomposition and what it says about maximum matchings.

Every graph splits canonically into D (vertices some maximum matching
misses), A (the neighbourhood of D), and C (the rest).  The components of D
are factor critical, C is perfectly matchable, and every maximum matching
decomposes along the partition.  This is the engine room of the Morse
constructions in demo 03.
"""

from nonmatching import Graph, gallai_edmonds, matching_number, maximum_matchings
from nonmatching.graphs import (
    gallai_edmonds_violations,
    maximum_matching_split_violations,
)


def tour(name, g):
    ge = gallai_edmonds(g)
    print(f"{name}: nu = {matching_number(g)}")
    print(f"  D components: {[sorted(c) for c in ge.components]}")
    print(f"  A = {sorted(ge.a_set)}, C = {sorted(ge.c_set)}")
    bad = gallai_edmonds_violations(g, ge)
    print(f"  structural properties: {'all hold' if not bad else bad}")
    splits = 0
    for m in maximum_matchings(g):
        if not maximum_matching_split_violations(g, ge, m):
            splits += 1
    print(f"  maximum matchings splitting along the partition: "
          f"{splits}/{len(maximum_matchings(g))}")
    print()


tour("single edge", Graph.from_edges(2, [(0, 1)]))
tour("path on 3", Graph.path(3))
tour("5-cycle (factor critical)", Graph.cycle(5))
tour("two triangles sharing nothing",
     Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]))
tour("a star plus a triangle",
     Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (3, 5)]))

# Perturbation invariance: edges inside A, or between A and C, never change
# the decomposition.
g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 3)])
ge = gallai_edmonds(g)
print("host:", sorted(g.edges), "-> A =", sorted(ge.a_set), "C =", sorted(ge.c_set))
for (u, v) in [(1, 3)]:
    for g2 in (g.remove_edge(u, v), g.add_edge(u, v)):
        print(f"  toggling ({u},{v}) keeps the decomposition:",
              gallai_edmonds(g2) == ge)
