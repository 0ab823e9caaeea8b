"""Labelled simple graphs, matchings, and Gallai-Edmonds structure.

Vertices are the integers 0..n-1.  Edges are unordered pairs, normalised to
``(u, v)`` with ``u < v``.  A :class:`Graph` is immutable; every operation
returns a new object, so graphs can be shared freely across workers.

For the exhaustive sweeps the package works with *edge bitmasks*: a host
graph fixes a lexicographically ordered list of edge slots and a subgraph is
the integer whose set bits select slots.  :func:`subset_matching_numbers`
tabulates the matching number of every subgraph of a host in one pass, which
is what makes decompositions of tens of thousands of subgraphs cheap.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import CapExceededError, FormatError, InternalCheckError

DEFAULT_SUBSET_CAP = 1 << 22
DEFAULT_CANONICAL_VERTEX_CAP = 8
DEFAULT_ENUMERATION_EDGE_CAP = 30


def normalize_edge(u: int, v: int) -> tuple[int, int]:
    if u == v:
        raise ValueError(f"loop at vertex {u} is not a valid edge")
    return (u, v) if u < v else (v, u)


def complete_edge_list(n: int) -> list[tuple[int, int]]:
    """Edges of the complete graph on 0..n-1 in lexicographic order."""
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def bipartite_edge_list(x_side, y_side) -> list[tuple[int, int]]:
    """Edges of the complete bipartite graph between two disjoint vertex sets."""
    return sorted(normalize_edge(x, y) for x in x_side for y in y_side)


@dataclass(frozen=True)
class Graph:
    """A finite simple graph on vertices 0..vertex_count-1.

    ``bipartition``, when present, is a pair of disjoint vertex sets covering
    all vertices; every edge must then cross between the two classes.
    """

    vertex_count: int
    edges: frozenset[tuple[int, int]]
    bipartition: tuple[frozenset[int], frozenset[int]] | None = None

    def __post_init__(self):
        n = self.vertex_count
        if n < 0:
            raise ValueError("vertex_count must be non-negative")
        for (u, v) in self.edges:
            if not (0 <= u < v < n):
                raise ValueError(f"edge {(u, v)} out of range for {n} vertices")
        if self.bipartition is not None:
            x, y = self.bipartition
            if x & y:
                raise ValueError("bipartition classes overlap")
            if x | y != frozenset(range(n)):
                raise ValueError("bipartition must cover all vertices")
            for (u, v) in self.edges:
                if (u in x) == (v in x):
                    raise ValueError(f"edge {(u, v)} does not cross the bipartition")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_edges(cls, n, edges, bipartition=None) -> "Graph":
        es = frozenset(normalize_edge(u, v) for (u, v) in edges)
        bp = None
        if bipartition is not None:
            bp = (frozenset(bipartition[0]), frozenset(bipartition[1]))
        return cls(n, es, bp)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, frozenset())

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls.from_edges(n, complete_edge_list(n))

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> "Graph":
        x = range(a)
        y = range(a, a + b)
        return cls.from_edges(a + b, [(u, v) for u in x for v in y], (x, y))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    # -- basic queries -----------------------------------------------------

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return normalize_edge(u, v) in self.edges

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(u if w == v else w for (u, w) in self.edges if v in (u, w))

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def neighborhood(self, vertices) -> frozenset[int]:
        """Vertices outside ``vertices`` adjacent to at least one of them."""
        vs = frozenset(vertices)
        out = set()
        for (u, v) in self.edges:
            if u in vs and v not in vs:
                out.add(v)
            elif v in vs and u not in vs:
                out.add(u)
        return frozenset(out)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    # -- derived graphs ----------------------------------------------------

    def add_edge(self, u: int, v: int) -> "Graph":
        e = normalize_edge(u, v)
        if e in self.edges:
            return self
        return Graph(self.vertex_count, self.edges | {e}, self.bipartition)

    def remove_edge(self, u: int, v: int) -> "Graph":
        e = normalize_edge(u, v)
        if e not in self.edges:
            return self
        return Graph(self.vertex_count, self.edges - {e}, self.bipartition)

    def induced(self, vertices) -> "Graph":
        """Keep only edges with both endpoints in ``vertices`` (labels unchanged)."""
        vs = frozenset(vertices)
        es = frozenset(e for e in self.edges if e[0] in vs and e[1] in vs)
        return Graph(self.vertex_count, es, self.bipartition)

    def induced_bipartite(self, side_a, side_b) -> "Graph":
        """Keep only edges with one endpoint in each of two disjoint vertex sets."""
        sa, sb = frozenset(side_a), frozenset(side_b)
        if sa & sb:
            raise ValueError("sides must be disjoint")
        es = frozenset(
            e for e in self.edges
            if (e[0] in sa and e[1] in sb) or (e[0] in sb and e[1] in sa)
        )
        return Graph(self.vertex_count, es, self.bipartition)

    def delete_vertex(self, v: int) -> "Graph":
        """Drop all edges at ``v``;  the label stays as an isolated vertex."""
        es = frozenset(e for e in self.edges if v not in e)
        return Graph(self.vertex_count, es, self.bipartition)

    def subdivide_edge(self, u: int, v: int) -> "Graph":
        """Replace edge uv by a path u - w - v through a fresh vertex w."""
        e = normalize_edge(u, v)
        if e not in self.edges:
            raise ValueError(f"{e} is not an edge")
        w = self.vertex_count
        es = (self.edges - {e}) | {normalize_edge(u, w), normalize_edge(v, w)}
        return Graph(self.vertex_count + 1, es, None)

    def is_bipartite_graph(self) -> bool:
        """Two-colorability of the underlying graph (ignores the declared classes)."""
        color = {}
        adj = {v: set() for v in range(self.vertex_count)}
        for (u, v) in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        for s in range(self.vertex_count):
            if s in color:
                continue
            color[s] = 0
            stack = [s]
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if w not in color:
                        color[w] = 1 - color[u]
                        stack.append(w)
                    elif color[w] == color[u]:
                        return False
        return True


def subdivided_complete_graph(n: int) -> Graph:
    """K_n with the edge (0, 1) subdivided through a new vertex n."""
    return Graph.complete(n).subdivide_edge(0, 1)


@dataclass(frozen=True)
class Matching:
    """A set of pairwise vertex-disjoint edges."""

    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        seen = set()
        for (u, v) in self.edges:
            if u in seen or v in seen or u == v:
                raise ValueError("edges of a matching must be pairwise disjoint")
            seen.add(u)
            seen.add(v)

    def __len__(self):
        return len(self.edges)

    def covered(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e)


# ---------------------------------------------------------------------------
# Matching number
# ---------------------------------------------------------------------------


def _adjacency_masks(g: Graph, support=None) -> list[int]:
    vs = frozenset(range(g.vertex_count)) if support is None else frozenset(support)
    if not vs <= frozenset(range(g.vertex_count)):
        raise ValueError("support must be a subset of the vertex set")
    adj = [0] * g.vertex_count
    for (u, v) in g.edges:
        if u in vs and v in vs:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    return adj


def matching_number(g: Graph, support=None) -> int:
    """Maximum number of pairwise disjoint edges (within ``support`` if given).

    Exact exponential search on the set of still-available vertices, memoised;
    no caps because every caller is desk scale by construction.
    """
    adj = _adjacency_masks(g, support)
    vs = range(g.vertex_count) if support is None else sorted(support)
    avail0 = 0
    for v in vs:
        avail0 |= 1 << v
    memo: dict[int, int] = {}

    def rec(avail: int) -> int:
        key = avail
        got = memo.get(key)
        if got is not None:
            return got
        # least available vertex with an available neighbour
        m = avail
        v = -1
        while m:
            cand = (m & -m).bit_length() - 1
            if adj[cand] & avail:
                v = cand
                break
            m &= m - 1
        if v < 0:
            memo[key] = 0
            return 0
        best = rec(avail & ~(1 << v))  # v stays unmatched
        nb = adj[v] & avail
        while nb:
            u = (nb & -nb).bit_length() - 1
            nb &= nb - 1
            best = max(best, 1 + rec(avail & ~(1 << v) & ~(1 << u)))
        memo[key] = best
        return best

    return rec(avail0)


def maximum_matching(g: Graph, support=None) -> Matching:
    """One maximum matching, as a certificate for :func:`matching_number`."""
    target = matching_number(g, support)
    chosen: list[tuple[int, int]] = []
    adj = _adjacency_masks(g, support)
    vs = range(g.vertex_count) if support is None else sorted(support)
    avail = 0
    for v in vs:
        avail |= 1 << v

    def nu(avail):
        sup = [v for v in range(g.vertex_count) if avail >> v & 1]
        return matching_number(g, [v for v in sup])

    need = target
    while need > 0:
        m = avail
        progressed = False
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            nb = adj[v] & avail
            if not nb:
                continue
            while nb:
                u = (nb & -nb).bit_length() - 1
                nb &= nb - 1
                rest = avail & ~(1 << v) & ~(1 << u)
                if 1 + nu(rest) == need:
                    chosen.append(normalize_edge(v, u))
                    avail = rest
                    need -= 1
                    progressed = True
                    break
            if progressed:
                break
        if not progressed:  # pragma: no cover - would contradict matching_number
            raise InternalCheckError("failed to extract a maximum matching certificate")
    return Matching(frozenset(chosen))


def maximum_matchings(g: Graph, edge_cap: int = DEFAULT_ENUMERATION_EDGE_CAP) -> list[Matching]:
    """All maximum matchings, by exhaustive search over the edge list."""
    if g.edge_count > edge_cap:
        raise CapExceededError(
            f"{g.edge_count} edges exceeds the enumeration cap {edge_cap}"
        )
    edges = g.sorted_edges()
    nu = matching_number(g)
    out: list[Matching] = []

    def rec(i: int, used: frozenset[int], acc: tuple):
        if len(acc) + (len(edges) - i) < nu:
            return
        if i == len(edges):
            if len(acc) == nu:
                out.append(Matching(frozenset(acc)))
            return
        rec(i + 1, used, acc)
        (u, v) = edges[i]
        if u not in used and v not in used:
            rec(i + 1, used | {u, v}, acc + ((u, v),))

    rec(0, frozenset(), ())
    if nu == 0:
        return [Matching(frozenset())]
    return out


# ---------------------------------------------------------------------------
# Perfect matchings and factor criticality
# ---------------------------------------------------------------------------


def has_perfect_matching(g: Graph, support) -> bool:
    """True iff some matching of g covers every vertex of ``support``.

    The empty support is vacuously coverable.
    """
    sup = frozenset(support)
    if not sup:
        return True
    if len(sup) % 2:
        return False
    return 2 * matching_number(g, sup) == len(sup)


def is_factor_critical(g: Graph, support) -> bool:
    """True iff deleting any single vertex of ``support`` leaves a perfectly
    matchable graph on the rest.  A single vertex with no edges qualifies."""
    sup = frozenset(support)
    return all(has_perfect_matching(g, sup - {v}) for v in sup)


def _covers_side(g: Graph, x_side, y_side) -> bool:
    """Does g[x_side, y_side] have a matching covering y_side?"""
    ys = frozenset(y_side)
    if not ys:
        return True
    h = g.induced_bipartite(x_side, ys)
    return matching_number(h, frozenset(x_side) | ys) == len(ys)


def is_y_factor_critical(g: Graph, x_side, y_side) -> bool:
    """Covered-side factor criticality for a bipartite graph.

    True iff for every vertex x of ``x_side`` the graph minus x still has a
    matching covering ``y_side``.  Evaluated twice, by the deletion definition
    and by the Hall surplus criterion |N(Y')| > |Y'| for all non-empty
    Y' of ``y_side``; the two must agree or the implementation is broken.
    The empty ``y_side`` qualifies vacuously.
    """
    xs, ys = frozenset(x_side), frozenset(y_side)
    if xs & ys:
        raise ValueError("sides must be disjoint")
    for e in g.induced(xs | ys).edges:
        if (e[0] in xs) == (e[1] in xs):
            raise ValueError(f"edge {e} does not cross the given sides")

    by_deletion = all(_covers_side(g.delete_vertex(x), xs - {x}, ys) for x in xs)
    if not xs and ys:
        # no vertex to delete: the literal quantifier is vacuous, but an
        # empty side cannot cover a non-empty one (|X| > |Y| is necessary)
        by_deletion = False

    h = g.induced_bipartite(xs, ys)
    by_hall = True
    ylist = sorted(ys)
    for r in range(1, len(ylist) + 1):
        for sub in itertools.combinations(ylist, r):
            if len(h.neighborhood(sub) & xs) <= r:
                by_hall = False
                break
        if not by_hall:
            break
    if not ys:
        by_hall = True

    if by_deletion != by_hall:
        raise InternalCheckError(
            "deletion-based and Hall-surplus criteria disagree on "
            f"x={sorted(xs)} y={sorted(ys)} edges={sorted(h.edges)}"
        )
    return by_deletion


def is_yz_factor_critical(g: Graph, x_side, y_side, z_subset) -> bool:
    """Two-level bipartite factor criticality.

    True iff g is ``y_side``-factor critical and the induced subgraph between
    ``z_subset`` and ``y_side`` is ``z_subset``-factor critical.  Empty
    ``z_subset`` reduces to plain ``y_side``-factor criticality.
    """
    zs = frozenset(z_subset)
    if not zs <= frozenset(x_side):
        raise ValueError("z_subset must be contained in x_side")
    if not is_y_factor_critical(g, x_side, y_side):
        return False
    return is_y_factor_critical(g.induced_bipartite(zs, y_side), y_side, zs)


# ---------------------------------------------------------------------------
# Gallai-Edmonds decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GallaiEdmondsDecomposition:
    """The canonical vertex partition (D_1, ..., D_r; A; C).

    ``components`` lists the connected components of the induced graph on the
    set D of vertices missed by some maximum matching, ordered by smallest
    vertex label; ``a_set`` is the neighbourhood of D; ``c_set`` the rest.
    """

    components: tuple[frozenset[int], ...]
    a_set: frozenset[int]
    c_set: frozenset[int]

    @property
    def d_set(self) -> frozenset[int]:
        return frozenset(v for comp in self.components for v in comp)

    @property
    def component_count(self) -> int:
        return len(self.components)


def _components_within(g: Graph, vertices) -> tuple[frozenset[int], ...]:
    vs = set(vertices)
    comps = []
    while vs:
        start = min(vs)
        comp = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if w in vs and w not in comp:
                    comp.add(w)
                    stack.append(w)
        comps.append(frozenset(comp))
        vs -= comp
    comps.sort(key=min)
    return tuple(comps)


def gallai_edmonds(g: Graph) -> GallaiEdmondsDecomposition:
    """Compute the decomposition straight from the definition.

    D is the set of vertices whose deletion does not drop the matching
    number; that needs one matching-number call per vertex, which desk scale
    affords and which keeps the code oracle-checkable.
    """
    n = g.vertex_count
    nu = matching_number(g)
    full = frozenset(range(n))
    d = frozenset(v for v in range(n) if matching_number(g, full - {v}) == nu)
    a = g.neighborhood(d)
    c = full - d - a
    return GallaiEdmondsDecomposition(_components_within(g, d), a, c)


def gallai_edmonds_violations(g: Graph, ge: GallaiEdmondsDecomposition) -> list[str]:
    """Check the structural properties of a decomposition; return violations.

    Verified: the parts partition V; A equals the neighbourhood of D; each
    component induces a connected factor-critical subgraph; C is perfectly
    matchable; the component count equals |A| + |V| - 2 nu(G); and for every
    component there is a matching of A into the *other* components hitting
    each at most once.
    """
    bad = []
    n = g.vertex_count
    parts = [ge.d_set, ge.a_set, ge.c_set]
    if ge.d_set | ge.a_set | ge.c_set != frozenset(range(n)) or (
        len(ge.d_set) + len(ge.a_set) + len(ge.c_set) != n
    ):
        bad.append("partition")
    if g.neighborhood(ge.d_set) != ge.a_set:
        bad.append("a-is-neighborhood-of-d")
    if _components_within(g, ge.d_set) != ge.components:
        bad.append("component-structure")
    for comp in ge.components:
        if not is_factor_critical(g, comp):
            bad.append(f"factor-critical-{min(comp)}")
    if not has_perfect_matching(g, ge.c_set):
        bad.append("c-perfectly-matchable")
    if ge.component_count != len(ge.a_set) + n - 2 * matching_number(g):
        bad.append("component-count")
    # A can be matched into distinct components avoiding any one of them.
    r = ge.component_count
    for skip in range(max(r, 1)):
        if not ge.a_set:
            break
        if r == 0:
            bad.append("a-matching-no-components")
            break
        aux_n = len(ge.a_set) + r
        a_list = sorted(ge.a_set)
        aux_edges = []
        for ai, a in enumerate(a_list):
            for ci, comp in enumerate(ge.components):
                if ci == skip:
                    continue
                if g.neighbors(a) & comp:
                    aux_edges.append((ai, len(a_list) + ci))
        aux = Graph.from_edges(aux_n, aux_edges)
        if matching_number(aux) != len(a_list):
            bad.append(f"a-matching-avoiding-component-{skip}")
    return bad


def maximum_matching_split_violations(
    g: Graph, ge: GallaiEdmondsDecomposition, m: Matching
) -> list[str]:
    """Check that one maximum matching splits along the decomposition.

    Expected: a perfect matching on C; one edge from each vertex of A into D,
    hitting pairwise distinct components; and a near-perfect matching inside
    each component.
    """
    bad = []
    c_edges = {e for e in m.edges if e[0] in ge.c_set and e[1] in ge.c_set}
    if frozenset(v for e in c_edges for v in e) != ge.c_set:
        bad.append("c-part-not-perfect")
    comp_of = {}
    for i, comp in enumerate(ge.components):
        for v in comp:
            comp_of[v] = i
    hit = []
    covered_a = set()
    for e in m.edges:
        (u, v) = e
        in_a = [w for w in e if w in ge.a_set]
        in_d = [w for w in e if w in ge.d_set]
        if len(in_a) == 1 and len(in_d) == 1:
            covered_a.add(in_a[0])
            hit.append(comp_of[in_d[0]])
        elif len(in_a) == 2 or (len(in_a) == 1 and not in_d):
            bad.append("a-edge-not-into-d")
    if covered_a != ge.a_set:
        bad.append("a-not-covered-into-d")
    if len(hit) != len(set(hit)):
        bad.append("a-edges-share-component")
    for i, comp in enumerate(ge.components):
        inside = sum(1 for e in m.edges if e[0] in comp and e[1] in comp)
        if inside != (len(comp) - 1) // 2:
            bad.append(f"component-{i}-not-near-perfect")
    return bad


# ---------------------------------------------------------------------------
# Canonical forms and enumeration
# ---------------------------------------------------------------------------


def edge_slot_table(n: int) -> dict[tuple[int, int], int]:
    return {e: i for i, e in enumerate(complete_edge_list(n))}


def graph_to_mask(g: Graph) -> int:
    slots = edge_slot_table(g.vertex_count)
    mask = 0
    for e in g.edges:
        mask |= 1 << slots[e]
    return mask


def mask_to_graph(n: int, mask: int, bipartition=None) -> Graph:
    slots = complete_edge_list(n)
    edges = [slots[i] for i in range(len(slots)) if mask >> i & 1]
    return Graph.from_edges(n, edges, bipartition)


def _relabel_mask(n: int, mask: int, perm: list[int], slots, index) -> int:
    out = 0
    m = mask
    while m:
        i = (m & -m).bit_length() - 1
        m &= m - 1
        (u, v) = slots[i]
        out |= 1 << index[normalize_edge(perm[u], perm[v])]
    return out


def canonical_form(g: Graph, vertex_cap: int = DEFAULT_CANONICAL_VERTEX_CAP):
    """Minimum edge-bitmask over all vertex relabelings.

    Isomorphic graphs map to identical encodings.  When a bipartition is
    present only relabelings preserving the classes are considered (the two
    sides may swap when they have equal size), and the class sizes are part
    of the encoding.  Exhaustive over permutations, hence the vertex cap.
    """
    n = g.vertex_count
    if n > vertex_cap:
        raise CapExceededError(f"{n} vertices exceeds the canonical-form cap {vertex_cap}")
    slots = complete_edge_list(n)
    index = edge_slot_table(n)
    mask = graph_to_mask(g)
    if g.bipartition is None:
        best = min(
            _relabel_mask(n, mask, list(p), slots, index)
            for p in itertools.permutations(range(n))
        )
        return (n, None, best)

    x, y = g.bipartition
    xs, ys = sorted(x), sorted(y)
    sides = [(xs, ys)]
    if len(xs) == len(ys):
        sides.append((ys, xs))
    best = None
    for (a_side, b_side) in sides:
        for pa in itertools.permutations(range(len(a_side))):
            for pb in itertools.permutations(range(len(b_side))):
                perm = [0] * n
                for i, v in enumerate(a_side):
                    perm[v] = pa[i]
                for i, v in enumerate(b_side):
                    perm[v] = len(a_side) + pb[i]
                cand = _relabel_mask(n, mask, perm, slots, index)
                if best is None or cand < best:
                    best = cand
    return (n, (len(xs), len(ys)), best)


def all_graph_masks(n: int):
    """Every labelled graph on n vertices, as a bitmask over K_n slots."""
    return range(1 << (n * (n - 1) // 2))


def _slot_permutations(slots, index, perms) -> list[list[int]]:
    maps = []
    for perm in perms:
        maps.append([index[normalize_edge(perm[u], perm[v])] for (u, v) in slots])
    return maps


def _apply_slot_map(mask: int, pmap) -> int:
    out = 0
    m = mask
    while m:
        b = (m & -m).bit_length() - 1
        m &= m - 1
        out |= 1 << pmap[b]
    return out


def _orbit_representatives(n_slots: int, slot_maps, masks) -> list[int]:
    seen = bytearray(1 << n_slots)
    reps = []
    for mask in masks:
        if seen[mask]:
            continue
        reps.append(mask)
        for pmap in slot_maps:
            seen[_apply_slot_map(mask, pmap)] = 1
    return reps


def graph_isomorphism_classes(n: int) -> list[Graph]:
    """One representative per isomorphism class of graphs on n vertices.

    Orbit enumeration under all vertex permutations; the representative is
    the smallest edge bitmask of its class.
    """
    slots = complete_edge_list(n)
    index = edge_slot_table(n)
    maps = _slot_permutations(slots, index, [list(p) for p in itertools.permutations(range(n))])
    reps = _orbit_representatives(len(slots), maps, all_graph_masks(n))
    return [mask_to_graph(n, m) for m in reps]


def bipartite_subgraph_classes(a: int, b: int) -> list[Graph]:
    """Representatives of subgraphs of the complete bipartite graph, up to
    relabelings preserving (or swapping, when a == b) the two classes."""
    host = Graph.complete_bipartite(a, b)
    host_edges = host.sorted_edges()
    index = {e: i for i, e in enumerate(host_edges)}
    n = a + b
    perms = []
    for pa in itertools.permutations(range(a)):
        for pb in itertools.permutations(range(b)):
            perms.append([pa[i] for i in range(a)] + [a + pb[j] for j in range(b)])
            if a == b:
                # class-swapping relabelings exist only for equal sides
                perms.append([a + pa[i] for i in range(a)] + [pb[j] for j in range(b)])
    maps = _slot_permutations(host_edges, index, perms)
    reps = _orbit_representatives(len(host_edges), maps, range(1 << len(host_edges)))
    out = []
    for m in reps:
        edges = [host_edges[i] for i in range(len(host_edges)) if m >> i & 1]
        out.append(Graph.from_edges(n, edges, host.bipartition))
    return out


# ---------------------------------------------------------------------------
# All-subsets matching number table
# ---------------------------------------------------------------------------


def subset_matching_numbers(
    edges: list[tuple[int, int]], cap: int = DEFAULT_SUBSET_CAP
) -> np.ndarray:
    """nu of every edge subset of a host, as a uint8 array indexed by bitmask.

    Recurrence on the lowest set bit b of the mask: either drop that edge, or
    take it and drop everything sharing an endpoint with it.  Both referenced
    masks are strictly smaller, so one pass in increasing order suffices;
    the inner work is vectorised per choice of lowest bit.
    """
    m = len(edges)
    if (1 << m) > cap:
        raise CapExceededError(f"2^{m} subsets exceeds the enumeration cap {cap}")
    conflict = np.zeros(m, dtype=np.int64)
    for i, (u, v) in enumerate(edges):
        for j, (x, y) in enumerate(edges):
            if {u, v} & {x, y}:
                conflict[i] |= 1 << j
    nu = np.zeros(1 << m, dtype=np.uint8)
    # masks with lowest set bit b reference masks whose lowest bit is larger,
    # so sweep b from high to low
    for b in range(m - 1, -1, -1):
        hi = np.arange(1 << (m - b - 1), dtype=np.int64) << (b + 1)
        masks = hi | (1 << b)
        skip = nu[hi]
        take = nu[masks & ~conflict[b]] + 1
        nu[masks] = np.maximum(skip, take)
    return nu


# ---------------------------------------------------------------------------
# Edge-list text format
# ---------------------------------------------------------------------------


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format.

    First meaningful line: either ``n`` or ``n = |X| |Y|`` (bipartite, X is
    0..|X|-1 and Y the rest).  Every further line is an edge ``u v`` with
    0-based labels.  Blank lines and ``#`` comments are ignored.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise FormatError("empty graph file")
    head = lines[0]
    bipartition = None
    if "=" in head:
        left, _, right = head.partition("=")
        try:
            n = int(left.strip())
            a, b = (int(t) for t in right.split())
        except ValueError as exc:
            raise FormatError(f"bad header {head!r}") from exc
        if a + b != n:
            raise FormatError(f"bipartition sizes {a}+{b} do not sum to {n}")
        bipartition = (range(a), range(a, n))
    else:
        try:
            n = int(head)
        except ValueError as exc:
            raise FormatError(f"bad header {head!r}") from exc
    edges = []
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"bad edge line {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise FormatError(f"bad edge line {line!r}") from exc
        edges.append((u, v))
    try:
        return Graph.from_edges(n, edges, bipartition)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def format_graph(g: Graph) -> str:
    head = str(g.vertex_count)
    if g.bipartition is not None:
        x, y = g.bipartition
        # the text format can only express prefix-shaped classes
        if x == frozenset(range(len(x))):
            head = f"{g.vertex_count} = {len(x)} {len(y)}"
    body = "\n".join(f"{u} {v}" for (u, v) in g.sorted_edges())
    return head + ("\n" + body if body else "") + "\n"


def load_graph(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())
