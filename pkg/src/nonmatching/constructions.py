"""Recursive acyclic-matching constructions on the special graph families.

Five builders, one per family: graphs with a perfect matching (PM), factor
critical graphs (FC), bipartite two-level factor critical graphs (BFC), and
the two "link" families of bounded-matching-number supergraphs of a fixed
subgraph, over a complete or complete bipartite host.

Each builder materialises its family explicitly, decomposes it along the
Gallai-Edmonds structure of the members, builds matchings for the pieces out
of the combinators in :mod:`nonmatching.morse`, and re-verifies the claimed
decompositions along the way (join structures are checked for exact equality
with the definitional member lists; cluster maps are checked monotone; lifts
are checked for critical-set injectivity).  The guaranteed critical-size
bounds, with their strictness clauses, are recorded on the result for the
caller to assert:

    PM:   |sigma| <= (3/2)|V| + |H|        (strict when V is non-empty)
    FC:   |sigma| <= (3/2)(|V|-1) + |H|    (strict when H has an edge)
    BFC:  |sigma| <= 2|Y| + |Z| + |H|      (strict when H has an edge)
    link, complete host:   |sigma| <= 3k-4+|H|
    link, bipartite host:  |sigma| <= 2k-3+|H|

Faces are bitmasks over the host ground (the complete or complete bipartite
edge list); recursive calls share the top-level host so that sub-results
compose by plain union.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .complexes import GroundSet, mask_bits
from .errors import EmptyFamilyError, InternalCheckError
from .graphs import (
    Graph,
    bipartite_edge_list,
    complete_edge_list,
    normalize_edge,
    subset_matching_numbers,
)
from .morse import (
    ElementMatching,
    JoinPart,
    _subsets_of,
    boolean_matching,
    cluster_union,
    join_matching,
    projection_matching,
)


def _complete_ground(vs) -> GroundSet:
    return GroundSet(tuple(sorted(normalize_edge(u, v) for u, v in itertools.combinations(sorted(vs), 2))))


class _Host:
    """One host graph: its ground, nu table, and bit bookkeeping."""

    def __init__(self, ground: GroundSet):
        self.ground = ground
        self.index = ground.index()
        self.edges = ground.elements
        self.nu = subset_matching_numbers(list(ground.elements))
        self.bits_at: dict[int, int] = {}
        for i, (u, v) in enumerate(self.edges):
            self.bits_at[u] = self.bits_at.get(u, 0) | (1 << i)
            self.bits_at[v] = self.bits_at.get(v, 0) | (1 << i)

    def mask_of(self, edges) -> int:
        m = 0
        for e in edges:
            m |= 1 << self.index[normalize_edge(*e)]
        return m

    def bits_within(self, vs) -> int:
        s = frozenset(vs)
        m = 0
        for i, (u, v) in enumerate(self.edges):
            if u in s and v in s:
                m |= 1 << i
        return m

    def bits_between(self, a, b) -> int:
        sa, sb = frozenset(a), frozenset(b)
        m = 0
        for i, (u, v) in enumerate(self.edges):
            if (u in sa and v in sb) or (u in sb and v in sa):
                m |= 1 << i
        return m

    def endpoints(self, bit: int) -> tuple[int, int]:
        return self.edges[bit]

    def nu_of(self, mask: int) -> int:
        return int(self.nu[mask])

    def neighbors_in(self, mask: int, v: int) -> frozenset[int]:
        out = set()
        for b in mask_bits(mask & self.bits_at.get(v, 0)):
            (x, y) = self.edges[b]
            out.add(x if y == v else y)
        return frozenset(out)

    def ge_of_mask(self, mask: int, vs):
        """Gallai-Edmonds data of a member graph on the vertex set vs."""
        nu = self.nu_of(mask)
        d = frozenset(
            u for u in vs if self.nu_of(mask & ~self.bits_at.get(u, 0)) == nu
        )
        a = set()
        for b in mask_bits(mask):
            (u, v) = self.edges[b]
            if (u in d) != (v in d):
                a.add(v if u in d else u)
        a = frozenset(a)
        c = frozenset(vs) - d - a
        comps = []
        rest = set(d)
        while rest:
            start = min(rest)
            comp = {start}
            stack = [start]
            while stack:
                u = stack.pop()
                for w in self.neighbors_in(mask, u):
                    if w in rest and w not in comp:
                        comp.add(w)
                        stack.append(w)
            comps.append(frozenset(comp))
            rest -= comp
        comps.sort(key=min)
        return nu, d, a, c, tuple(comps)


def _ge_key(host: _Host, mask: int, vs):
    _, d, a, _, comps = host.ge_of_mask(mask, vs)
    return (d, d | a, comps)


def _ge_leq(k1, k2) -> bool:
    """Partial order on decomposition keys making the key map monotone.

    Strictly comparable when the (D, D union A) pairs are nested and differ;
    equal keys compare equal; same pair with different components stays
    incomparable.
    """
    if k1 == k2:
        return True
    d1, da1, _ = k1
    d2, da2, _ = k2
    return d1 <= d2 and da1 <= da2 and (d1, da1) != (d2, da2)


def _supersets_within(h_mask: int, within: int):
    free = within & ~h_mask
    for s in _subsets_of(free):
        yield h_mask | s


def _hall_surplus(neigh: dict, side: list, strict: bool) -> bool:
    """Hall condition over all non-empty subsets of ``side``.

    strict=True demands |N(S)| > |S| (factor-critical surplus), else >=.
    """
    for r in range(1, len(side) + 1):
        for sub in itertools.combinations(side, r):
            n = set()
            for v in sub:
                n |= neigh[v]
            if strict and len(n) <= r:
                return False
            if not strict and len(n) < r:
                return False
    return True


class ConstructionError(InternalCheckError):
    pass


# ---------------------------------------------------------------------------
# Family enumeration on a host (mask level)
# ---------------------------------------------------------------------------


def _pm_masks(host: _Host, vs, h_mask: int) -> list[int]:
    vs = tuple(sorted(vs))
    if not vs:
        return [0] if h_mask == 0 else []
    if len(vs) % 2:
        return []
    kv = host.bits_within(vs)
    target = len(vs) // 2
    return sorted(m for m in _supersets_within(h_mask, kv) if host.nu_of(m) == target)


def _fc_masks(host: _Host, vs, h_mask: int) -> list[int]:
    vs = tuple(sorted(vs))
    if len(vs) <= 1:
        return [0] if h_mask == 0 else []
    if len(vs) % 2 == 0:
        return []
    kv = host.bits_within(vs)
    target = (len(vs) - 1) // 2
    out = []
    for m in _supersets_within(h_mask, kv):
        if all(host.nu_of(m & ~host.bits_at.get(v, 0)) == target for v in vs):
            out.append(m)
    return sorted(out)


def _is_side_fc(host: _Host, mask: int, cover_side, other_side) -> bool:
    """Is the bipartite graph (mask) ``cover_side``-factor critical?

    Hall surplus form: every non-empty subset of cover_side has strictly more
    neighbours (within other_side) than its size.
    """
    cs = sorted(cover_side)
    if not cs:
        return True
    other = frozenset(other_side)
    neigh = {v: host.neighbors_in(mask, v) & other for v in cs}
    return _hall_surplus(neigh, cs, strict=True)


def _bfc_masks(host: _Host, xs, ys, zs, h_mask: int) -> list[int]:
    xs, ys, zs = tuple(sorted(xs)), tuple(sorted(ys)), tuple(sorted(zs))
    if not xs or not ys:
        return [0] if h_mask == 0 else []
    kxy = host.bits_between(xs, ys)
    out = []
    for m in _supersets_within(h_mask, kxy):
        if not _is_side_fc(host, m, ys, xs):
            continue
        if zs and not _is_side_fc(host, m & host.bits_between(zs, ys), zs, ys):
            continue
        out.append(m)
    return sorted(out)


def _nmlink_masks(host: _Host, within: int, h_mask: int, k: int) -> list[int]:
    return sorted(m for m in _supersets_within(h_mask, within) if host.nu_of(m) < k)


# ---------------------------------------------------------------------------
# Results
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConstructionResult:
    """A built matching on an explicitly materialised family."""

    kind: str
    ground: GroundSet
    family: tuple[int, ...]
    matching: ElementMatching
    criticals: tuple[int, ...]
    bound: int
    strict: bool

    @property
    def pairs(self):
        return self.matching.pairs

    def max_critical_size(self) -> int:
        return max((m.bit_count() for m in self.criticals), default=0)

    def bound_holds(self) -> bool:
        mx = self.max_critical_size()
        if not self.family:
            return True
        return mx < self.bound if self.strict else mx <= self.bound


def _result(kind, host, family, pairs, bound, strict) -> ConstructionResult:
    matched = set()
    for (s, t) in pairs:
        matched.add(s)
        matched.add(t)
    crit = tuple(sorted(set(family) - matched))
    return ConstructionResult(
        kind=kind,
        ground=host.ground,
        family=tuple(sorted(family)),
        matching=ElementMatching(host.ground, tuple(pairs)),
        criticals=crit,
        bound=bound,
        strict=strict,
    )


def _lift_pairs_checked(host, f_members, f_pairs, face_mask, expected) -> list:
    """Lift a matching by a forced face and check it reproduces ``expected``."""
    if not f_members:
        if expected:
            raise ConstructionError("toggle lift does not reproduce the unmatched part")
        return []
    lifted = _lift_with_face(host, f_members, f_pairs, face_mask)
    if set(lifted.family) != set(expected):
        raise ConstructionError("toggle lift does not reproduce the unmatched part")
    return list(lifted.pairs)


def _lift_with_face(host: _Host, family, pairs, face_mask: int):
    """Join a family matching with the one-face family {face_mask}."""
    fam_ground = 0
    for m in family:
        fam_ground |= m
    fam_ground &= ~face_mask
    res = join_matching(
        [JoinPart.make(fam_ground, family, pairs), JoinPart.single(face_mask)]
    )
    return res


# ---------------------------------------------------------------------------
# Edge picks
# ---------------------------------------------------------------------------


def _pick_e0_complete(host: _Host, vs, h_mask: int) -> tuple[int, int, int]:
    """Least non-subgraph edge, preferring an endpoint of positive h-degree.

    Returns (bit, v, w) where w is an endpoint of positive h-degree when the
    subgraph has any edge at all.
    """
    deg = {u: (h_mask & host.bits_at.get(u, 0)).bit_count() for u in vs}
    kv = host.bits_within(vs)
    for b in mask_bits(kv & ~h_mask):
        (u, v) = host.endpoints(b)
        if h_mask == 0:
            return b, u, v
        if deg[u] or deg[v]:
            w = v if deg[v] else u
            other = u if w == v else v
            return b, other, w
    raise ConstructionError("no admissible toggle edge; host equals the subgraph")


# ---------------------------------------------------------------------------
# BFC builder
# ---------------------------------------------------------------------------


def build_bfc_matching(x_side, y_side, z_subset, h=(), *, host: _Host | None = None) -> ConstructionResult:
    """Acyclic matching on the two-level bipartite factor critical family.

    Members are the subgraphs of the complete bipartite graph between
    ``x_side`` and ``y_side`` containing ``h`` that are y-factor critical and
    whose restriction to ``z_subset`` x ``y_side`` is z-factor critical.
    Critical faces satisfy |sigma| <= 2|Y| + |Z| + |H|, strictly when ``h``
    has an edge.  Raises EmptyFamilyError when there are no members at all
    (as opposed to the one-member family {empty graph}).
    """
    xs, ys, zs = tuple(sorted(x_side)), tuple(sorted(y_side)), tuple(sorted(z_subset))
    if not set(zs) <= set(xs):
        raise ValueError("z_subset must be contained in x_side")
    if host is None:
        host = _Host(GroundSet(tuple(bipartite_edge_list(xs, ys)))) if xs and ys else _Host(GroundSet(()))
    h_mask = h if isinstance(h, int) else host.mask_of(h.edges if isinstance(h, Graph) else h)
    bound = 2 * len(ys) + len(zs) + h_mask.bit_count()
    strict = h_mask.bit_count() >= 1

    if not xs or not ys:
        if h_mask:
            raise ValueError("subgraph cannot have edges over an empty side")
        return _result("BFC", host, [0], [], bound, strict)

    kxy = host.bits_between(xs, ys)
    if h_mask & ~kxy:
        raise ValueError("subgraph leaves the bipartite host")
    family = _bfc_masks(host, xs, ys, zs, h_mask)
    if not family:
        raise EmptyFamilyError(
            f"no (y,z)-factor critical supergraphs for |X|={len(xs)} |Y|={len(ys)} |Z|={len(zs)}"
        )

    x_not_z = tuple(v for v in xs if v not in zs)
    kxz_y = host.bits_between(x_not_z, ys)
    if kxz_y & ~h_mask == 0:
        # everything between X minus Z and Y is forced, so members are exactly
        # the z-factor critical graphs between Y and Z joined with that block
        inner = build_bfc_matching(ys, zs, (), h_mask & host.bits_between(zs, ys), host=host)
        res = join_matching(
            [JoinPart.make(host.bits_between(zs, ys), inner.family, inner.pairs),
             JoinPart.single(kxz_y)]
        )
        if set(res.family) != set(family):
            raise ConstructionError("forced-block join does not reproduce the family")
        return _result("BFC", host, family, res.pairs, bound, strict)

    # toggle edge: v on the y side, w on the x side outside z, not in h;
    # prefer a v with h-neighbours
    cands = []
    for v in ys:
        pref = 0 if (h_mask & host.bits_at.get(v, 0)) else 1
        for w in x_not_z:
            b = host.index.get(normalize_edge(v, w))
            if b is not None and not h_mask >> b & 1:
                cands.append((pref, v, w, b))
    cands.sort()
    _, v0, w0, e0_bit = cands[0]

    pairs0, f0, f1 = boolean_matching(family, e0_bit)
    e0m = 1 << e0_bit
    if any(not m & e0m for m in f1):
        raise ConstructionError("unmatched member without the toggle edge")
    f_members = sorted(m ^ e0m for m in f1)

    vertex_set = tuple(sorted(set(xs) | set(ys)))
    per_key: dict = {}
    groups: dict = {}
    for m in f_members:
        key = _ge_key(host, m, vertex_set)
        groups.setdefault(key, []).append(m)
    for key, members in groups.items():
        per_key[key] = _bfc_subfamily_pairs(host, xs, ys, zs, h_mask, v0, w0, key, members)
    f_pairs = cluster_union(f_members, lambda m: _ge_key(host, m, vertex_set), _ge_leq, per_key)
    lifted_pairs = _lift_pairs_checked(host, f_members, f_pairs, e0m, f1)
    return _result("BFC", host, family, list(pairs0) + lifted_pairs, bound, strict)


def _bfc_subfamily_pairs(host, xs, ys, zs, h_mask, v0, w0, key, members):
    d_set, da_set, _comps = key
    a_set = da_set - d_set
    c_set = (frozenset(xs) | frozenset(ys)) - da_set
    if not (w0 in d_set and d_set <= set(xs)):
        raise ConstructionError("missable set must sit inside the x side")
    if not a_set <= set(ys):
        raise ConstructionError("attachment set must sit inside the y side")
    if v0 not in c_set:
        raise ConstructionError("toggle endpoint must land in the matched part")

    z_d = tuple(sorted(set(zs) & d_set))
    z_c = tuple(sorted(set(zs) & c_set))
    c_x = tuple(sorted(set(xs) & c_set))
    c_y = tuple(sorted(set(ys) & c_set))

    part1 = build_bfc_matching(sorted(d_set), sorted(a_set), z_d,
                               h_mask & host.bits_between(d_set, a_set), host=host)

    fyc_members, fyc_pairs = _fyc_matching(host, xs, ys, h_mask, v0, a_set, c_x, c_y, z_c)

    res = join_matching(
        [JoinPart.make(host.bits_between(d_set, a_set), part1.family, part1.pairs),
         JoinPart.make(host.bits_between(c_x, ys), fyc_members, fyc_pairs)]
    )
    if set(res.family) != set(members):
        raise ConstructionError("missable/matched join does not reproduce the subfamily")
    return res.pairs


def _fyc_matching(host, xs, ys, h_mask, v0, a_set, c_x, c_y, z_c):
    """Matching on the matched-side family of the BFC decomposition.

    Members live between the matched x part and the whole y side and must
    contain the forced subgraph there, have a perfect matching across the
    matched part, and satisfy the two factor-criticality conditions.  They
    are grouped by the pair (N(v0) inside z, N(A+v0) inside z), which is a
    monotone key, and each group splits as a join of four blocks.
    """
    ground = host.bits_between(c_x, ys)
    h_yc = h_mask & ground
    c_y_minus = tuple(v for v in c_y if v != v0)
    members = []
    for m in _supersets_within(h_yc, ground):
        mc = m & host.bits_between(c_x, c_y)
        if not _is_perfectly_matchable_bipartite(host, mc, c_x, c_y):
            continue
        if z_c and not _is_side_fc(host, m & host.bits_between(z_c, ys), z_c, ys):
            continue
        if not _is_side_fc(host, m & host.bits_between(c_x, c_y_minus), c_y_minus, c_x):
            continue
        members.append(m)
    members.sort()

    def type_key(m):
        s = host.neighbors_in(m, v0) & frozenset(z_c)
        st = set(s)
        for a in a_set:
            st |= host.neighbors_in(m, a) & frozenset(z_c)
        return (frozenset(s), frozenset(st))

    def type_leq(k1, k2):
        return k1[0] <= k2[0] and k1[1] <= k2[1]

    groups: dict = {}
    for m in members:
        groups.setdefault(type_key(m), []).append(m)
    per_key = {}
    for (s_set, st_set), group in groups.items():
        t_set = st_set - s_set
        per_key[(s_set, st_set)] = _fyc_type_pairs(
            host, h_mask, v0, a_set, c_x, c_y, z_c, s_set, t_set, group
        )
    return tuple(members), tuple(cluster_union(members, type_key, type_leq, per_key))


def _is_perfectly_matchable_bipartite(host, mask, side_a, side_b) -> bool:
    if len(side_a) != len(side_b):
        return False
    if not side_a:
        return True
    other = frozenset(side_b)
    neigh = {v: host.neighbors_in(mask, v) & other for v in side_a}
    return _hall_surplus(neigh, sorted(side_a), strict=False)


def _fyc_type_pairs(host, h_mask, v0, a_set, c_x, c_y, z_c, s_set, t_set, members):
    q_set = tuple(v for v in c_x if v not in z_c)
    r_set = tuple(v for v in z_c if v not in s_set and v not in t_set)
    c_y_minus = tuple(v for v in c_y if v != v0)

    # block at v0: forced edges to h-neighbours and the s-part, free ones to
    # the rest of the unconstrained x part
    h_v = h_mask & host.bits_at.get(v0, 0) & host.bits_between(c_x, (v0,))
    n_prime = host.neighbors_in(h_v, v0)
    if n_prime & (set(t_set) | set(r_set)):
        raise ConstructionError("forced neighbours contradict the type")
    forced = host.bits_between(sorted(n_prime | s_set), (v0,))
    free_q = host.bits_between([q for q in q_set if q not in n_prime], (v0,))
    if forced:
        if free_q:
            subs = _subsets_of(free_q)
            p, _, rest = boolean_matching(subs, min(mask_bits(free_q)))
            if rest:
                raise ConstructionError("free toggle block must be complete")
            pv = join_matching([JoinPart.single(forced), JoinPart.make(free_q, subs, p)])
            pv_family, pv_pairs = pv.family, pv.pairs
        else:
            pv_family, pv_pairs = (forced,), ()
    else:
        fam = [s for s in _subsets_of(free_q) if s]
        if not fam:
            raise ConstructionError("neighbourless block in a non-empty type")
        pv_pairs, _, _ = boolean_matching(fam, min(mask_bits(free_q)))
        pv_family = tuple(sorted(fam))
    pv_ground = host.bits_between(c_x, (v0,))

    # block between the z-part and the attachment set
    pa_ground = host.bits_between(z_c, a_set)
    h2 = h_mask & pa_ground
    n2 = frozenset(v for v in z_c if h2 & host.bits_at.get(v, 0))
    pa_members = []
    for m in _supersets_within(h2, pa_ground):
        hit = frozenset(v for v in z_c if m & host.bits_at.get(v, 0))
        if not (set(t_set) <= hit <= (set(s_set) | set(t_set))):
            continue
        if not q_set and not hit:
            continue
        pa_members.append(m)
    pa_members.sort()
    if not pa_members:
        raise ConstructionError("empty attachment block in a non-empty type")
    if not a_set:
        pa_family, pa_pairs = tuple(pa_members), ()
    else:
        freebits = host.bits_between(sorted(set(n2) | set(s_set)), a_set) & ~h2
        if freebits:
            e = min(mask_bits(freebits))
            pa_pairs, _, pa_rest = boolean_matching(pa_members, e)
            if pa_rest and pa_rest != [1 << e]:
                raise ConstructionError("attachment toggle left unexpected criticals")
            pa_family = tuple(pa_members)
        else:
            t_minus = tuple(v for v in t_set if v not in n2)
            if not t_minus:
                blocks = [JoinPart.single(h2) if h2 else JoinPart.make(0, (0,), ())]
                res = join_matching(blocks)
            else:
                parts = [host.bits_between((z,), a_set) for z in sorted(t_minus)]
                full = (1 << len(parts)) - 1
                lift = projection_matching(parts, 0, [full], [])
                blocks = [JoinPart.single(h2) if h2 else JoinPart.make(0, (0,), ()),
                          JoinPart.make(host.bits_between(t_minus, a_set), lift.family, lift.pairs)]
                res = join_matching(blocks)
            if set(res.family) != set(pa_members):
                raise ConstructionError("attachment block join does not reproduce its members")
            pa_family, pa_pairs = res.family, res.pairs

    # block between the unconstrained x part and the attachment set
    pq_ground = host.bits_between(q_set, a_set)
    hq = h_mask & pq_ground
    if pq_ground & ~hq:
        pq_family = tuple(sorted(_supersets_within(hq, pq_ground)))
        pq_pairs, _, rest = boolean_matching(pq_family, min(mask_bits(pq_ground & ~hq)))
        if rest:
            raise ConstructionError("interval toggle block must be complete")
    else:
        pq_family, pq_pairs = (hq,), ()

    inner = build_bfc_matching(
        c_x, c_y_minus, r_set, h_mask & host.bits_between(c_x, c_y_minus), host=host
    )

    res = join_matching(
        [JoinPart.make(pv_ground, pv_family, pv_pairs),
         JoinPart.make(pa_ground, pa_family, pa_pairs),
         JoinPart.make(pq_ground, pq_family, pq_pairs),
         JoinPart.make(host.bits_between(c_x, c_y_minus), inner.family, inner.pairs)]
    )
    if set(res.family) != set(members):
        raise ConstructionError("type join does not reproduce the type members")
    return res.pairs


# ---------------------------------------------------------------------------
# Projection bridges
# ---------------------------------------------------------------------------


def _lifted_bfc_projection(host: _Host, d_groups, a_list, z_group_count: int, tau: int):
    """Matching on bipartite graphs between the missable part and ``a_list``
    whose group-contraction is factor critical on the a side.

    ``d_groups`` are disjoint vertex groups; the contraction sends all edges
    between one group and one a-vertex to a single index edge.  The index
    family is a BFC family on a fresh host, matched recursively and lifted
    through the partition projection.
    """
    g_count = len(d_groups)
    a_sorted = sorted(a_list)
    parts = []
    for gi in range(g_count):
        for a in a_sorted:
            parts.append(host.bits_between(d_groups[gi], (a,)))
    # local bipartite host on fresh labels: groups then a-vertices
    local_x = tuple(range(g_count))
    local_y = tuple(range(g_count, g_count + len(a_sorted)))
    local_edges = bipartite_edge_list(local_x, local_y)
    local = _Host(GroundSet(tuple(local_edges))) if local_edges else _Host(GroundSet(()))
    # parts order must agree with the local ground order
    order_check = [
        (min(gi, g_count + ai), max(gi, g_count + ai))
        for gi in local_x
        for ai in range(len(a_sorted))
    ]
    if tuple(local_edges) != tuple(order_check):
        raise ConstructionError("projection part order drifted from the index ground")
    q_h = 0
    for pos, pm in enumerate(parts):
        if tau & pm:
            q_h |= 1 << pos
    q = build_bfc_matching(local_x, local_y, tuple(range(z_group_count)), q_h, host=local)
    return projection_matching(parts, tau, q.family, q.pairs)


def _lifted_fc_projection(host: _Host, a_set, c_list, tau: int, build_fc):
    """Matching on graphs over (A x C) union (C x C) whose contraction of the
    whole set A to one point is factor critical; lifted from an FC family on
    a fresh host with |C|+1 vertices (contracted point labelled 0)."""
    c_sorted = sorted(c_list)
    local_n = 1 + len(c_sorted)
    local_edges = complete_edge_list(local_n)
    parts = []
    for (i, j) in local_edges:
        if i == 0:
            parts.append(host.bits_between(a_set, (c_sorted[j - 1],)))
        else:
            parts.append(1 << host.index[normalize_edge(c_sorted[i - 1], c_sorted[j - 1])])
    local = _Host(GroundSet(tuple(local_edges)))
    q_h = 0
    for pos, pm in enumerate(parts):
        if tau & pm:
            q_h |= 1 << pos
    q = build_fc(tuple(range(local_n)), q_h, host=local)
    return projection_matching(parts, tau, q.family, q.pairs)


# ---------------------------------------------------------------------------
# PM builder
# ---------------------------------------------------------------------------


def build_pm_matching(vertices, h=(), *, host: _Host | None = None) -> ConstructionResult:
    """Acyclic matching on perfectly matchable supergraphs of ``h``.

    Members are the subgraphs of the complete graph on ``vertices``
    containing ``h`` with a perfect matching on all of ``vertices``.
    Critical faces satisfy |sigma| <= (3/2)|V| + |H|, strictly when the
    vertex set is non-empty.  An odd vertex set gives the empty family (and
    an empty matching on it); the empty vertex set gives {empty graph}.
    """
    vs = tuple(sorted(vertices))
    if host is None:
        host = _Host(_complete_ground(vs)) if vs else _Host(GroundSet(()))
    h_mask = h if isinstance(h, int) else host.mask_of(h.edges if isinstance(h, Graph) else h)
    bound = 3 * len(vs) // 2 + h_mask.bit_count()
    strict = len(vs) > 0
    kv = host.bits_within(vs)
    if h_mask & ~kv:
        raise ValueError("subgraph leaves the host vertex set")
    family = _pm_masks(host, vs, h_mask)
    if not vs:
        return _result("PM", host, family, [], bound, strict)
    if not family:
        return _result("PM", host, family, [], bound, strict)
    if h_mask == kv:
        return _result("PM", host, family, [], bound, strict)

    e0_bit, v0, w0 = _pick_e0_complete(host, vs, h_mask)
    pairs0, f0, f1 = boolean_matching(family, e0_bit)
    e0m = 1 << e0_bit
    if any(not m & e0m for m in f1):
        raise ConstructionError("unmatched member without the toggle edge")
    f_members = sorted(m ^ e0m for m in f1)

    per_key: dict = {}
    groups: dict = {}
    for m in f_members:
        key = _ge_key(host, m, vs)
        groups.setdefault(key, []).append(m)
    for key, members in groups.items():
        per_key[key] = _pm_subfamily_pairs(host, vs, h_mask, v0, w0, key, members)
    f_pairs = cluster_union(f_members, lambda m: _ge_key(host, m, vs), _ge_leq, per_key)
    lifted_pairs = _lift_pairs_checked(host, f_members, f_pairs, e0m, f1)
    return _result("PM", host, family, list(pairs0) + lifted_pairs, bound, strict)


def _components_ordered_for(comps, v0, w0):
    """Components with the ones containing v0 / w0 moved to the last two slots."""
    comp_v = next(c for c in comps if v0 in c)
    comp_w = next(c for c in comps if w0 in c)
    if comp_v == comp_w:
        raise ConstructionError("toggle endpoints landed in one missable component")
    others = [c for c in comps if c is not comp_v and c is not comp_w]
    return others + [comp_v, comp_w]


def _pm_subfamily_pairs(host, vs, h_mask, v0, w0, key, members):
    d_set, da_set, comps = key
    a_set = da_set - d_set
    c_set = frozenset(vs) - da_set

    free = (host.bits_within(a_set) | host.bits_between(a_set, c_set)) & ~h_mask
    if free:
        e = min(mask_bits(free))
        pairs, _, rest = boolean_matching(members, e)
        if rest:
            raise ConstructionError("decomposition-preserving toggle was not complete")
        return pairs

    ordered = _components_ordered_for(comps, v0, w0)
    parts = []
    for comp in ordered:
        sub = build_fc_matching(sorted(comp), h_mask & host.bits_within(comp), host=host)
        parts.append(JoinPart.make(host.bits_within(comp), sub.family, sub.pairs))
    d_groups = [frozenset(c) for c in ordered[:-2]] + [frozenset(ordered[-2] | ordered[-1])]
    proj = _lifted_bfc_projection(host, d_groups, sorted(a_set), 0,
                                  h_mask & host.bits_between(d_set, a_set))
    parts.append(JoinPart.make(host.bits_between(d_set, a_set), proj.family, proj.pairs))
    subpm = build_pm_matching(sorted(c_set), h_mask & host.bits_within(c_set), host=host)
    parts.append(JoinPart.make(host.bits_within(c_set), subpm.family, subpm.pairs))
    parts.append(JoinPart.single(host.bits_within(a_set)))
    parts.append(JoinPart.single(host.bits_between(a_set, c_set)))
    res = join_matching(parts)
    if set(res.family) != set(members):
        raise ConstructionError("perfect-matching join does not reproduce the subfamily")
    return res.pairs


# ---------------------------------------------------------------------------
# FC builder
# ---------------------------------------------------------------------------


def build_fc_matching(vertices, h=(), *, host: _Host | None = None) -> ConstructionResult:
    """Acyclic matching on factor critical supergraphs of ``h``.

    Members are subgraphs of the complete graph on ``vertices`` containing
    ``h`` that are factor critical on all of ``vertices`` (|V| must be odd).
    Critical faces satisfy |sigma| <= (3/2)(|V|-1) + |H|, strictly when ``h``
    has an edge.
    """
    vs = tuple(sorted(vertices))
    if len(vs) % 2 == 0:
        raise ValueError("factor critical families need an odd vertex count")
    if host is None:
        host = _Host(_complete_ground(vs))
    h_mask = h if isinstance(h, int) else host.mask_of(h.edges if isinstance(h, Graph) else h)
    bound = 3 * (len(vs) - 1) // 2 + h_mask.bit_count()
    strict = h_mask.bit_count() >= 1
    kv = host.bits_within(vs)
    if h_mask & ~kv:
        raise ValueError("subgraph leaves the host vertex set")
    family = _fc_masks(host, vs, h_mask)
    if len(vs) == 1 or h_mask == kv:
        return _result("FC", host, family, [], bound, strict)

    e0_bit, v0, w0 = _pick_e0_complete(host, vs, h_mask)
    pairs0, f0, f1 = boolean_matching(family, e0_bit)
    e0m = 1 << e0_bit
    if any(not m & e0m for m in f1):
        raise ConstructionError("unmatched member without the toggle edge")
    f_members = sorted(m ^ e0m for m in f1)

    per_key: dict = {}
    groups: dict = {}
    for m in f_members:
        key = _ge_key(host, m, vs)
        groups.setdefault(key, []).append(m)
    for key, members in groups.items():
        per_key[key] = _fc_subfamily_pairs(host, vs, h_mask, v0, w0, key, members)
    f_pairs = cluster_union(f_members, lambda m: _ge_key(host, m, vs), _ge_leq, per_key)
    lifted_pairs = _lift_pairs_checked(host, f_members, f_pairs, e0m, f1)
    return _result("FC", host, family, list(pairs0) + lifted_pairs, bound, strict)


def _fc_subfamily_pairs(host, vs, h_mask, v0, w0, key, members):
    d_set, da_set, comps = key
    a_set = da_set - d_set
    c_set = frozenset(vs) - da_set
    if not a_set:
        raise ConstructionError("near-critical members must have attachment vertices")

    free = host.bits_within(a_set) & ~h_mask
    if free:
        e = min(mask_bits(free))
        pairs, _, rest = boolean_matching(members, e)
        if rest:
            raise ConstructionError("decomposition-preserving toggle was not complete")
        return pairs

    ordered = _components_ordered_for(comps, v0, w0)
    parts = []
    for comp in ordered:
        sub = build_fc_matching(sorted(comp), h_mask & host.bits_within(comp), host=host)
        parts.append(JoinPart.make(host.bits_within(comp), sub.family, sub.pairs))
    d_groups = [frozenset(c) for c in ordered]
    proj = _lifted_bfc_projection(host, d_groups, sorted(a_set), len(ordered) - 2,
                                  h_mask & host.bits_between(d_set, a_set))
    parts.append(JoinPart.make(host.bits_between(d_set, a_set), proj.family, proj.pairs))
    tau_ac = h_mask & (host.bits_between(a_set, c_set) | host.bits_within(c_set))
    proj2 = _lifted_fc_projection(host, sorted(a_set), sorted(c_set), tau_ac, build_fc_matching)
    parts.append(
        JoinPart.make(host.bits_between(a_set, c_set) | host.bits_within(c_set),
                      proj2.family, proj2.pairs)
    )
    parts.append(JoinPart.single(host.bits_within(a_set)))
    res = join_matching(parts)
    if set(res.family) != set(members):
        raise ConstructionError("factor-critical join does not reproduce the subfamily")
    return res.pairs


# ---------------------------------------------------------------------------
# Link-family builders
# ---------------------------------------------------------------------------


def build_link_matching_complete(vertices, h, k: int, *, host: _Host | None = None) -> ConstructionResult:
    """Acyclic matching on {G within the complete host : nu(G) < k, h in G}.

    Requires 1 <= nu(h) < k.  Critical faces satisfy |sigma| <= 3k-4+|H|.
    """
    vs = tuple(sorted(vertices))
    if host is None:
        host = _Host(_complete_ground(vs))
    h_mask = h if isinstance(h, int) else host.mask_of(h.edges if isinstance(h, Graph) else h)
    kv = host.bits_within(vs)
    if h_mask & ~kv:
        raise ValueError("subgraph leaves the host vertex set")
    nu_h = host.nu_of(h_mask)
    if not (1 <= nu_h < k):
        raise ValueError(f"need 1 <= nu(h) < k, got nu(h)={nu_h}, k={k}")
    bound = 3 * k - 4 + h_mask.bit_count()
    family = _nmlink_masks(host, kv, h_mask, k)

    if len(vs) < 2 * k:
        return _result("NMLINK_COMPLETE", host, family,
                       _interval_pairs(family, kv, h_mask), bound, False)

    deg = {u: (h_mask & host.bits_at.get(u, 0)).bit_count() for u in vs}
    v = min(vs, key=lambda u: (deg[u], u))
    n_h_v = host.neighbors_in(h_mask, v)
    w_set = tuple(u for u in vs if u != v and u not in n_h_v)
    s_bits = host.bits_between(w_set, (v,))
    if not s_bits:
        raise ConstructionError("minimum-degree vertex has a full star")

    pairs0, f1 = _addable_star_pairs(host, family, s_bits, k)
    vstar = h_mask & host.bits_at.get(v, 0)
    if any(m & host.bits_at.get(v, 0) != vstar for m in f1):
        raise ConstructionError("starless members carry stray star edges")
    f_members = sorted(m & ~vstar for m in f1)

    v_rest = tuple(u for u in vs if u != v)
    for m in f_members:
        if host.nu_of(m) != k - 1:
            raise ConstructionError("starless member has the wrong matching number")
    per_key: dict = {}
    groups: dict = {}
    for m in f_members:
        key = _ge_key(host, m, v_rest)
        groups.setdefault(key, []).append(m)
    h_rest = h_mask & ~vstar
    for key, members in groups.items():
        if key[0] != frozenset(w_set):
            raise ConstructionError("missable set of a starless member is not the free star")
        per_key[key] = _link_subfamily_pairs(host, h_rest, v_rest, key, members)
    f_pairs = cluster_union(f_members, lambda m: _ge_key(host, m, v_rest), _ge_leq, per_key)
    lifted_pairs = _lift_pairs_checked(host, f_members, f_pairs, vstar, f1)
    return _result("NMLINK_COMPLETE", host, family, list(pairs0) + lifted_pairs, bound, False)


def _interval_pairs(family, within: int, h_mask: int):
    """Matching on an inclusion interval: complete unless it is one face."""
    free = within & ~h_mask
    if not free:
        return []
    e = min(mask_bits(free))
    pairs, _, rest = boolean_matching(family, e)
    if rest:
        raise ConstructionError("interval toggle was not complete")
    return pairs


def _addable_star_pairs(host, family, s_bits: int, k: int):
    """Complete matching on members with an addable free star edge.

    Members cluster by their star-free part; each cluster is a toggle cube
    over its addable star edges.  Returns (pairs, members with no addable
    star edge).
    """
    fam_set = set(family)
    f0, f1 = [], []
    addable_of_base: dict[int, int] = {}
    for m in family:
        base = m & ~s_bits
        addable = addable_of_base.get(base)
        if addable is None:
            addable = 0
            for b in mask_bits(s_bits):
                if host.nu_of(base | (1 << b)) < k:
                    addable |= 1 << b
            addable_of_base[base] = addable
        # an addable edge already present also witnesses membership in f0
        if addable & m or any(host.nu_of(m | (1 << b)) < k for b in mask_bits(s_bits & ~m)):
            f0.append(m)
        else:
            f1.append(m)

    def fiber_key(m):
        return m & ~s_bits

    groups: dict[int, list[int]] = {}
    for m in f0:
        groups.setdefault(fiber_key(m), []).append(m)
    per_key = {}
    for base, fiber in groups.items():
        sg = addable_of_base[base]
        if not sg:
            raise ConstructionError("cluster fiber with no addable star edge")
        e = min(mask_bits(sg))
        p, _, rest = boolean_matching(fiber, e)
        if rest:
            raise ConstructionError("star fiber toggle was not complete")
        per_key[base] = p
    pairs = cluster_union(sorted(f0), fiber_key, lambda a, b: a & ~b == 0, per_key)
    return pairs, sorted(f1)


def _link_subfamily_pairs(host, h_mask, universe, key, members):
    d_set, da_set, comps = key
    a_set = da_set - d_set
    c_set = frozenset(universe) - da_set

    free = (host.bits_within(a_set) | host.bits_between(a_set, c_set)) & ~h_mask
    if free:
        e = min(mask_bits(free))
        pairs, _, rest = boolean_matching(members, e)
        if rest:
            raise ConstructionError("decomposition-preserving toggle was not complete")
        return pairs

    parts = []
    for comp in comps:
        sub = build_fc_matching(sorted(comp), h_mask & host.bits_within(comp), host=host)
        parts.append(JoinPart.make(host.bits_within(comp), sub.family, sub.pairs))
    d_groups = [frozenset(c) for c in comps]
    proj = _lifted_bfc_projection(host, d_groups, sorted(a_set), 0,
                                  h_mask & host.bits_between(d_set, a_set))
    parts.append(JoinPart.make(host.bits_between(d_set, a_set), proj.family, proj.pairs))
    subpm = build_pm_matching(sorted(c_set), h_mask & host.bits_within(c_set), host=host)
    parts.append(JoinPart.make(host.bits_within(c_set), subpm.family, subpm.pairs))
    parts.append(JoinPart.single(host.bits_within(a_set)))
    parts.append(JoinPart.single(host.bits_between(a_set, c_set)))
    res = join_matching(parts)
    if set(res.family) != set(members):
        raise ConstructionError("link join does not reproduce the subfamily")
    return res.pairs


def build_link_matching_bipartite(x_side, y_side, h, k: int, *, host: _Host | None = None) -> ConstructionResult:
    """Acyclic matching on {G within the bipartite host : nu(G) < k, h in G}.

    Requires 1 <= nu(h) < k.  Critical faces satisfy |sigma| <= 2k-3+|H|.
    """
    xs, ys = tuple(sorted(x_side)), tuple(sorted(y_side))
    if host is None:
        host = _Host(GroundSet(tuple(bipartite_edge_list(xs, ys))))
    h_mask = h if isinstance(h, int) else host.mask_of(h.edges if isinstance(h, Graph) else h)
    kxy = host.bits_between(xs, ys)
    if h_mask & ~kxy:
        raise ValueError("subgraph leaves the bipartite host")
    nu_h = host.nu_of(h_mask)
    if not (1 <= nu_h < k):
        raise ValueError(f"need 1 <= nu(h) < k, got nu(h)={nu_h}, k={k}")
    bound = 2 * k - 3 + h_mask.bit_count()
    family = _nmlink_masks(host, kxy, h_mask, k)

    if min(len(xs), len(ys)) < k:
        return _result("NMLINK_BIPARTITE", host, family,
                       _interval_pairs(family, kxy, h_mask), bound, False)

    deg = {u: (h_mask & host.bits_at.get(u, 0)).bit_count() for u in xs + ys}
    v0 = min(xs + ys, key=lambda u: (deg[u], u))
    own, other = (ys, xs) if v0 in ys else (xs, ys)
    n_h_v = host.neighbors_in(h_mask, v0)
    w_set = tuple(u for u in other if u not in n_h_v)
    s_bits = host.bits_between(w_set, (v0,))
    if not s_bits:
        raise ConstructionError("minimum-degree vertex has a full star")

    pairs0, f1 = _addable_star_pairs(host, family, s_bits, k)
    vstar = h_mask & host.bits_at.get(v0, 0)
    if any(m & host.bits_at.get(v0, 0) != vstar for m in f1):
        raise ConstructionError("starless members carry stray star edges")
    f_members = sorted(m & ~vstar for m in f1)

    rest_vs = tuple(u for u in xs + ys if u != v0)
    per_key: dict = {}
    groups: dict = {}
    for m in f_members:
        key = _ge_key(host, m, rest_vs)
        groups.setdefault(key, []).append(m)
    h_rest = h_mask & ~vstar
    own_rest = tuple(u for u in own if u != v0)
    for key, members in groups.items():
        per_key[key] = _link_bipartite_subfamily_pairs(
            host, h_rest, other, own_rest, w_set, n_h_v, key, members
        )
    f_pairs = cluster_union(f_members, lambda m: _ge_key(host, m, rest_vs), _ge_leq, per_key)
    lifted_pairs = _lift_pairs_checked(host, f_members, f_pairs, vstar, f1)
    return _result("NMLINK_BIPARTITE", host, family, list(pairs0) + lifted_pairs, bound, False)


def _link_bipartite_subfamily_pairs(host, h_mask, other, own_rest, w_set, n_h_v, key, members):
    d_set, da_set, _comps = key
    a_set = da_set - d_set
    universe = frozenset(other) | frozenset(own_rest)
    c_set = universe - da_set
    d_x = d_set & frozenset(other)
    if d_x != frozenset(w_set):
        raise ConstructionError("missable set on the star side is not the free star")
    a_x = a_set & frozenset(other)
    a_y = a_set & frozenset(own_rest)
    c_x = c_set & frozenset(other)
    c_y = c_set & frozenset(own_rest)
    d_y = d_set & frozenset(own_rest)

    if not n_h_v:
        inner = build_bfc_matching(other, sorted(a_y), (),
                                   h_mask & host.bits_between(other, a_y), host=host)
        if set(inner.family) != set(members):
            raise ConstructionError("attachment family does not reproduce the subfamily")
        return inner.pairs

    if frozenset(n_h_v) != a_x | c_x:
        raise ConstructionError("forced neighbourhood is not the matched-or-attachment part")
    forced_cy = host.bits_between(a_x | c_x, c_y) & ~h_mask
    if forced_cy:
        raise ConstructionError("minimum-degree choice violated by a matched-side vertex")
    free = host.bits_between(a_x | c_x, a_y) & ~h_mask
    if free:
        e = min(mask_bits(free))
        pairs, _, rest = boolean_matching(members, e)
        if rest:
            raise ConstructionError("decomposition-preserving toggle was not complete")
        return pairs

    parts = [
        _bfc_join_part(host, d_x, a_y, h_mask),
        _bfc_join_part(host, d_y, a_x, h_mask),
        JoinPart.single(host.bits_between(a_x | c_x, a_y | c_y)),
    ]
    res = join_matching(parts)
    if set(res.family) != set(members):
        raise ConstructionError("bipartite link join does not reproduce the subfamily")
    return res.pairs


def _bfc_join_part(host, side_x, side_y, h_mask) -> JoinPart:
    sub = build_bfc_matching(sorted(side_x), sorted(side_y), (),
                             h_mask & host.bits_between(side_x, side_y), host=host)
    return JoinPart.make(host.bits_between(side_x, side_y), sub.family, sub.pairs)
