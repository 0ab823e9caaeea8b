"""Rainbow matchings: search, theorem verification, and matroid variants.

A rainbow matching for edge sets E_1..E_m is a matching in their union using
each chosen edge from a distinct set.  The guarantees verified here: with
pairwise-union matching number at least k, 2k-1 sets suffice on a bipartite
host and 3k-2 sets on a general host; 2k-2 bipartite sets do not.  The
labelled complex and the partition matroid connect these statements to the
vanishing results, and an exhaustive desk-scale check confirms the
topological Helly-type conclusion on concrete instances.
"""

from __future__ import annotations

import itertools
import json
import random as _random
from dataclasses import dataclass

from .complexes import GroundSet, SimplicialComplex
from .errors import CapExceededError, FormatError, HypothesisError
from .graphs import (
    DEFAULT_SUBSET_CAP,
    Graph,
    Matching,
    matching_number,
    normalize_edge,
    parse_graph,
    subset_matching_numbers,
)


@dataclass(frozen=True)
class RainbowInstance:
    """An ordered collection of non-empty edge sets over a host graph."""

    host: Graph
    edge_sets: tuple[frozenset[tuple[int, int]], ...]
    k: int

    def __post_init__(self):
        for i, es in enumerate(self.edge_sets):
            if not es:
                raise ValueError(f"edge set {i} is empty")
            for e in es:
                if normalize_edge(*e) not in self.host.edges:
                    raise ValueError(f"edge {e} of set {i} is not a host edge")
        if self.k < 1:
            raise ValueError("k must be positive")

    @classmethod
    def make(cls, host: Graph, edge_sets, k: int) -> "RainbowInstance":
        sets = tuple(frozenset(normalize_edge(*e) for e in es) for es in edge_sets)
        return cls(host, sets, k)

    @property
    def m(self) -> int:
        return len(self.edge_sets)

    @property
    def bipartite_flag(self) -> bool:
        return self.host.bipartition is not None

    def union_edges(self) -> frozenset[tuple[int, int]]:
        out: frozenset = frozenset()
        for es in self.edge_sets:
            out |= es
        return out


@dataclass(frozen=True)
class RainbowCertificate:
    """Pairs (edge, source index): disjoint edges from distinct sets."""

    assignment: tuple[tuple[tuple[int, int], int], ...]

    def __post_init__(self):
        edges = [e for (e, _) in self.assignment]
        Matching(frozenset(edges))
        if len(set(edges)) != len(edges):
            raise ValueError("certificate repeats an edge")
        sources = [i for (_, i) in self.assignment]
        if len(set(sources)) != len(sources):
            raise ValueError("certificate repeats a source set")

    def __len__(self):
        return len(self.assignment)


def certificate_is_valid(inst: RainbowInstance, cert: RainbowCertificate) -> bool:
    if len(cert) != inst.k:
        return False
    for (e, i) in cert.assignment:
        if not (0 <= i < inst.m) or normalize_edge(*e) not in inst.edge_sets[i]:
            return False
    return True


def find_rainbow_matching(inst: RainbowInstance) -> RainbowCertificate | None:
    """Exact search for a size-k rainbow matching.

    Backtracking over source sets in increasing size order; each set either
    contributes one edge disjoint from the current partial matching or is
    skipped.  The absence result is exact.
    """
    order = sorted(range(inst.m), key=lambda i: (len(inst.edge_sets[i]), i))
    sets = [sorted(inst.edge_sets[i]) for i in order]
    k = inst.k

    def rec(pos: int, used: frozenset[int], acc: tuple):
        if len(acc) == k:
            return acc
        if len(acc) + (len(sets) - pos) < k:
            return None
        if pos == len(sets):
            return None
        got = rec(pos + 1, used, acc)
        if got is not None:
            return got
        for (u, v) in sets[pos]:
            if u not in used and v not in used:
                got = rec(pos + 1, used | {u, v}, acc + (((u, v), order[pos]),))
                if got is not None:
                    return got
        return None

    res = rec(0, frozenset(), ())
    if res is None:
        return None
    cert = RainbowCertificate(tuple(res))
    assert certificate_is_valid(inst, cert)
    return cert


def rainbow_brute_force(inst: RainbowInstance) -> bool:
    """Independent oracle: try every choice of k sources and k edges."""
    for sources in itertools.combinations(range(inst.m), inst.k):
        pools = [sorted(inst.edge_sets[i]) for i in sources]
        for choice in itertools.product(*pools):
            vs = [v for e in choice for v in e]
            if len(set(vs)) == len(vs) and len(set(choice)) == len(choice):
                return True
    return False


def verify_hypotheses(inst: RainbowInstance) -> bool:
    """All sets non-empty and every pairwise union has matching number >= k."""
    if any(not es for es in inst.edge_sets):
        return False
    n = inst.host.vertex_count
    for i in range(inst.m):
        for j in range(i + 1, inst.m):
            g = Graph.from_edges(n, inst.edge_sets[i] | inst.edge_sets[j])
            if matching_number(g) < inst.k:
                return False
    return True


@dataclass(frozen=True)
class Verdict:
    status: str  # SATISFIED | VIOLATION
    k: int
    m: int
    certificate: RainbowCertificate | None
    details: dict

    def to_json(self) -> str:
        payload = {
            "status": self.status,
            "k": self.k,
            "m": self.m,
            "certificate": (
                [[list(e), i] for (e, i) in self.certificate.assignment]
                if self.certificate
                else None
            ),
        }
        payload.update(self.details)
        return json.dumps(payload, sort_keys=True)


def required_set_count(k: int, bipartite: bool) -> int:
    return 2 * k - 1 if bipartite else 3 * k - 2


def verify_theorem(inst: RainbowInstance) -> Verdict:
    """Check the rainbow guarantee on one instance.

    Preconditions (raising HypothesisError when unmet): enough sets for the
    host kind, and pairwise-union matching numbers at least k.  A missing
    rainbow matching under valid hypotheses is reported as a VIOLATION
    verdict; the guarantee says this never happens.
    """
    need = required_set_count(inst.k, inst.bipartite_flag)
    if inst.m < need:
        raise HypothesisError(f"need at least {need} edge sets, got {inst.m}")
    if not verify_hypotheses(inst):
        raise HypothesisError("pairwise-union matching numbers fall below k")
    cert = find_rainbow_matching(inst)
    if cert is not None:
        return Verdict("SATISFIED", inst.k, inst.m, cert, {"bipartite": inst.bipartite_flag})
    return Verdict(
        "VIOLATION",
        inst.k,
        inst.m,
        None,
        {
            "bipartite": inst.bipartite_flag,
            "hypotheses_verified": True,
            "edge_sets": [sorted(map(list, es)) for es in inst.edge_sets],
        },
    )


# ---------------------------------------------------------------------------
# Tightness search
# ---------------------------------------------------------------------------


def search_tightness(
    k: int,
    bipartite: bool = True,
    m: int | None = None,
    seed: int = 0,
    attempts: int = 20000,
) -> RainbowInstance | None:
    """Search for hypothesis-satisfying instances with no rainbow matching.

    With one set fewer than the guarantee needs, witnesses exist on the
    bipartite side; the searcher scans the even cycle with 2k vertices,
    exhaustively over all subset tuples for k=2 and over the alternating
    perfect-matching families for larger k, then falls back to seeded random
    search.  Returns a verified witness or None.
    """
    if m is None:
        m = required_set_count(k, bipartite) - 1
    if m <= 0:
        return None
    if bipartite:
        host, pm1, pm2 = _even_cycle_host(k)
        edges = sorted(host.edges)
        if k == 2:
            candidates = [frozenset(c) for r in range(1, len(edges) + 1)
                          for c in itertools.combinations(edges, r)]
        else:
            candidates = []
            for base in (pm1, pm2):
                for r in range(1, len(base) + 1):
                    candidates.extend(frozenset(c) for c in itertools.combinations(sorted(base), r))
        for combo in itertools.product(candidates, repeat=m):
            inst = RainbowInstance(host, tuple(combo), k)
            if verify_hypotheses(inst) and find_rainbow_matching(inst) is None:
                return inst
        return None
    # general hosts: seeded random search (no witness is promised here)
    rng = _random.Random(seed)
    n = 2 * k
    all_edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for _ in range(attempts):
        host_edges = [e for e in all_edges if rng.random() < 0.7]
        if not host_edges:
            continue
        host = Graph.from_edges(n, host_edges)
        sets = []
        for _ in range(m):
            size = rng.randint(1, len(host_edges))
            sets.append(frozenset(rng.sample(host_edges, size)))
        inst = RainbowInstance(host, tuple(sets), k)
        if verify_hypotheses(inst) and find_rainbow_matching(inst) is None:
            return inst
    return None


def _even_cycle_host(k: int) -> tuple[Graph, frozenset, frozenset]:
    """The cycle with 2k vertices, classes 0..k-1 and k..2k-1, plus its two
    alternating perfect matchings."""
    n = 2 * k
    pm1 = frozenset(normalize_edge(i, k + i) for i in range(k))
    pm2 = frozenset(normalize_edge(k + i, (i + 1) % k) for i in range(k))
    host = Graph.from_edges(n, pm1 | pm2, (range(k), range(k, n)))
    return host, pm1, pm2


def canonical_instance(inst: RainbowInstance):
    """Isomorphism key: vertex relabelings of the host combined with
    reordering of the edge sets.  Equal keys mean isomorphic instances."""
    import itertools as _it

    n = inst.host.vertex_count
    best = None
    for perm in _it.permutations(range(n)):
        host_edges = tuple(sorted(normalize_edge(perm[u], perm[v]) for (u, v) in inst.host.edges))
        sets = tuple(sorted(
            tuple(sorted(normalize_edge(perm[u], perm[v]) for (u, v) in es))
            for es in inst.edge_sets
        ))
        cand = (host_edges, sets)
        if best is None or cand < best:
            best = cand
    return (n, inst.k, best)


# ---------------------------------------------------------------------------
# Labelled complex and the Helly-type conclusion
# ---------------------------------------------------------------------------


def labelled_ground(inst: RainbowInstance) -> GroundSet:
    elements = []
    for i, es in enumerate(inst.edge_sets):
        for e in sorted(es):
            elements.append((e, i))
    return GroundSet(tuple(elements))


def labelled_nm_complex(inst: RainbowInstance, cap: int = DEFAULT_SUBSET_CAP) -> SimplicialComplex:
    """Complex of labelled edge subsets whose label-erased image has nu < k.

    Labelled copies of one edge under different labels are distinct ground
    elements; erasure de-duplicates before the matching number is taken.
    """
    ground = labelled_ground(inst)
    if (1 << len(ground)) > cap:
        raise CapExceededError(f"2^{len(ground)} labelled subsets exceeds the cap {cap}")
    union = sorted(inst.union_edges())
    pos = {e: i for i, e in enumerate(union)}
    nu = subset_matching_numbers(union, cap)
    proj = [1 << pos[e] for (e, _) in ground.elements]
    faces = []
    for m in range(1 << len(ground)):
        p = 0
        mm = m
        while mm:
            b = (mm & -mm).bit_length() - 1
            mm &= mm - 1
            p |= proj[b]
        if int(nu[p]) < inst.k:
            faces.append(m)
    return SimplicialComplex(ground, frozenset(faces))


def partition_rank(inst: RainbowInstance, labelled_subset) -> int:
    """Rank in the partition matroid on labels: how many labels are touched."""
    return len({i for (_, i) in labelled_subset})


@dataclass(frozen=True)
class HellyReport:
    satisfied: bool
    d: int
    face: tuple | None
    residual_rank: int | None

    def to_json(self) -> str:
        return json.dumps(
            {
                "satisfied": self.satisfied,
                "d": self.d,
                "face": [[list(e), i] for (e, i) in self.face] if self.face else None,
                "residual_rank": self.residual_rank,
            },
            sort_keys=True,
        )


def verify_topological_helly_conclusion(inst: RainbowInstance, d: int) -> HellyReport:
    """Confirm, exhaustively, the Helly-type conclusion on one instance.

    Preconditions: the label-partition matroid has full rank at least d+2 and
    is a subcomplex of the labelled complex (equivalently, no rainbow
    matching of size k exists).  The conclusion asserts a face whose removal
    leaves partition rank at most d; the scan here confirms it empirically.
    """
    if inst.m < d + 2:
        raise HypothesisError(f"partition rank {inst.m} is below d+2={d + 2}")
    if find_rainbow_matching(inst) is not None:
        raise HypothesisError("a rainbow matching exists; the matroid is not a subcomplex")
    cx = labelled_nm_complex(inst)
    elements = cx.ground.elements
    best = None
    for m in sorted(cx.faces):
        labels_left = set()
        for i, el in enumerate(elements):
            if not m >> i & 1:
                labels_left.add(el[1])
        if len(labels_left) <= d:
            best = (cx.ground.decode(m), len(labels_left))
            break
    if best is None:
        return HellyReport(False, d, None, None)
    return HellyReport(True, d, best[0], best[1])


# ---------------------------------------------------------------------------
# Matroid rank oracles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RankOracle:
    """A matroid rank function over an explicit ground tuple."""

    ground: tuple
    rank_fn: object  # callable: frozenset -> int

    def rank(self, subset) -> int:
        return self.rank_fn(frozenset(subset))

    def full_rank(self) -> int:
        return self.rank(self.ground)


def validate_rank_oracle(oracle: RankOracle, cap: int = 12) -> None:
    """Exhaustively check the matroid rank axioms on a small ground.

    Normalisation, unit increments, monotonicity, and the local exchange
    form of submodularity r(S+e) + r(S+f) >= r(S+e+f) + r(S).
    """
    n = len(oracle.ground)
    if n > cap:
        raise CapExceededError(f"oracle ground {n} exceeds the validation cap {cap}")
    elems = list(oracle.ground)
    table = {}
    for mask in range(1 << n):
        sub = frozenset(elems[i] for i in range(n) if mask >> i & 1)
        table[mask] = oracle.rank(sub)
    if table[0] != 0:
        raise ValueError("rank of the empty set must be 0")
    for mask in range(1 << n):
        for i in range(n):
            if mask >> i & 1:
                continue
            up = table[mask | (1 << i)]
            if up < table[mask] or up > table[mask] + 1:
                raise ValueError("rank must be monotone with unit increments")
            for j in range(i + 1, n):
                if mask >> j & 1:
                    continue
                if (
                    table[mask | (1 << i)] + table[mask | (1 << j)]
                    < table[mask | (1 << i) | (1 << j)] + table[mask]
                ):
                    raise ValueError("rank must be submodular")


def partition_matroid_oracle(inst: RainbowInstance) -> RankOracle:
    ground = labelled_ground(inst).elements
    return RankOracle(ground, lambda s: len({i for (_, i) in s}))


def free_matroid_oracle(ground) -> RankOracle:
    return RankOracle(tuple(ground), lambda s: len(s))


def graphic_matroid_oracle(n: int, ground_edges) -> RankOracle:
    """Rank of an edge subset in the cycle matroid: vertices minus components."""
    ground = tuple(sorted(normalize_edge(*e) for e in ground_edges))

    def rank(sub):
        parent = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        r = 0
        for (u, v) in sorted(sub):
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                r += 1
        return r

    return RankOracle(ground, rank)


def matroid_rainbow_check(ground_edges, oracle: RankOracle, k: int) -> Verdict:
    """Independent-matching guarantee under a matroid rank oracle.

    Hypotheses: full rank at least 3k-2 (2k-1 when the union of the ground
    edges is bipartite) and matching number at least k on every rank-2 flat.
    Searches exhaustively for a size-k matching independent in the matroid.
    """
    edges = sorted(normalize_edge(*e) for e in ground_edges)
    if tuple(edges) != tuple(sorted(oracle.ground)):
        raise ValueError("oracle ground must be the given edge set")
    validate_rank_oracle(oracle)
    n = max((v for e in edges for v in e), default=-1) + 1
    union = Graph.from_edges(n, edges)
    bip = union.is_bipartite_graph()
    need = required_set_count(k, bip)
    if oracle.full_rank() < need:
        raise HypothesisError(f"full rank {oracle.full_rank()} below {need}")

    # rank-2 flats by closing pairs
    flats = set()
    for pair in itertools.combinations(edges, 2):
        if oracle.rank(pair) != 2:
            continue
        closure = frozenset(
            e for e in edges if oracle.rank(frozenset(pair) | {e}) == 2
        )
        flats.add(closure)
    for flat in sorted(flats, key=sorted):
        g = Graph.from_edges(n, flat)
        if matching_number(g) < k:
            raise HypothesisError("a rank-2 flat has matching number below k")

    for comb in itertools.combinations(edges, k):
        vs = [v for e in comb for v in e]
        if len(set(vs)) == 2 * k and oracle.rank(comb) == k:
            return Verdict("SATISFIED", k, len(edges), None,
                           {"independent_matching": [list(e) for e in comb]})
    return Verdict("VIOLATION", k, len(edges), None, {"hypotheses_verified": True})


# ---------------------------------------------------------------------------
# Instance file format
# ---------------------------------------------------------------------------


def parse_instance(text: str, k: int | None = None) -> RainbowInstance:
    """Host edge-list header, then one "SET i: u1 v1, u2 v2, ..." line per set.

    An optional "k = <int>" line may follow the host block; an explicit ``k``
    argument overrides it.
    """
    host_lines = []
    set_lines = []
    k_line = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        low = line.lower()
        if low.startswith("set"):
            set_lines.append(line)
        elif low.startswith("k") and "=" in line:
            try:
                k_line = int(line.split("=", 1)[1])
            except ValueError as exc:
                raise FormatError(f"bad k line {line!r}") from exc
        else:
            host_lines.append(line)
    host = parse_graph("\n".join(host_lines))
    sets = []
    for line in set_lines:
        _, _, rest = line.partition(":")
        if not rest.strip():
            raise FormatError(f"empty set line {line!r}")
        edges = []
        for tok in rest.split(","):
            parts = tok.split()
            if len(parts) != 2:
                raise FormatError(f"bad edge token {tok!r}")
            edges.append((int(parts[0]), int(parts[1])))
        sets.append(frozenset(normalize_edge(*e) for e in edges))
    kk = k if k is not None else k_line
    if kk is None:
        raise FormatError("no k given (neither in the file nor as an argument)")
    try:
        return RainbowInstance(host, tuple(sets), kk)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def format_instance(inst: RainbowInstance) -> str:
    from .graphs import format_graph

    out = [format_graph(inst.host).rstrip("\n"), f"k = {inst.k}"]
    for i, es in enumerate(inst.edge_sets):
        body = ", ".join(f"{u} {v}" for (u, v) in sorted(es))
        out.append(f"SET {i}: {body}")
    return "\n".join(out) + "\n"
