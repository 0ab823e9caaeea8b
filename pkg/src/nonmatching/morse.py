"""Discrete Morse machinery: element matchings, validation, and combinators.

A family is a collection of faces, each face an integer bitmask over a fixed
ground.  An element matching pairs faces (sigma, tau) with sigma < tau
differing in exactly one element, each face in at most one pair.  Faces left
unpaired are critical.  The modified Hasse digraph points matched pairs
upward and all other one-element covers downward; when it is acyclic the
number of critical faces per dimension bounds the Betti numbers.

Every combinator here follows a constructive existence proof and re-checks
what it claims (acyclicity, critical-set structure) instead of trusting it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complexes import GroundSet, SimplicialComplex, mask_bits
from .errors import EmptyFamilyError, InternalCheckError, MonotonicityError
from .homology import FieldSpec, GF2, reduced_betti

Pair = tuple[int, int]


@dataclass(frozen=True)
class ElementMatching:
    """Ordered face pairs (sigma, tau) over a family of bitmask faces."""

    ground: GroundSet
    pairs: tuple[Pair, ...]

    def matched_faces(self) -> set[int]:
        out = set()
        for (s, t) in self.pairs:
            out.add(s)
            out.add(t)
        return out

    def critical(self, family) -> list[int]:
        matched = self.matched_faces()
        return sorted(m for m in family if m not in matched)

    def decode_pairs(self) -> list[tuple[tuple, tuple]]:
        return [(self.ground.decode(s), self.ground.decode(t)) for (s, t) in self.pairs]

    def to_text(self) -> str:
        """One pair per line, faces hex-encoded over the ground positions."""
        return "\n".join(f"{s:x} {t:x}" for (s, t) in sorted(self.pairs)) + "\n"

    @classmethod
    def from_text(cls, ground: GroundSet, text: str) -> "ElementMatching":
        pairs = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            a, b = line.split()
            pairs.append((int(a, 16), int(b, 16)))
        return cls(ground, tuple(pairs))


@dataclass(frozen=True)
class MatchingReport:
    """Outcome of validating (and optionally cycle-checking) a matching."""

    valid: bool
    acyclic: bool | None
    critical: tuple[int, ...]
    max_critical_size: int
    witness_cycle: tuple[int, ...] | None = None
    problems: tuple[str, ...] = ()

    def to_dict(self, ground: GroundSet | None = None) -> dict:
        crit = [list(ground.decode(m)) if ground else m for m in self.critical]
        return {
            "valid": self.valid,
            "acyclic": self.acyclic,
            "critical_count": len(self.critical),
            "critical": crit if len(crit) <= 64 else crit[:64],
            "max_critical_size": self.max_critical_size,
            "witness_cycle": list(self.witness_cycle) if self.witness_cycle else None,
            "problems": list(self.problems),
        }


def validate_matching(family, pairs) -> MatchingReport:
    """Definition-level validation: pair shape and single-use, plus criticals.

    Faces outside the family are an error; shape violations make the report
    invalid.  Acyclicity is not evaluated here (flag left unset).
    """
    fam = set(family)
    problems = []
    used: set[int] = set()
    for (s, t) in pairs:
        if s not in fam or t not in fam:
            raise ValueError(f"pair ({s:x},{t:x}) uses faces outside the family")
        if s & ~t:
            problems.append(f"pair ({s:x},{t:x}): sigma not a subset of tau")
        elif (t ^ s).bit_count() != 1:
            problems.append(f"pair ({s:x},{t:x}): size gap is not one element")
        for m in (s, t):
            if m in used:
                problems.append(f"face {m:x} used by more than one pair")
            used.add(m)
    critical = tuple(sorted(m for m in fam if m not in used))
    max_size = max((m.bit_count() for m in critical), default=0)
    return MatchingReport(
        valid=not problems,
        acyclic=None,
        critical=critical,
        max_critical_size=max_size,
        problems=tuple(problems),
    )


def is_acyclic(family, pairs) -> tuple[bool, tuple[int, ...] | None]:
    """Cycle detection on the modified Hasse digraph.

    Any directed cycle alternates matched up-steps with cover down-steps, so
    only faces that occur in pairs can lie on one; the search therefore runs
    on the digraph whose nodes are the pairs themselves.  The witness, when a
    cycle exists, is the face sequence (sigma_0, tau_0, sigma_1, tau_1, ...)
    with every (sigma_i, tau_i) matched and sigma_{i+1} a cover below tau_i.
    """
    fam = set(family)
    plist = list(pairs)
    lower = {}
    for idx, (s, t) in enumerate(plist):
        lower[s] = idx

    def successors(idx):
        (s, t) = plist[idx]
        for b in mask_bits(t):
            cand = t ^ (1 << b)
            if cand == s:
                continue
            j = lower.get(cand)
            if j is not None:
                yield j

    color = {}
    pos_in_chain: dict[int, int] = {}
    for start in range(len(plist)):
        if color.get(start):
            continue
        chain: list[int] = []
        stack = [(start, successors(start))]
        color[start] = 1
        pos_in_chain[start] = 0
        chain.append(start)
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if color.get(nxt) == 1:
                    cycle = chain[pos_in_chain[nxt]:]
                    faces: list[int] = []
                    for p in cycle:
                        faces.extend(plist[p])
                    return False, tuple(faces)
                if not color.get(nxt):
                    color[nxt] = 1
                    pos_in_chain[nxt] = len(chain)
                    chain.append(nxt)
                    stack.append((nxt, successors(nxt)))
                    advanced = True
                    break
            if not advanced:
                color[node] = 2
                chain.pop()
                pos_in_chain.pop(node, None)
                stack.pop()
    return True, None


def witness_has_alternating_shape(witness, pairs) -> bool:
    """Check a cycle witness: matched up-steps alternating with covers down."""
    if witness is None or len(witness) < 6 or len(witness) % 2:
        return False
    pset = set(pairs)
    t = len(witness) // 2
    for i in range(t):
        s, tau = witness[2 * i], witness[2 * i + 1]
        s_next = witness[(2 * i + 2) % len(witness)]
        if (s, tau) not in pset:
            return False
        if s & ~tau or (tau ^ s).bit_count() != 1:
            return False
        if s_next & ~tau or (tau ^ s_next).bit_count() != 1 or s_next == s:
            return False
    return True


def check_matching(family, pairs) -> MatchingReport:
    """Full validation: definition plus independent acyclicity detection."""
    report = validate_matching(family, pairs)
    if not report.valid:
        return report
    ok, witness = is_acyclic(family, pairs)
    if not ok and not witness_has_alternating_shape(witness, pairs):
        raise InternalCheckError("cycle witness lost its alternating shape")
    return MatchingReport(
        valid=True,
        acyclic=ok,
        critical=report.critical,
        max_critical_size=report.max_critical_size,
        witness_cycle=witness,
        problems=(),
    )


# ---------------------------------------------------------------------------
# Combinators
# ---------------------------------------------------------------------------


def boolean_matching(family, e0_bit: int) -> tuple[list[Pair], list[int], list[int]]:
    """Toggle matching on one ground element.

    Splits the family into F0 = faces whose e0-toggle partner is also in the
    family (matched completely by toggling) and F1 = the rest.  The union of
    this matching with any acyclic matching on F1 stays acyclic.
    Returns (pairs on F0, F0, F1).
    """
    fam = set(family)
    bit = 1 << e0_bit
    f0 = [m for m in fam if (m | bit) in fam and (m & ~bit) in fam]
    pairs = [(m, m | bit) for m in f0 if not m & bit]
    f0set = set(f0)
    f1 = sorted(fam - f0set)
    return pairs, sorted(f0), f1


def union_matchings(*pair_lists) -> list[Pair]:
    out = []
    for pl in pair_lists:
        out.extend(pl)
    return out


def _verify_monotone(family, key_of, leq):
    ms = sorted(family)
    if not ms:
        return
    keys = []
    key_id = {}
    kid = np.empty(len(ms), dtype=np.int32)
    for i, m in enumerate(ms):
        k = key_of[m]
        if k not in key_id:
            key_id[k] = len(keys)
            keys.append(k)
        kid[i] = key_id[k]
    nk = len(keys)
    leqmat = np.zeros((nk, nk), dtype=bool)
    for a in range(nk):
        for b in range(nk):
            leqmat[a, b] = bool(leq(keys[a], keys[b]))
    if ms[-1] < (1 << 62):
        arr = np.array(ms, dtype=np.uint64)
        chunk = 2048
        for i0 in range(0, len(ms), chunk):
            a = arr[i0:i0 + chunk]
            ka = kid[i0:i0 + chunk]
            for j0 in range(0, len(ms), chunk):
                b = arr[j0:j0 + chunk]
                kb = kid[j0:j0 + chunk]
                subset = (a[:, None] & ~b[None, :]) == 0
                ok = leqmat[ka[:, None], kb[None, :]]
                bad = subset & ~ok
                if bad.any():
                    i, j = map(int, np.argwhere(bad)[0])
                    raise MonotonicityError(
                        f"key map not monotone: {ms[i0 + i]:x} subset of {ms[j0 + j]:x} "
                        f"but keys are not ordered"
                    )
    else:  # big masks: plain loops
        for i, m in enumerate(ms):
            for j, t in enumerate(ms):
                if m & ~t == 0 and not leqmat[kid[i], kid[j]]:
                    raise MonotonicityError(
                        f"key map not monotone: {m:x} subset of {t:x} but keys are not ordered"
                    )


def cluster_union(family, key_fn, leq, part_pairs, *, verify: bool = True) -> list[Pair]:
    """Union of per-fiber matchings for a monotone key into a poset.

    ``key_fn`` maps faces to keys, ``leq`` is the poset order on keys (must
    be reflexive), ``part_pairs`` maps keys to that fiber's matching.
    Monotonicity (sigma subset of tau implies key(sigma) <= key(tau)) is
    verified, and the union is re-checked for acyclicity.
    """
    fam_sorted = sorted(set(family))
    key_of = {m: key_fn(m) for m in fam_sorted}
    fibers: dict = {}
    for m in fam_sorted:
        fibers.setdefault(key_of[m], []).append(m)
    for k, pl in part_pairs.items():
        if k not in fibers and pl:
            raise ValueError("matching supplied for a key with an empty fiber")
        fiber = set(fibers.get(k, ()))
        for (s, t) in pl:
            if s not in fiber or t not in fiber:
                raise ValueError("per-part matching leaves its fiber")
    if verify:
        _verify_monotone(fam_sorted, key_of, leq)
    order = sorted(fibers, key=lambda k: fibers[k][0])
    pairs = union_matchings(*(part_pairs.get(k, ()) for k in order))
    if verify:
        ok, _ = is_acyclic(fam_sorted, pairs)
        if not ok:
            raise InternalCheckError("cluster union came out cyclic")
    return pairs


@dataclass(frozen=True)
class JoinPart:
    """One factor of a join: its ground bits, family, and acyclic matching."""

    ground_mask: int
    family: tuple[int, ...]
    pairs: tuple[Pair, ...]

    @classmethod
    def make(cls, ground_mask, family, pairs) -> "JoinPart":
        return cls(ground_mask, tuple(sorted(set(family))), tuple(pairs))

    @classmethod
    def single(cls, face_mask: int, ground_mask: int | None = None) -> "JoinPart":
        """A one-member family with the empty matching (one critical face)."""
        gm = face_mask if ground_mask is None else ground_mask
        return cls(gm, (face_mask,), ())


@dataclass(frozen=True)
class JoinResult:
    family: tuple[int, ...]
    pairs: tuple[Pair, ...]
    criticals: tuple[int, ...]


def join_matching(parts, *, verify: bool = True) -> JoinResult:
    """Acyclic matching on a join of families over disjoint ground parts.

    Parts are processed sorted by critical-set size; a pair of the combined
    matching takes a matched pair of the i-th part, joined with critical
    faces from earlier parts and arbitrary faces from later parts.  The
    criticals of the output are exactly the joins of per-part criticals,
    which is asserted.
    """
    parts = [p if isinstance(p, JoinPart) else JoinPart.make(*p) for p in parts]
    used = 0
    for p in parts:
        if not p.family:
            raise EmptyFamilyError("join over an empty family part")
        if p.ground_mask & used:
            raise ValueError("join parts must have disjoint grounds")
        used |= p.ground_mask
        for m in p.family:
            if m & ~p.ground_mask:
                raise ValueError("family face leaves its part ground")
    crit = []
    for p in parts:
        rep = validate_matching(p.family, p.pairs)
        if verify and not rep.valid:
            raise ValueError(f"invalid part matching: {rep.problems[:1]}")
        if verify:
            ok, _ = is_acyclic(p.family, p.pairs)
            if not ok:
                raise ValueError("cyclic part matching handed to join")
        crit.append(rep.critical)

    order = sorted(range(len(parts)), key=lambda i: (len(crit[i]), i))
    m = len(parts)
    suffix: list[list[int]] = [[] for _ in range(m + 1)]
    suffix[m] = [0]
    for pos in range(m - 1, -1, -1):
        fam = parts[order[pos]].family
        suffix[pos] = [f | b for f in fam for b in suffix[pos + 1]]
    pairs: list[Pair] = []
    alphas = [0]
    for pos in range(m):
        i = order[pos]
        betas = suffix[pos + 1]
        for a in alphas:
            for (s, t) in parts[i].pairs:
                sa, ta = a | s, a | t
                for b in betas:
                    pairs.append((sa | b, ta | b))
        alphas = [a | c for a in alphas for c in crit[i]]
        if not alphas:
            break
    family = tuple(sorted(suffix[0]))
    criticals = tuple(sorted(alphas)) if alphas else ()
    if len(family) != len(set(family)):
        raise InternalCheckError("join family has colliding faces")
    if verify:
        matched = set()
        for (s, t) in pairs:
            matched.add(s)
            matched.add(t)
        actual = tuple(sorted(set(family) - matched))
        if actual != criticals:
            raise InternalCheckError("join criticals differ from the join of part criticals")
    return JoinResult(family, tuple(pairs), criticals)


@dataclass(frozen=True)
class ProjectionResult:
    family: tuple[int, ...]
    pairs: tuple[Pair, ...]
    criticals: tuple[int, ...]


def _subsets_of(mask: int) -> list[int]:
    """All submasks of a bitmask, the empty one included."""
    bits = list(mask_bits(mask))
    out = []
    for r in range(1 << len(bits)):
        s = 0
        rr = r
        i = 0
        while rr:
            if rr & 1:
                s |= 1 << bits[i]
            rr >>= 1
            i += 1
        out.append(s)
    return out


def _part_choices(part_mask: int, tau: int) -> list[int]:
    """Possible intersections of a member with one part, given it meets it."""
    base = part_mask & tau
    free = part_mask & ~tau
    if base == 0:
        return [s for s in _subsets_of(free) if s]
    return [base | s for s in _subsets_of(free)]


def projection_matching(part_masks, tau: int, q_family, q_pairs, *, verify: bool = True) -> ProjectionResult:
    """Lift a matching through the partition projection map.

    The ground splits into the given parts; pi(sigma) is the set of part
    indices sigma meets.  The lifted family is F = {sigma : pi(sigma) in the
    projected family, tau subset of sigma}.  Requires every projected face to
    contain pi(tau) (that is exactly when the projected family equals pi(F)),
    and the supplied matching to be valid and acyclic.  Critical faces of the
    lift inject into projected criticals with
    |sigma| = |pi(sigma)| - |pi(tau)| + |tau|, which is asserted.
    """
    parts = list(part_masks)
    union = 0
    for pm in parts:
        if pm & union:
            raise ValueError("projection parts must be disjoint")
        union |= pm
    if tau & ~union:
        raise ValueError("tau must lie inside the partitioned ground")
    pi_tau = 0
    for i, pm in enumerate(parts):
        if pm & tau:
            pi_tau |= 1 << i
    qfam = sorted(set(q_family))
    for g in qfam:
        if pi_tau & ~g:
            raise ValueError("projected family member misses pi(tau); lift undefined")
    rep = validate_matching(qfam, q_pairs)
    if not rep.valid:
        raise ValueError(f"invalid projected matching: {rep.problems[:1]}")
    if verify:
        ok, _ = is_acyclic(qfam, q_pairs)
        if not ok:
            raise ValueError("cyclic projected matching handed to the lift")

    def members_with_projection(gamma: int) -> list[int]:
        out = [tau]
        for i in mask_bits(gamma):
            choices = _part_choices(parts[i], tau)
            out = [m | c for m in out for c in choices]
        return out

    family: list[int] = []
    pairs: list[Pair] = []
    criticals: list[int] = []
    seen: set[int] = set()

    for (g1, g2) in q_pairs:
        i = next(mask_bits(g2 & ~g1))
        bit = parts[i] & -parts[i]
        base = members_with_projection(g1)
        subs = _subsets_of(parts[i])
        block = [a | s for a in base for s in subs]
        for mface in block:
            if mface in seen:
                raise InternalCheckError("projection blocks overlap")
            seen.add(mface)
        family.extend(block)
        pairs.extend((m_, m_ | bit) for m_ in block if not m_ & bit)

    for gamma in rep.critical:
        # X_gamma = join over the parts of gamma of the per-part choice family
        # (tau bits sit in their own one-face factor)
        join_parts = [JoinPart.single(tau, tau)] if tau else [JoinPart.make(0, (0,), ())]
        complete = False
        for i in mask_bits(gamma):
            base = parts[i] & tau
            free = parts[i] & ~tau
            if base == 0:
                # non-empty subsets of the part: toggle leaves one singleton
                choices = [s for s in _subsets_of(free) if s]
                e = min(mask_bits(parts[i]))
                p, _, f1 = boolean_matching(choices, e)
                join_parts.append(JoinPart.make(parts[i], choices, p))
            elif free:
                # all subsets of the free bits: the toggle matching is complete
                choices = _subsets_of(free)
                e = min(mask_bits(free))
                p, _, f1 = boolean_matching(choices, e)
                if f1:
                    raise InternalCheckError("expected a complete toggle matching")
                complete = True
                join_parts.append(JoinPart.make(free, choices, p))
            else:
                # part fully inside tau: contributes nothing beyond tau itself
                join_parts.append(JoinPart.make(0, (0,), ()))
        res = join_matching(join_parts, verify=verify)
        for mface in res.family:
            if mface in seen:
                raise InternalCheckError("projection blocks overlap")
            seen.add(mface)
        family.extend(res.family)
        pairs.extend(res.pairs)
        criticals.extend(res.criticals)
        if verify:
            if complete and res.criticals:
                raise InternalCheckError("complete block produced criticals")
            for c in res.criticals:
                expect = gamma.bit_count() - pi_tau.bit_count() + tau.bit_count()
                if c.bit_count() != expect:
                    raise InternalCheckError("lifted critical has the wrong size")

    if verify:
        pis = set()
        for c in criticals:
            pc = 0
            for i, pm in enumerate(parts):
                if c & pm:
                    pc |= 1 << i
            if pc in pis:
                raise InternalCheckError("lifted criticals do not inject")
            pis.add(pc)
            if pc not in set(rep.critical):
                raise InternalCheckError("lifted critical projects outside projected criticals")
        ok, _ = is_acyclic(family, pairs)
        if not ok:
            raise InternalCheckError("projection lift came out cyclic")
    return ProjectionResult(tuple(sorted(family)), tuple(pairs), tuple(sorted(criticals)))


# ---------------------------------------------------------------------------
# Morse inequality
# ---------------------------------------------------------------------------


def morse_inequality_details(cx: SimplicialComplex, pairs, field: FieldSpec = GF2) -> dict:
    """Per-dimension comparison of critical counts against homology ranks.

    The matching must be valid and acyclic on the non-empty faces of the
    complex.  In dimensions i >= 1 the reduced and unreduced ranks agree and
    must be dominated; in dimension 0 the asserted comparison uses the
    unreduced rank while the reduced variant is reported alongside.
    """
    family = [m for m in cx.faces if m != 0]
    rep = validate_matching(family, pairs)
    if not rep.valid:
        raise ValueError(f"invalid matching: {rep.problems[:1]}")
    ok, _ = is_acyclic(family, pairs)
    if not ok:
        raise ValueError("matching is not acyclic")
    crit_by_dim: dict[int, int] = {}
    for m in rep.critical:
        d = m.bit_count() - 1
        crit_by_dim[d] = crit_by_dim.get(d, 0) + 1
    betti = reduced_betti(cx, field)
    dims = sorted(set(crit_by_dim) | {d for d in betti.betti if d >= 0})
    holds = True
    comparisons = {}
    for d in dims:
        b = betti.get(d)
        if d == 0:
            h0 = b + (1 if cx.faces_of_dim(0) else 0)
            ok_d = h0 <= crit_by_dim.get(0, 0)
            comparisons[d] = {"h_unreduced": h0, "reduced": b, "critical": crit_by_dim.get(d, 0),
                              "holds": ok_d, "reduced_holds": b <= crit_by_dim.get(d, 0)}
        else:
            ok_d = b <= crit_by_dim.get(d, 0)
            comparisons[d] = {"betti": b, "critical": crit_by_dim.get(d, 0), "holds": ok_d}
        holds = holds and ok_d
    return {"holds": holds, "per_dim": comparisons, "field": field.label()}


def verify_morse_inequality(cx: SimplicialComplex, matching, field: FieldSpec = GF2) -> bool:
    """True iff per-dimension critical counts dominate the homology ranks."""
    pairs = matching.pairs if isinstance(matching, ElementMatching) else matching
    return morse_inequality_details(cx, pairs, field)["holds"]
