"""Reduced simplicial homology over finite fields and the rationals.

The chain complex uses the reduced convention: there is a chain group in
dimension -1 generated by the empty face, so the boundary of a vertex is the
empty face.  Betti numbers come from boundary ranks,

    beta_d = nullity(bd_d) - rank(bd_{d+1}),

computed by Gaussian elimination: packed bitset elimination over GF(2),
dense integer elimination modulo p for small matrices, and sparse
elimination with Markowitz-style pivot selection above the dense cutoff.
"""

from __future__ import annotations

import json
import random as _random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.sparse as sp

from .complexes import SimplicialComplex, induced_subcomplex, link, mask_bits
from .errors import CapExceededError, InternalCheckError

DEFAULT_FACE_CAP = 1 << 20
DENSE_ENTRY_CUTOFF = 4_000_000  # rows*cols above this go to the sparse path
LARGE_PRIME = 65521


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: GF(2), GF(p) for an odd prime p, or the rationals."""

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("GF2", "GFP", "RATIONAL"):
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.kind == "GFP":
            if self.p < 3 or any(self.p % q == 0 for q in range(2, int(self.p**0.5) + 1)):
                raise ValueError(f"{self.p} is not an odd prime")

    def label(self) -> str:
        if self.kind == "GF2":
            return "GF(2)"
        if self.kind == "GFP":
            return f"GF({self.p})"
        return "Q"


GF2 = FieldSpec("GF2")
RATIONAL = FieldSpec("RATIONAL")


def GFP(p: int) -> FieldSpec:
    return FieldSpec("GFP", p)


def parse_field(token: str) -> FieldSpec:
    t = token.strip().lower()
    if t in ("gf2", "gf(2)", "2"):
        return GF2
    if t in ("q", "rational", "rationals"):
        return RATIONAL
    for prefix in ("gfp:", "gf", "gf("):
        if t.startswith(prefix):
            digits = t[len(prefix):].strip(")")
            if digits.isdigit():
                return GFP(int(digits))
    if t.isdigit():
        return GFP(int(t))
    raise ValueError(f"cannot parse field {token!r}")


@dataclass(frozen=True)
class BettiTable:
    """Reduced Betti numbers per dimension, over a declared field."""

    field: FieldSpec
    betti: dict[int, int]

    def get(self, d: int) -> int:
        return self.betti.get(d, 0)

    def nonzero_dims(self) -> list[int]:
        return sorted(d for d, b in self.betti.items() if b)

    def to_csv(self) -> str:
        lines = ["dim,betti"]
        for d in sorted(self.betti):
            lines.append(f"{d},{self.betti[d]}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(
            {"field": self.field.label(), "betti": {str(d): self.betti[d] for d in sorted(self.betti)}},
            sort_keys=True,
        )


# ---------------------------------------------------------------------------
# Boundary matrices
# ---------------------------------------------------------------------------


def boundary_matrix(cx: SimplicialComplex, d: int, field: FieldSpec | None = None) -> sp.csc_matrix:
    """The boundary map from d-faces to (d-1)-faces as a sparse +-1 matrix.

    Rows are indexed by the sorted (d-1)-face masks and columns by the sorted
    d-face masks; the sign of dropping the j-th smallest element is (-1)^j.
    Entries are plain integers; reduce mod 2 / mod p to interpret them in a
    finite field (which changes nothing for +-1 entries except -1 = 1 mod 2).
    """
    lo, hi = -1, cx.dim() + 1
    if not (lo <= d <= hi):
        raise ValueError(f"dimension {d} out of range [{lo}, {hi}]")
    rows = cx.faces_of_dim(d - 1)
    cols = cx.faces_of_dim(d)
    row_index = {m: i for i, m in enumerate(rows)}
    data, ri, ci = [], [], []
    for j, m in enumerate(cols):
        sign = 1
        for b in mask_bits(m):
            face = m ^ (1 << b)
            data.append(sign)
            ri.append(row_index[face])
            ci.append(j)
            sign = -sign
    return sp.csc_matrix((data, (ri, ci)), shape=(len(rows), len(cols)), dtype=np.int8)


def _boundary_columns(cx: SimplicialComplex, d: int, rows: list[int]):
    """Columns of bd_d as (row_indices, signs) pairs, without scipy overhead."""
    row_index = {m: i for i, m in enumerate(rows)}
    cols = []
    for m in cx.faces_of_dim(d):
        idxs, signs = [], []
        sign = 1
        for b in mask_bits(m):
            idxs.append(row_index[m ^ (1 << b)])
            signs.append(sign)
            sign = -sign
        cols.append((idxs, signs))
    return cols


# ---------------------------------------------------------------------------
# Rank engines
# ---------------------------------------------------------------------------


def _rank_gf2(columns) -> int:
    """Rank over GF(2); columns given as bitmask ints over row positions."""
    pivots: dict[int, int] = {}
    rank = 0
    for col in columns:
        while col:
            low = col.bit_length() - 1
            piv = pivots.get(low)
            if piv is None:
                pivots[low] = col
                rank += 1
                break
            col ^= piv
    return rank


def _rank_dense_mod_p(cols, nrows: int, p: int) -> int:
    mat = np.zeros((nrows, len(cols)), dtype=np.int64)
    for j, (idxs, signs) in enumerate(cols):
        mat[idxs, j] = np.asarray(signs) % p
    rank = 0
    row = 0
    for col in range(mat.shape[1]):
        piv = None
        for r in range(row, nrows):
            if mat[r, col] % p:
                piv = r
                break
        if piv is None:
            continue
        if piv != row:
            mat[[row, piv]] = mat[[piv, row]]
        inv = pow(int(mat[row, col]), p - 2, p)
        mat[row] = (mat[row] * inv) % p
        below = mat[row + 1:, col] % p
        nz = np.nonzero(below)[0]
        if nz.size:
            mat[row + 1 + nz] = (mat[row + 1 + nz] - np.outer(below[nz], mat[row])) % p
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank


def _rank_sparse(cols, ops) -> int:
    """Sparse elimination; pivots chosen to keep rows and columns short."""
    rows: dict[int, dict[int, object]] = {}
    col_rows: dict[int, set[int]] = {}
    for j, (idxs, signs) in enumerate(cols):
        for i, s in zip(idxs, signs):
            rows.setdefault(i, {})[j] = ops.coerce(s)
            col_rows.setdefault(j, set()).add(i)
    rank = 0
    active = set(col_rows)
    while active:
        c = min(active, key=lambda j: (len(col_rows[j]), j))
        rs = col_rows[c]
        if not rs:
            active.discard(c)
            continue
        r = min(rs, key=lambda i: (len(rows[i]), i))
        rank += 1
        pivrow = rows.pop(r)
        for j in pivrow:
            col_rows[j].discard(r)
        inv = ops.inv(pivrow[c])
        for i in list(col_rows[c]):
            rowi = rows[i]
            factor = ops.mul(rowi[c], inv)
            for j, v in pivrow.items():
                cur = rowi.get(j, ops.zero)
                nv = ops.sub(cur, ops.mul(factor, v))
                if ops.is_zero(nv):
                    if j in rowi:
                        del rowi[j]
                        col_rows[j].discard(i)
                else:
                    if j not in rowi:
                        col_rows[j].add(i)
                    rowi[j] = nv
            if not rowi:
                del rows[i]
        active.discard(c)
    return rank


class _ModPOps:
    def __init__(self, p):
        self.p = p
        self.zero = 0

    def coerce(self, v):
        return v % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def inv(self, a):
        return pow(a, self.p - 2, self.p)

    def is_zero(self, v):
        return v == 0


class _RationalOps:
    zero = Fraction(0)

    def coerce(self, v):
        return Fraction(v)

    def mul(self, a, b):
        return a * b

    def sub(self, a, b):
        return a - b

    def inv(self, a):
        return 1 / a

    def is_zero(self, v):
        return v == 0


def _boundary_rank(cx: SimplicialComplex, d: int, field: FieldSpec) -> int:
    rows = cx.faces_of_dim(d - 1)
    ncols = len(cx.faces_of_dim(d))
    if ncols == 0 or len(rows) == 0:
        return 0
    if field.kind == "GF2":
        row_index = {m: i for i, m in enumerate(rows)}
        columns = []
        for m in cx.faces_of_dim(d):
            col = 0
            for b in mask_bits(m):
                col |= 1 << row_index[m ^ (1 << b)]
            columns.append(col)
        return _rank_gf2(columns)
    cols = _boundary_columns(cx, d, rows)
    if field.kind == "GFP" and len(rows) * ncols <= DENSE_ENTRY_CUTOFF:
        return _rank_dense_mod_p(cols, len(rows), field.p)
    ops = _ModPOps(field.p) if field.kind == "GFP" else _RationalOps()
    return _rank_sparse(cols, ops)


# ---------------------------------------------------------------------------
# Betti numbers
# ---------------------------------------------------------------------------


def reduced_betti(
    cx: SimplicialComplex,
    field: FieldSpec = GF2,
    cap: int = DEFAULT_FACE_CAP,
    min_dim: int | None = None,
) -> BettiTable:
    """Reduced Betti numbers of the complex over the given field.

    Dimensions run from -1 (which reports 1 exactly for the one-face complex
    {empty}) up to the complex dimension.  ``min_dim`` restricts the output
    to dimensions >= min_dim and skips the ranks below, which the sweeps use.
    The alternating sum is checked against the reduced Euler characteristic.
    """
    if cx.face_count > cap:
        raise CapExceededError(f"{cx.face_count} faces exceeds the linear-algebra cap {cap}")
    if cx.is_void():
        return BettiTable(field, {})
    dim = cx.dim()
    counts = cx.face_counts()
    lo = -1 if min_dim is None else min_dim
    ranks = {d: _boundary_rank(cx, d, field) for d in range(lo, dim + 2)}
    betti = {}
    for d in range(lo, dim + 1):
        f_d = counts.get(d, 0)
        betti[d] = f_d - ranks[d] - ranks.get(d + 1, 0)
        if betti[d] < 0:  # pragma: no cover - rank bug guard
            raise InternalCheckError(f"negative betti at dim {d}")
    if min_dim is None:
        euler_faces = sum((-1) ** d * c for d, c in counts.items())
        euler_betti = sum((-1) ** d * b for d, b in betti.items())
        if euler_faces != euler_betti:  # pragma: no cover - rank bug guard
            raise InternalCheckError("Euler characteristic mismatch")
    return BettiTable(field, betti)


def vanishing_from(
    cx: SimplicialComplex, d0: int, field: FieldSpec = GF2, cap: int = DEFAULT_FACE_CAP
) -> bool:
    """True iff every reduced Betti number in dimension >= d0 vanishes."""
    if cx.is_void() or d0 > cx.dim():
        return True
    table = reduced_betti(cx, field, cap, min_dim=d0)
    return all(b == 0 for b in table.betti.values())


# ---------------------------------------------------------------------------
# Leray checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FaceViolation:
    face: tuple
    betti: BettiTable


@dataclass(frozen=True)
class LerayReport:
    passed: bool
    d0: int
    field: FieldSpec
    mode: str
    checked: int
    violations: tuple[FaceViolation, ...]

    def to_json(self) -> str:
        return json.dumps(
            {
                "passed": self.passed,
                "d0": self.d0,
                "field": self.field.label(),
                "mode": self.mode,
                "checked": self.checked,
                "violations": [
                    {"face": [list(e) if isinstance(e, tuple) else e for e in v.face],
                     "betti": {str(d): b for d, b in sorted(v.betti.betti.items())}}
                    for v in self.violations
                ],
            },
            sort_keys=True,
        )


def check_near_leray(
    cx: SimplicialComplex,
    d0: int,
    field: FieldSpec = GF2,
    policy: str = "EXHAUSTIVE",
    sample_count: int = 0,
    seed: int = 0,
    cap: int = DEFAULT_FACE_CAP,
) -> LerayReport:
    """Vanishing of link homology from dimension d0 on, for non-empty faces.

    ``policy`` is EXHAUSTIVE (all non-empty faces) or SAMPLED (a seeded
    sample of ``sample_count`` non-empty faces).
    """
    faces = sorted(m for m in cx.faces if m != 0)
    if policy == "SAMPLED":
        rng = _random.Random(seed)
        if sample_count < len(faces):
            faces = sorted(rng.sample(faces, sample_count))
        label = f"SAMPLED({sample_count},{seed})"
    elif policy == "EXHAUSTIVE":
        label = "EXHAUSTIVE"
    else:
        raise ValueError(f"unknown policy {policy!r}")
    violations = []
    for m in faces:
        lk = link(cx, m)
        if not vanishing_from(lk, d0, field, cap):
            table = reduced_betti(lk, field, cap)
            violations.append(FaceViolation(cx.ground.decode(m), table))
    return LerayReport(not violations, d0, field, f"NEAR/{label}", len(faces), tuple(violations))


def check_leray(
    cx: SimplicialComplex,
    d0: int,
    field: FieldSpec = GF2,
    mode: str = "LINKS",
    cap: int = DEFAULT_FACE_CAP,
) -> LerayReport:
    """Decide d0-Lerayness.

    LINKS mode checks vanishing of every link, the empty face included, so it
    subsumes a plain vanishing check of the complex itself.  INDUCED mode
    checks every induced subcomplex; it is exponential in the ground size and
    exists to cross-validate LINKS on tiny grounds.
    """
    violations = []
    checked = 0
    if mode == "LINKS":
        for m in sorted(cx.faces):
            checked += 1
            lk = link(cx, m)
            if not vanishing_from(lk, d0, field, cap):
                violations.append(FaceViolation(cx.ground.decode(m), reduced_betti(lk, field, cap)))
    elif mode == "INDUCED":
        ne = len(cx.ground)
        if ne > 20:
            raise CapExceededError(f"INDUCED mode over {ne} ground elements is not desk scale")
        for smask in range(1 << ne):
            checked += 1
            sub = induced_subcomplex(cx, smask)
            if not vanishing_from(sub, d0, field, cap):
                violations.append(
                    FaceViolation(cx.ground.decode(smask), reduced_betti(sub, field, cap))
                )
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return LerayReport(not violations, d0, field, mode, checked, tuple(violations))
