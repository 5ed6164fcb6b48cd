"""Chevalley-Eilenberg cohomology with trivial coefficients.

Basis k-forms ``e^S`` are indexed by sorted k-subsets S of the basis. The
differential is the derivation of the exterior algebra determined by
``d e^s = -sum_{i<j} c^s_{ij} e^i ^ e^j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from gnl._bigint import dec
from gnl.bigpoly import length
from gnl.errors import CapacityError
from gnl.grading import Grading, associated_polynomial
from gnl.liealg import StructureConstants, center
from gnl.linalg import rank

DEFAULT_MAX_DIM = 14


@dataclass
class SparseMatrix:
    nrows: int
    ncols: int
    rows: list[dict[int, Fraction]]

    def is_zero(self) -> bool:
        return not any(self.rows)

    def dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for r, row in enumerate(self.rows):
            for c, v in row.items():
                out[r][c] = v
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        # transpose of other keyed by its rows
        rows = []
        for row in self.rows:
            acc: dict[int, Fraction] = {}
            for k, a in row.items():
                for c, b in other.rows[k].items():
                    acc[c] = acc.get(c, 0) + a * b
            rows.append({c: v for c, v in acc.items() if v})
        return SparseMatrix(self.nrows, other.ncols, rows)


def _check_dim(L: StructureConstants, max_dim: int) -> None:
    if L.n > max_dim:
        raise CapacityError(
            f"dimension {L.n} exceeds the cohomology cap {max_dim} "
            f"(largest exterior power has {comb(L.n, L.n // 2)} basis forms)")


def _one_form_differentials(L: StructureConstants) -> list[list[tuple[int, int, Fraction]]]:
    out: list[list] = [[] for _ in range(L.n)]
    for (i, j), vec in L.table.items():
        for s, c in vec.items():
            out[s].append((i, j, -c))
    return out


def _coeff(c: Fraction):
    return c.numerator if c.denominator == 1 else c


def ce_differential(L: StructureConstants, k: int, max_dim: int = DEFAULT_MAX_DIM) -> SparseMatrix:
    """Matrix of d: Λ^k → Λ^{k+1}; column = k-subset, row = (k+1)-subset,
    both in lexicographic order."""
    _check_dim(L, max_dim)
    N = L.n
    if not 0 <= k <= N:
        raise ValueError(f"degree {k} outside 0..{N}")
    src = list(combinations(range(N), k))
    dst = {s: r for r, s in enumerate(combinations(range(N), k + 1))}
    rows: list[dict] = [{} for _ in range(len(dst))]
    d1 = _one_form_differentials(L)
    for col, S in enumerate(src):
        for t, s in enumerate(S):
            if not d1[s]:
                continue
            before, after = S[:t], S[t + 1:]
            rest = set(before) | set(after)
            for i, j, c in d1[s]:
                if i in rest or j in rest:
                    continue
                inv = (sum(1 for v in before if v > i) + sum(1 for v in before if v > j)
                       + sum(1 for v in after if v < i) + sum(1 for v in after if v < j))
                sign = -1 if (t + inv) & 1 else 1
                key = tuple(sorted(rest | {i, j}))
                r = dst[key]
                val = rows[r].get(col, 0) + sign * c
                if val:
                    rows[r][col] = val
                else:
                    rows[r].pop(col, None)
    rows = [{c: _coeff(Fraction(v)) for c, v in row.items()} for row in rows]
    return SparseMatrix(len(dst), len(src), rows)


@dataclass
class BettiVector:
    b: list[int]
    total: int = field(init=False)

    def __post_init__(self):
        self.total = sum(self.b)

    @property
    def euler(self) -> int:
        return sum((-1) ** k * x for k, x in enumerate(self.b))


def differential_ranks(L: StructureConstants, max_dim: int = DEFAULT_MAX_DIM) -> list[int]:
    _check_dim(L, max_dim)
    return [rank(ce_differential(L, k, max_dim).rows) if k < L.n else 0
            for k in range(L.n + 1)]


def betti(L: StructureConstants, max_dim: int = DEFAULT_MAX_DIM) -> BettiVector:
    ranks = differential_ranks(L, max_dim)
    N = L.n
    return BettiVector([comb(N, k) - ranks[k] - (ranks[k - 1] if k else 0) for k in range(N + 1)])


@dataclass
class BoundCheck:
    total_betti: int
    length: int
    holds: bool
    center_dim: int
    trc_bound: int
    trc_holds: bool

    def to_json(self) -> dict:
        return {
            "total_betti": self.total_betti,
            "length": dec(self.length),
            "holds": self.holds,
            "center_dim": self.center_dim,
            "trc_bound": dec(self.trc_bound),
            "trc_holds": self.trc_holds,
        }


def check_ds_bound(L: StructureConstants, G: Grading, max_dim: int = DEFAULT_MAX_DIM) -> BoundCheck:
    """Compare dim H*(L) with the length of the grading polynomial and with 2^dim z."""
    total = betti(L, max_dim).total
    ell = length(associated_polynomial(L, G))
    z = center(L).dim
    return BoundCheck(total, ell, total >= ell, z, 2 ** z, total >= 2 ** z)
