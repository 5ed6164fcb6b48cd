"""Exact linear algebra over the rationals.

Rows are eliminated fraction-free: every working row is kept as a primitive
integer vector (denominators cleared, content divided out), so intermediate
entries stay small. Only the final reduced echelon form is expressed with
:class:`~fractions.Fraction` entries.

Sparse rows are ``dict[int, value]``; dense matrices are lists of lists.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from gnl.errors import InputError

SparseRow = dict[int, int]
RatMatrix = list[list[Fraction]]


def _primitive(row: Mapping[int, int | Fraction]) -> SparseRow:
    """Scale a row to coprime integers with a positive leading entry."""
    vals = [v for v in row.values() if v]
    if not vals:
        return {}
    den = 1
    for v in vals:
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    out = {c: int(v * den) for c, v in row.items() if v}
    g = 0
    for v in out.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = out[min(out)]
    if lead < 0:
        g = -g
    if g != 1:
        out = {c: v // g for c, v in out.items()}
    return out


def _sparse_rows(rows: Iterable) -> list[SparseRow]:
    out = []
    for r in rows:
        if isinstance(r, Mapping):
            out.append(_primitive(r))
        else:
            out.append(_primitive({c: v for c, v in enumerate(r) if v}))
    return out


class Echelon:
    """Incremental fraction-free row echelon form.

    ``pivots[c]`` is a primitive integer row whose first nonzero column is c.
    """

    def __init__(self):
        self.pivots: dict[int, SparseRow] = {}

    def reduce(self, row: SparseRow) -> SparseRow:
        """Eliminate all pivot columns from the leading part of ``row``."""
        piv = self.pivots
        while row:
            p = min(row)
            prow = piv.get(p)
            if prow is None:
                return row
            a, b = prow[p], row[p]
            g = gcd(a, b)
            a //= g
            b //= g
            new = {c: a * v for c, v in row.items()} if a != 1 else dict(row)
            for c, v in prow.items():
                nv = new.get(c, 0) - b * v
                if nv:
                    new[c] = nv
                else:
                    new.pop(c, None)
            row = _primitive(new)
        return row

    def add(self, row: Mapping) -> bool:
        """Insert a row; returns True if it increased the rank."""
        row = self.reduce(_primitive(row))
        if row:
            self.pivots[min(row)] = row
            return True
        return False

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def rref(self) -> tuple[list[int], list[dict[int, Fraction]]]:
        """Reduced echelon rows (leading 1, zero in other pivot columns)."""
        cols = sorted(self.pivots)
        done: dict[int, dict[int, Fraction]] = {}
        for p in reversed(cols):
            row = self.pivots[p]
            lead = row[p]
            r = {c: Fraction(v, lead) for c, v in row.items()}
            for q in [c for c in r if c != p and c in done]:
                f = r.get(q)
                if not f:
                    continue
                for c, v in done[q].items():
                    nv = r.get(c, 0) - f * v
                    if nv:
                        r[c] = nv
                    else:
                        r.pop(c, None)
            done[p] = r
        return cols, [done[p] for p in cols]


def echelon(rows: Iterable) -> Echelon:
    ech = Echelon()
    for r in _sparse_rows(rows):
        if r:
            ech.add(r)
    return ech


def rank(rows: Iterable) -> int:
    """Rank of a matrix given as dense rows or sparse dict rows."""
    return echelon(rows).rank


def rref(rows: Iterable, ncols: int) -> tuple[list[int], RatMatrix]:
    pivots, sparse = echelon(rows).rref()
    dense = []
    for r in sparse:
        line = [Fraction(0)] * ncols
        for c, v in r.items():
            line[c] = v
        dense.append(line)
    return pivots, dense


def nullspace_vectors(rows: Iterable, ncols: int) -> list[list[Fraction]]:
    """Basis of {v : M v = 0}, one vector per free column."""
    pivots, red = echelon(rows).rref()
    pset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for p, r in zip(pivots, red):
            x = r.get(f)
            if x:
                v[p] = -x
        basis.append(v)
    return basis


def kernel(rows: Iterable, ncols: int) -> "Subspace":
    return Subspace(ncols, nullspace_vectors(rows, ncols))


def identity(n: int) -> RatMatrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def as_matrix(m: Sequence[Sequence]) -> RatMatrix:
    return [[Fraction(v) for v in row] for row in m]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> RatMatrix:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col) if x and y), Fraction(0)) for col in bt]
            for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list[Fraction]:
    return [sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in a]


def inverse(m: Sequence[Sequence]) -> RatMatrix:
    """Inverse of a square rational matrix; raises InputError if singular."""
    n = len(m)
    if any(len(r) != n for r in m):
        raise InputError("inverse needs a square matrix")
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(m)]
    pivots, red = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise InputError("matrix is singular")
    return [row[n:] for row in red[:n]]


class Subspace:
    """Subspace of Q^n stored by its reduced row echelon basis."""

    __slots__ = ("n", "rows", "pivots")

    def __init__(self, n: int, vectors: Iterable = ()):
        self.n = n
        vecs = list(vectors)
        for v in vecs:
            if not isinstance(v, Mapping) and len(v) != n:
                raise InputError(f"vector of length {len(v)} in ambient dimension {n}")
        pivots, red = rref(vecs, n)
        self.pivots = tuple(pivots)
        self.rows = tuple(tuple(r) for r in red)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]

    def contains(self, v: Sequence) -> bool:
        return rank(list(self.rows) + [list(v)]) == self.dim

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self.rows)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.n, list(self.rows) + list(other.rows))

    def intersect(self, other: "Subspace") -> "Subspace":
        k = self.dim
        # coefficient vectors (a, b) with sum a_i u_i = sum b_j w_j
        cols = list(self.rows) + [[-x for x in r] for r in other.rows]
        system = [[c[i] for c in cols] for i in range(self.n)]
        coeffs = nullspace_vectors(system, len(cols))
        vecs = []
        for a in coeffs:
            v: dict[int, Fraction] = {}
            for i in range(k):
                if a[i]:
                    for j, x in enumerate(self.rows[i]):
                        if x:
                            v[j] = v.get(j, 0) + a[i] * x
            vecs.append(v)
        return Subspace(self.n, vecs)

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> "Subspace":
        vecs = []
        for i in indices:
            v = [0] * n
            v[i] = 1
            vecs.append(v)
        return cls(n, vecs)

    def __repr__(self):
        return f"Subspace(n={self.n}, dim={self.dim})"
