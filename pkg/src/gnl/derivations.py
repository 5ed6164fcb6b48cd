"""Derivation algebras and the block structure of Der(n(n)).

Matrices act on columns: ``D[r][c]`` is the coefficient of ``b_r`` in
``D(b_c)``. For the family, rows/columns follow the ordered basis of
:class:`gnl.family.FamilyLayout`, so "lower triangular" means ``D(b_c)`` only
involves ``b_c`` and later basis vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from gnl.errors import InputError
from gnl.family import FamilyLayout, wedge
from gnl.grading import Grading, require_valid
from gnl.liealg import StructureConstants
from gnl.linalg import identity, matmul, nullspace_vectors, rank

Matrix = list[list[Fraction]]


def zeros(n: int) -> Matrix:
    return [[Fraction(0)] * n for _ in range(n)]


def leibniz_system(L: StructureConstants) -> list[dict[int, Fraction]]:
    """Linear equations on the N^2 entries of D (unknown ``r*N + c`` is D[r][c])."""
    N = L.n
    left: list[list[tuple[int, dict]]] = [[] for _ in range(N)]   # j -> [(r, [b_r, b_j])]
    right: list[list[tuple[int, dict]]] = [[] for _ in range(N)]  # i -> [(r, [b_i, b_r])]
    for (i, j), vec in L.table.items():
        left[j].append((i, vec))
        right[i].append((j, vec))
        neg = {k: -c for k, c in vec.items()}
        left[i].append((j, neg))
        right[j].append((i, neg))
    rows = []
    for i in range(N):
        for j in range(i + 1, N):
            eq: dict[int, dict[int, Fraction]] = {}
            # D[b_i, b_j]
            for l, c in L.table.get((i, j), {}).items():
                for k in range(N):
                    e = eq.setdefault(k, {})
                    e[k * N + l] = e.get(k * N + l, 0) + c
            # - [D b_i, b_j]
            for r, vec in left[j]:
                for k, c in vec.items():
                    e = eq.setdefault(k, {})
                    e[r * N + i] = e.get(r * N + i, 0) - c
            # - [b_i, D b_j]
            for r, vec in right[i]:
                for k, c in vec.items():
                    e = eq.setdefault(k, {})
                    e[r * N + j] = e.get(r * N + j, 0) - c
            for e in eq.values():
                e = {u: c for u, c in e.items() if c}
                if e:
                    rows.append(e)
    return rows


@dataclass
class DerivationBasis:
    algebra: StructureConstants
    matrices: list[Matrix]

    @property
    def dim(self) -> int:
        return len(self.matrices)


def derivation_space(L: StructureConstants) -> DerivationBasis:
    N = L.n
    vecs = nullspace_vectors(leibniz_system(L), N * N)
    mats = [[v[r * N:(r + 1) * N] for r in range(N)] for v in vecs]
    return DerivationBasis(L, mats)


def apply(D: Sequence[Sequence], v: dict[int, Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for c, a in v.items():
        for r in range(len(D)):
            x = D[r][c]
            if x:
                out[r] = out.get(r, 0) + a * x
    return {k: x for k, x in out.items() if x}


def column(D: Sequence[Sequence], c: int) -> dict[int, Fraction]:
    return {r: D[r][c] for r in range(len(D)) if D[r][c]}


def is_derivation(L: StructureConstants, D: Sequence[Sequence]) -> bool:
    N = L.n
    if len(D) != N or any(len(r) != N for r in D):
        raise InputError(f"derivation matrix must be {N}x{N}")
    cols = [column(D, c) for c in range(N)]
    for i in range(N):
        for j in range(i + 1, N):
            lhs = apply(D, L.bracket_basis(i, j))
            rhs: dict[int, Fraction] = {}
            for part in (L.bracket_sparse(cols[i], {j: 1}), L.bracket_sparse({i: 1}, cols[j])):
                for k, x in part.items():
                    rhs[k] = rhs.get(k, 0) + x
            if lhs != {k: x for k, x in rhs.items() if x}:
                return False
    return True


def commutator(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    AB = matmul(A, B)
    BA = matmul(B, A)
    return [[x - y for x, y in zip(r, s)] for r, s in zip(AB, BA)]


def _check_family(L: StructureConstants, lay: FamilyLayout) -> None:
    if list(L.labels) != lay.labels:
        raise InputError(f"algebra is not n({lay.n}) in the standard basis order")


def lift_gl(lay: FamilyLayout, A: Sequence[Sequence]) -> Matrix:
    """The derivation acting as A on E, X, U, Y, as the wedge action on e_i^e_j,
    and as zero on a, b, x, u, y, c, f, h."""
    n = lay.n
    if len(A) != n or any(len(r) != n for r in A):
        raise InputError(f"A must be {n}x{n}")
    pos = {lab: i for i, lab in enumerate(lay.labels)}
    D = zeros(lay.dim)
    for block in (lay.E, lay.X, lay.U, lay.Y):
        for i in range(n):
            for j in range(n):
                if A[i][j]:
                    D[pos[block[i]]][pos[block[j]]] = Fraction(A[i][j])
    # A e_i ^ e_j + e_i ^ A e_j  (indices 1-based in labels)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            col = pos[wedge(i, j)]
            for k in range(1, n + 1):
                for (p, q, s) in ((k, j, A[k - 1][i - 1]), (i, k, A[k - 1][j - 1])):
                    if not s or p == q:
                        continue
                    sign = 1 if p < q else -1
                    r = pos[wedge(min(p, q), max(p, q))]
                    D[r][col] += sign * Fraction(s)
    return D


@dataclass
class LeviSplit:
    A: Matrix
    DA: Matrix
    D1: Matrix


def levi_split(L: StructureConstants, lay: FamilyLayout, D: Sequence[Sequence]) -> LeviSplit:
    """Write D = D_A + D_1 with A the E-to-E block of D and D_1(E) inside W."""
    _check_family(L, lay)
    if not is_derivation(L, D):
        raise InputError("input is not a derivation")
    n = lay.n
    A = [[Fraction(D[r][c]) for c in range(n)] for r in range(n)]
    DA = lift_gl(lay, A)
    D1 = [[Fraction(x) - y for x, y in zip(r, s)] for r, s in zip(D, DA)]
    return LeviSplit(A, DA, D1)


def in_der1(lay: FamilyLayout, D1: Sequence[Sequence]) -> bool:
    n = lay.n
    return all(D1[r][c] == 0 for r in range(n) for c in range(n))


def _require_der1(lay, D1):
    if not in_der1(lay, D1):
        raise InputError("matrix does not map E into W")


def check_triangular(lay: FamilyLayout, D1: Sequence[Sequence]) -> bool:
    _require_der1(lay, D1)
    N = lay.dim
    return all(D1[r][c] == 0 for c in range(N) for r in range(c))


def diagonal(lay: FamilyLayout, D: Sequence[Sequence]) -> dict[str, Fraction]:
    return {lab: Fraction(D[i][i]) for i, lab in enumerate(lay.labels)}


def check_diagonal_relations(lay: FamilyLayout, D1: Sequence[Sequence]) -> bool:
    _require_der1(lay, D1)
    lam = diagonal(lay, D1)
    a = lam["a"]
    return (all(lam[e] == 0 for e in lay.E)
            and lam["b"] == a and lam["x"] == a
            and lam["u"] == lam["y"] == lam["c"] == 2 * a
            and lam["f"] == lam["h"] == 3 * a)


def grading_derivation(L: StructureConstants, G: Grading) -> Matrix:
    if G.d != 1:
        raise InputError("grading derivation needs a one-variable grading")
    require_valid(L, G)
    D = zeros(L.n)
    for i, lab in enumerate(L.labels):
        D[i][i] = Fraction(G.degree[lab][0])
    return D


def eigen_multiplicities(D: Sequence[Sequence], spectrum: Sequence[int] = (1, 2, 3)) -> dict[int, int]:
    """Multiplicities of a matrix whose minimal polynomial divides prod (T - s).

    Raises InputError if the matrix is not diagonalizable with eigenvalues in
    ``spectrum``.
    """
    N = len(D)
    I = identity(N)
    shifted = {s: [[Fraction(x) - s * y for x, y in zip(r, q)] for r, q in zip(D, I)] for s in spectrum}
    prod = I
    for s in spectrum:
        prod = matmul(prod, shifted[s])
    if any(x for row in prod for x in row):
        raise InputError(f"matrix is not diagonalizable with eigenvalues in {list(spectrum)}")
    return {s: N - rank(shifted[s]) for s in spectrum}


def strictly_lower_nilpotent(mats: Sequence[Matrix]) -> bool:
    """Products of N strictly lower parts vanish (any order tried: left fold)."""
    if not mats:
        return True
    N = len(mats[0])
    parts = [[[m[r][c] if r > c else Fraction(0) for c in range(N)] for r in range(N)] for m in mats]
    prod = identity(N)
    for k in range(N):
        prod = matmul(prod, parts[k % len(parts)])
    return not any(x for row in prod for x in row)


def elementary(n: int, i: int, j: int) -> Matrix:
    A = zeros(n)
    A[i][j] = Fraction(1)
    return A


def _flat(D: Sequence[Sequence]) -> list[Fraction]:
    return [x for row in D for x in row]


def gl_lift_rank(lay: FamilyLayout, basis: DerivationBasis) -> tuple[int, bool]:
    """Rank of the lifts of the elementary matrices E_ij, and whether they all
    lie in the span of ``basis``."""
    n = lay.n
    lifts = [_flat(lift_gl(lay, elementary(n, i, j))) for i in range(n) for j in range(n)]
    r = rank(lifts)
    span = [_flat(D) for D in basis.matrices]
    contained = rank(span + lifts) == rank(span)
    return r, contained


def verify_family(L: StructureConstants, lay: FamilyLayout, checks: Sequence[str] = (
        "levi", "triangular", "diagonal", "multiplicity")) -> dict:
    """Run the requested structure checks over a computed basis of Der(n(n))."""
    from gnl.family import canonical_grading, dims

    _check_family(L, lay)
    basis = derivation_space(L)
    out: dict = {"n": lay.n, "dim_algebra": L.n, "dim_der": basis.dim}
    splits = [levi_split(L, lay, D) for D in basis.matrices]
    if "levi" in checks:
        out["levi"] = all(is_derivation(L, s.DA) and is_derivation(L, s.D1) and in_der1(lay, s.D1)
                          for s in splits)
        r, contained = gl_lift_rank(lay, basis)
        out["gl_lift_rank"] = r
        out["gl_lift_in_der"] = contained
        out["gl_lift_ok"] = r == lay.n ** 2 and contained
    if "triangular" in checks:
        out["triangular"] = all(check_triangular(lay, s.D1) for s in splits)
        out["der1_solvable"] = strictly_lower_nilpotent([s.D1 for s in splits])
    if "diagonal" in checks:
        out["diagonal"] = all(check_diagonal_relations(lay, s.D1) for s in splits)
    if "multiplicity" in checks:
        d = dims(lay.n)
        mult = eigen_multiplicities(grading_derivation(L, canonical_grading(lay.n)))
        out["multiplicities"] = [mult[1], mult[2], mult[3]]
        out["multiplicity"] = (mult[1], mult[2], mult[3]) == (d.d1, d.d2, d.d3)
    keys = [k for k in ("levi", "gl_lift_ok", "triangular", "diagonal", "multiplicity") if k in out]
    out["pass"] = all(out[k] for k in keys)
    return out


def check_multiplicities(L: StructureConstants, D: Sequence[Sequence], n: int) -> dict:
    """Check a supplied derivation of n(n) with spectrum {1,2,3} against (d1, d2, d3)."""
    from gnl.family import dims

    D = [[Fraction(x) for x in row] for row in D]
    ok = is_derivation(L, D)
    d = dims(n)
    mult = eigen_multiplicities(D)
    got = [mult[1], mult[2], mult[3]]
    return {"is_derivation": ok, "multiplicities": got, "expected": [d.d1, d.d2, d.d3],
            "pass": ok and got == [d.d1, d.d2, d.d3]}
