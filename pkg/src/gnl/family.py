"""The 3-step family n(n): basis, brackets, canonical grading and a finer Z-grading.

Basis order (and labels)::

    layer 1:  e1..en, a, b, x
    layer 2:  u, y, ei^ej (i<j, lexicographic), c, x1..xn
    layer 3:  u1..un, y1..yn, f, h

Nonzero brackets: [ei,ej]=ei^ej, [ei,x]=xi, [ei,u]=ui, [ei,y]=yi, [a,b]=c,
[a,y]=f, [a,c]=h, [b,u]=h, [b,y]=h, [x,u]=f, [x,y]=h.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from gnl.errors import GnlError, InputError
from gnl.grading import Grading, validate
from gnl.liealg import (StructureConstants, center, change_basis, check_jacobi,
                        derived_algebra, lower_central_series)
from gnl.linalg import Subspace, inverse


def wedge(i: int, j: int) -> str:
    return f"e{i}^e{j}"


@dataclass(frozen=True)
class FamilyLayout:
    n: int

    @property
    def E(self) -> list[str]:
        return [f"e{i}" for i in range(1, self.n + 1)]

    @property
    def wedges(self) -> list[str]:
        return [wedge(i, j) for i, j in combinations(range(1, self.n + 1), 2)]

    @property
    def X(self) -> list[str]:
        return [f"x{i}" for i in range(1, self.n + 1)]

    @property
    def U(self) -> list[str]:
        return [f"u{i}" for i in range(1, self.n + 1)]

    @property
    def Y(self) -> list[str]:
        return [f"y{i}" for i in range(1, self.n + 1)]

    @property
    def layer1(self) -> list[str]:
        return self.E + ["a", "b", "x"]

    @property
    def layer2(self) -> list[str]:
        return ["u", "y"] + self.wedges + ["c"] + self.X

    @property
    def layer3(self) -> list[str]:
        return self.U + self.Y + ["f", "h"]

    @property
    def labels(self) -> list[str]:
        return self.layer1 + self.layer2 + self.layer3

    @property
    def dim(self) -> int:
        return (self.n * self.n + 7 * self.n + 16) // 2

    def indices(self, labels: Sequence[str]) -> list[int]:
        pos = {lab: i for i, lab in enumerate(self.labels)}
        return [pos[lab] for lab in labels]

    @property
    def W(self) -> list[str]:
        """Every basis label outside E."""
        return self.labels[self.n:]


@dataclass(frozen=True)
class DimsRecord:
    d1: int
    d2: int
    d3: int
    z: int
    z2: int
    d2_0: int = 2
    d2_1: int = 1

    def as_dict(self) -> dict:
        return asdict(self)


def dims(n: int) -> DimsRecord:
    if n < 1:
        raise InputError("n must be >= 1")
    return DimsRecord(
        d1=n + 3,
        d2=n * (n + 1) // 2 + 3,
        d3=2 * n + 2,
        z=(n + 4) * (n + 1) // 2,
        z2=n * (n + 1) // 2,
    )


def structure(n: int) -> StructureConstants:
    lay = FamilyLayout(n)
    br: dict = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            br[(f"e{i}", f"e{j}")] = {wedge(i, j): 1}
        br[(f"e{i}", "x")] = {f"x{i}": 1}
        br[(f"e{i}", "u")] = {f"u{i}": 1}
        br[(f"e{i}", "y")] = {f"y{i}": 1}
    br[("a", "b")] = {"c": 1}
    br[("a", "y")] = {"f": 1}
    br[("a", "c")] = {"h": 1}
    br[("b", "u")] = {"h": 1}
    br[("b", "y")] = {"h": 1}
    br[("x", "u")] = {"f": 1}
    br[("x", "y")] = {"h": 1}
    return StructureConstants(lay.labels, br)


def canonical_grading(n: int) -> Grading:
    lay = FamilyLayout(n)
    deg = {}
    for d, layer in enumerate((lay.layer1, lay.layer2, lay.layer3), start=1):
        for lab in layer:
            deg[lab] = (d,)
    return Grading(1, deg)


def build(n: int, check: bool = True) -> tuple[StructureConstants, Grading, FamilyLayout]:
    """Construct n(n) with its canonical grading.

    With ``check`` the Jacobi identity, nilpotency class 3, the grading and
    the center dimension are verified before returning.
    """
    if n < 1:
        raise InputError("n must be >= 1")
    L = structure(n)
    G = canonical_grading(n)
    lay = FamilyLayout(n)
    if check:
        if check_jacobi(L):
            raise GnlError(f"n({n}) violates the Jacobi identity")
        _, cls = lower_central_series(L)
        if cls != 3:
            raise GnlError(f"n({n}) has nilpotency class {cls}, expected 3")
        if validate(L, G):
            raise GnlError(f"canonical grading of n({n}) does not validate")
        if center(L).dim != dims(n).z:
            raise GnlError(f"center of n({n}) has unexpected dimension")
    return L, G, lay


def measured_dims(n: int) -> dict:
    """Dimensions recomputed from the algebra itself.

    ``d2_0`` and ``d2_1`` use one candidate reading: the codimension of
    ``n_2 ∩ [n,n]`` in ``n_2`` and the dimension of its non-central part.
    """
    L, G, lay = build(n, check=False)
    Z = center(L)
    N = L.n
    layer2 = Subspace.coordinate(N, lay.indices(lay.layer2))
    d2_der = layer2.intersect(derived_algebra(L))
    return {
        "d1": len(lay.layer1),
        "d2": len(lay.layer2),
        "d3": len(lay.layer3),
        "z": Z.dim,
        "z2": Z.intersect(layer2).dim,
        "d2_0": layer2.dim - d2_der.dim,
        "d2_1": d2_der.dim - d2_der.intersect(Z).dim,
    }


def wedge_matrix(P: Sequence[Sequence]) -> list[list[Fraction]]:
    """Matrix of the induced map on the span of ei^ej (rows = images, lexicographic)."""
    n = len(P)
    pairs = list(combinations(range(n), 2))
    out = []
    for i, j in pairs:
        # (sum_k P_ik e_k) ^ (sum_l P_jl e_l)
        out.append([Fraction(P[i][k]) * P[j][l] - Fraction(P[i][l]) * P[j][k] for k, l in pairs])
    return out


def rebase_matrix(n: int, P: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis change of the whole algebra induced by ``e'_i = sum_k P[i][k] e_k``.

    x'_i = [e'_i, x], u'_i, y'_i likewise, and e'_i ^ e'_j = [e'_i, e'_j];
    every other basis vector is kept.
    """
    if len(P) != n or any(len(r) != n for r in P):
        raise InputError(f"P must be {n}x{n}")
    inverse(P)  # singular P raises
    lay = FamilyLayout(n)
    N = lay.dim
    Q = [[Fraction(int(i == j)) for j in range(N)] for i in range(N)]
    blocks = [(lay.E, P), (lay.X, P), (lay.U, P), (lay.Y, P)]
    if n >= 2:
        blocks.append((lay.wedges, wedge_matrix(P)))
    for labels, M in blocks:
        idx = lay.indices(labels)
        for r, i in enumerate(idx):
            for s, j in enumerate(idx):
                Q[i][j] = Fraction(M[r][s])
    return Q


def rebase_check(n: int, P: Sequence[Sequence]) -> bool:
    """True iff the bracket table in the rebased basis equals that of n(n)."""
    L = structure(n)
    return change_basis(L, rebase_matrix(n, P)) == L


# weights of the non-E part: a, b, x -> 1; u, y, c -> 2; f, h -> 3
_S_WEIGHTS = {"a": 1, "b": 1, "x": 1, "u": 2, "y": 2, "c": 2, "f": 3, "h": 3}


def fine_weights(n: int) -> tuple[dict[str, int], list[int]]:
    """Weights of the fine grading and the super-increasing sequence t_i."""
    if n < 1:
        raise InputError("n must be >= 1")
    w = dict(_S_WEIGHTS)
    total = sum(w.values())
    ts: list[int] = []
    for i in range(1, n + 1):
        t = total + 1
        ts.append(t)
        new = {f"e{i}": t, f"x{i}": t + 1, f"u{i}": t + 2, f"y{i}": t + 2}
        for j in range(1, i):
            new[wedge(j, i)] = ts[j - 1] + t
        w.update(new)
        total += sum(new.values())
    return w, ts


def fine_grading(n: int) -> Grading:
    w, _ = fine_weights(n)
    lay = FamilyLayout(n)
    return Grading(1, {lab: (w[lab],) for lab in lay.labels})
