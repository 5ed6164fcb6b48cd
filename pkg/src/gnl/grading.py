"""Basis-aligned gradings, their associated polynomials and the collapse to one variable."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence

from gnl import bigpoly
from gnl.bigpoly import FactorList, MultiPoly
from gnl.errors import GnlError, InputError
from gnl.liealg import StructureConstants, _read_json


@dataclass
class Grading:
    """Degree vector in Z_+^d (nonzero, non-negative) for every basis label."""

    d: int
    degree: dict[str, tuple[int, ...]]

    def __post_init__(self):
        if self.d < 1:
            raise InputError("grading needs d >= 1")
        clean = {}
        for label, vec in self.degree.items():
            vec = tuple(int(v) for v in vec)
            if len(vec) != self.d:
                raise InputError(f"degree of {label!r} has {len(vec)} entries, expected {self.d}")
            if any(v < 0 for v in vec) or not any(vec):
                raise InputError(f"degree of {label!r} must be nonzero and non-negative, got {list(vec)}")
            clean[str(label)] = vec
        self.degree = clean

    def dims(self) -> Counter:
        """``alpha -> d_alpha``."""
        return Counter(self.degree.values())

    def factors(self) -> FactorList:
        return sorted(self.dims().items())

    def reorder(self, perm: Sequence[int]) -> "Grading":
        """New grading whose variable ``i`` is old variable ``perm[i]``."""
        if sorted(perm) != list(range(self.d)):
            raise InputError(f"{list(perm)} is not a permutation of 0..{self.d - 1}")
        return Grading(self.d, {k: tuple(v[p] for p in perm) for k, v in self.degree.items()})

    def to_json(self) -> dict:
        return {"d": self.d, "degrees": {k: list(v) for k, v in self.degree.items()}}

    @classmethod
    def from_json(cls, obj: Mapping) -> "Grading":
        try:
            return cls(int(obj["d"]), {k: tuple(v) for k, v in obj["degrees"].items()})
        except (KeyError, TypeError, AttributeError) as exc:
            raise InputError(f"malformed grading JSON: {exc}") from None

    @classmethod
    def load(cls, path) -> "Grading":
        return cls.from_json(_read_json(path))

    @classmethod
    def univariate(cls, weights: Mapping[str, int]) -> "Grading":
        return cls(1, {k: (w,) for k, w in weights.items()})


def _check_labels(L: StructureConstants, G: Grading) -> None:
    missing = [lab for lab in L.labels if lab not in G.degree]
    extra = [lab for lab in G.degree if lab not in L._index]
    if extra:
        raise InputError(f"grading mentions unknown labels: {extra}")
    if missing:
        raise InputError(f"grading misses labels: {missing}")


def validate(L: StructureConstants, G: Grading) -> list[tuple[str, str, str]]:
    """Triples (i, j, k) where [b_i, b_j] has a b_k component of the wrong degree."""
    _check_labels(L, G)
    bad = []
    deg = [G.degree[lab] for lab in L.labels]
    for (i, j), vec in sorted(L.table.items()):
        want = tuple(x + y for x, y in zip(deg[i], deg[j]))
        for k in sorted(vec):
            if deg[k] != want:
                bad.append((L.labels[i], L.labels[j], L.labels[k]))
    return bad


def require_valid(L: StructureConstants, G: Grading) -> None:
    bad = validate(L, G)
    if bad:
        i, j, k = bad[0]
        raise InputError(f"not a grading: [{i},{j}] has a {k} component of the wrong degree "
                         f"({len(bad)} violation(s))")


def associated_polynomial(L: StructureConstants, G: Grading, limit: int | None = None) -> MultiPoly:
    require_valid(L, G)
    return bigpoly.expand(G.factors(), limit=limit)


def associated_length(L: StructureConstants, G: Grading, limit: int | None = None) -> int:
    """Length of the associated polynomial; univariate gradings avoid full expansion."""
    require_valid(L, G)
    if G.d == 1:
        return bigpoly.staircase_length(G.factors(), limit)
    return bigpoly.length(bigpoly.expand(G.factors(), limit=limit))


def min_safe_m(p: MultiPoly) -> int:
    """Smallest m strictly above every x_1 exponent in the support."""
    if p.d < 2:
        raise InputError("min_safe_m needs at least two variables")
    return 1 + max((e[0] for e in p.terms), default=0)


def degree_bound_m(G: Grading) -> int:
    """``1 + sum d_alpha * alpha_1``: exceeds deg_{x_1} p without expanding it."""
    return 1 + sum(v[0] for v in G.degree.values())


@dataclass
class Collapse:
    grading: Grading
    m: int
    warning: str | None = None


def collapse_map(vec: tuple[int, ...], m: int) -> tuple[int, ...]:
    return (vec[0] + m * vec[-1],) + vec[1:-1]


def collapse_once(L: StructureConstants, G: Grading, strategy: str | int = "minimal",
                  limit: int | None = None) -> Collapse:
    """Merge the last variable into the first with ``x_d -> x_1^m``.

    ``strategy`` is ``"minimal"`` (expand p, take :func:`min_safe_m`),
    ``"degree_bound"`` (no expansion) or an explicit positive integer m.
    Explicit values below the safe bound are allowed but flagged, since the
    length can then drop.
    """
    if G.d < 2:
        raise InputError("collapse needs at least two variables")
    require_valid(L, G)
    warning = None
    if strategy == "minimal":
        m = min_safe_m(bigpoly.expand(G.factors(), limit=limit))
    elif strategy == "degree_bound":
        m = degree_bound_m(G)
    elif isinstance(strategy, int) and not isinstance(strategy, bool):
        m = strategy
        if m < 1:
            raise InputError(f"collapse exponent must be >= 1, got {m}")
        safe = min_safe_m(bigpoly.expand(G.factors(), limit=limit))
        if m < safe:
            warning = f"m={m} is below the safe bound {safe}; the length may drop"
    else:
        raise InputError(f"unknown collapse strategy {strategy!r}")
    new = Grading(G.d - 1, {k: collapse_map(v, m) for k, v in G.degree.items()})
    return Collapse(new, m, warning)


def collapse_to_line(L: StructureConstants, G: Grading, limit: int | None = None
                     ) -> tuple[Grading, list[int]]:
    """Collapse variables one at a time until a single variable remains.

    The length of the associated polynomial is recomputed at the end and
    must equal the original.
    """
    require_valid(L, G)
    if G.d == 1:
        return G, []
    before = bigpoly.length(bigpoly.expand(G.factors(), limit=limit))
    ms = []
    current = G
    while current.d > 1:
        step = collapse_once(L, current, "minimal", limit)
        current = step.grading
        ms.append(step.m)
    after = associated_length(L, current, limit)
    if after != before:
        raise GnlError(f"collapse changed the length: {before} -> {after}")
    return current, ms
