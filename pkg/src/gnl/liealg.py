"""Lie algebras given by exact structure constants over a labeled basis."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Mapping, Sequence

from gnl.errors import InputError, NotNilpotentError
from gnl.linalg import Subspace, inverse, kernel, nullspace_vectors

Vec = dict[int, Fraction]


def parse_rational(s) -> Fraction:
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    try:
        return Fraction(str(s).strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a rational number: {s!r}") from None


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class StructureConstants:
    """Brackets ``[b_i, b_j]`` for ``i < j`` stored as sparse coefficient vectors.

    ``brackets`` may be keyed by label or index pairs in either orientation;
    a pair given both ways must agree up to sign.
    """

    def __init__(self, labels: Sequence[str], brackets: Mapping | None = None):
        labels = [str(x) for x in labels]
        if len(set(labels)) != len(labels):
            raise InputError("basis labels must be unique")
        self.labels = tuple(labels)
        self._index = {lab: i for i, lab in enumerate(labels)}
        table: dict[tuple[int, int], Vec] = {}
        for (i, j), vec in (brackets or {}).items():
            i, j = self.index(i), self.index(j)
            v = {self.index(k): parse_rational(c) for k, c in dict(vec).items()}
            v = {k: c for k, c in v.items() if c}
            if i == j:
                if v:
                    raise InputError(f"[{labels[i]},{labels[i]}] must be zero")
                continue
            if i > j:
                i, j = j, i
                v = {k: -c for k, c in v.items()}
            if (i, j) in table and table[(i, j)] != v:
                raise InputError(f"inconsistent duplicate bracket for ({labels[i]}, {labels[j]})")
            if v:
                table[(i, j)] = v
        self.table = table

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, key) -> int:
        if isinstance(key, int) and not isinstance(key, bool):
            if 0 <= key < self.n:
                return key
            raise InputError(f"basis index {key} out of range")
        try:
            return self._index[key]
        except KeyError:
            raise InputError(f"unknown basis label {key!r}") from None

    def bracket_basis(self, i: int, j: int) -> Vec:
        """``[b_i, b_j]`` as a sparse vector (a fresh dict)."""
        if i < j:
            return dict(self.table.get((i, j), {}))
        if i > j:
            return {k: -c for k, c in self.table.get((j, i), {}).items()}
        return {}

    def bracket_sparse(self, v: Mapping[int, Fraction], w: Mapping[int, Fraction]) -> Vec:
        out: Vec = {}
        for i, a in v.items():
            if not a:
                continue
            for j, b in w.items():
                if not b or i == j:
                    continue
                for k, c in self.bracket_basis(i, j).items():
                    out[k] = out.get(k, 0) + a * b * c
        return {k: c for k, c in out.items() if c}

    def bracket(self, v: Sequence, w: Sequence) -> list[Fraction]:
        """Bilinear extension of the table to coordinate vectors."""
        if len(v) != self.n or len(w) != self.n:
            raise InputError(f"vectors must have length {self.n}")
        res = self.bracket_sparse(_sparse(v), _sparse(w))
        return _dense(res, self.n)

    def basis_vector(self, key) -> list[Fraction]:
        v = [Fraction(0)] * self.n
        v[self.index(key)] = Fraction(1)
        return v

    def is_abelian(self) -> bool:
        return not self.table

    def __eq__(self, other) -> bool:
        if not isinstance(other, StructureConstants):
            return NotImplemented
        return self.labels == other.labels and self.table == other.table

    def __repr__(self):
        return f"StructureConstants(dim={self.n}, nonzero brackets={len(self.table)})"

    def to_json(self) -> dict:
        brackets = []
        for (i, j), v in sorted(self.table.items()):
            brackets.append({
                "i": self.labels[i],
                "j": self.labels[j],
                "terms": [{"k": self.labels[k], "c": format_rational(c)} for k, c in sorted(v.items())],
            })
        return {"dim": self.n, "basis": list(self.labels), "brackets": brackets}

    @classmethod
    def from_json(cls, obj: Mapping) -> "StructureConstants":
        try:
            basis = list(obj["basis"])
            if "dim" in obj and int(obj["dim"]) != len(basis):
                raise InputError(f"dim {obj['dim']} does not match {len(basis)} basis labels")
            raw: dict = {}
            for entry in obj.get("brackets", []):
                key = (entry["i"], entry["j"])
                vec: dict = {}
                for t in entry["terms"]:
                    vec[t["k"]] = vec.get(t["k"], 0) + parse_rational(t["c"])
                if key in raw and raw[key] != vec:
                    raise InputError(f"inconsistent duplicate bracket for {key}")
                rev = (key[1], key[0])
                if rev in raw and raw[rev] != {k: -c for k, c in vec.items()}:
                    raise InputError(f"inconsistent duplicate bracket for {key}")
                raw[key] = vec
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed algebra JSON: missing or bad field {exc}") from None
        return cls(basis, raw)

    @classmethod
    def load(cls, path) -> "StructureConstants":
        return cls.from_json(_read_json(path))


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _sparse(v: Sequence) -> Vec:
    return {i: Fraction(c) for i, c in enumerate(v) if c}


def _dense(v: Mapping[int, Fraction], n: int) -> list[Fraction]:
    out = [Fraction(0)] * n
    for i, c in v.items():
        out[i] = c
    return out


# -- standard small algebras ------------------------------------------------

def abelian(n: int) -> StructureConstants:
    return StructureConstants([f"e{i + 1}" for i in range(n)])


def heisenberg(m: int) -> StructureConstants:
    """The (2m+1)-dimensional Heisenberg algebra, ``[p_i, q_i] = z``."""
    labels = [f"p{i + 1}" for i in range(m)] + [f"q{i + 1}" for i in range(m)] + ["z"]
    return StructureConstants(labels, {(f"p{i + 1}", f"q{i + 1}"): {"z": 1} for i in range(m)})


# -- structural checks ------------------------------------------------------

def check_jacobi(L: StructureConstants) -> list[tuple[int, int, int]]:
    """Triples ``i < j < k`` where the Jacobi sum is nonzero.

    For sorted ``(p, q, r)`` the sum is ``[[p,q],r] + [[q,r],p] - [[p,r],q]``,
    so each nonzero stored bracket ``[b_i, b_j]`` contributes ``[[b_i,b_j],b_k]``
    with sign -1 exactly when ``k`` lies between ``i`` and ``j``.
    """
    acc: dict[tuple[int, int, int], Vec] = {}
    for (i, j), v in L.table.items():
        for k in range(L.n):
            if k == i or k == j:
                continue
            w = L.bracket_sparse(v, {k: Fraction(1)})
            if not w:
                continue
            sign = -1 if i < k < j else 1
            key = tuple(sorted((i, j, k)))
            slot = acc.setdefault(key, {})
            for t, c in w.items():
                slot[t] = slot.get(t, 0) + sign * c
    return sorted(key for key, v in acc.items() if any(v.values()))


def ad_equations(L: StructureConstants) -> list[dict[int, Fraction]]:
    """Linear equations in v whose solutions are the central vectors."""
    rows: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (i, j), vec in L.table.items():
        for k, c in vec.items():
            # [v, b_j] gets v_i c^k_{ij}; [v, b_i] gets -v_j c^k_{ij}
            rows.setdefault((j, k), {})[i] = rows.get((j, k), {}).get(i, 0) + c
            rows.setdefault((i, k), {})[j] = rows.get((i, k), {}).get(j, 0) - c
    return list(rows.values())


def center(L: StructureConstants) -> Subspace:
    return kernel(ad_equations(L), L.n)


def bracket_spaces(L: StructureConstants, U: Subspace, V: Subspace) -> Subspace:
    vecs = []
    for u in U.rows:
        su = _sparse(u)
        for v in V.rows:
            w = L.bracket_sparse(su, _sparse(v))
            if w:
                vecs.append(w)
    return Subspace(L.n, vecs)


def whole(L: StructureConstants) -> Subspace:
    return Subspace.coordinate(L.n, range(L.n))


def derived_algebra(L: StructureConstants) -> Subspace:
    return Subspace(L.n, [v for v in L.table.values()])


def lower_central_series(L: StructureConstants) -> tuple[list[Subspace], int]:
    """``[C^1, C^2, ...]`` down to the first zero term, and the nilpotency class.

    Raises :class:`NotNilpotentError` when the series stabilises above zero.
    """
    full = whole(L)
    series = [full]
    current = full
    while current.dim:
        nxt = bracket_spaces(L, full, current) if current is not full else derived_algebra(L)
        if nxt.dim == current.dim:
            raise NotNilpotentError(f"lower central series stabilises at dimension {nxt.dim}")
        series.append(nxt)
        current = nxt
    return series, len(series) - 1


def change_basis(L: StructureConstants, P: Sequence[Sequence], labels: Sequence[str] | None = None
                 ) -> StructureConstants:
    """Structure constants in the basis whose i-th vector is row i of ``P``."""
    n = L.n
    if len(P) != n or any(len(r) != n for r in P):
        raise InputError(f"change of basis must be {n}x{n}")
    Pinv = inverse(P)  # raises on singular P
    rows = [_sparse(r) for r in P]
    table = {}
    for i in range(n):
        for j in range(i + 1, n):
            w = L.bracket_sparse(rows[i], rows[j])
            if not w:
                continue
            # new coordinates x solve x P = w, i.e. x = w P^{-1}
            x = {}
            for k, c in w.items():
                for t, q in enumerate(Pinv[k]):
                    if q:
                        x[t] = x.get(t, 0) + c * q
            x = {t: c for t, c in x.items() if c}
            if x:
                table[(i, j)] = x
    return StructureConstants(labels or L.labels, table)


def map_subspace(S: Subspace, P: Sequence[Sequence]) -> Subspace:
    """Express a subspace given in new-basis coordinates in old coordinates."""
    vecs = []
    for r in S.rows:
        vecs.append([sum((r[i] * P[i][j] for i in range(S.n) if r[i]), Fraction(0))
                     for j in range(S.n)])
    return Subspace(S.n, vecs)


__all__ = [
    "StructureConstants", "abelian", "heisenberg", "check_jacobi", "center",
    "lower_central_series", "derived_algebra", "bracket_spaces", "change_basis",
    "kernel", "nullspace_vectors", "map_subspace", "parse_rational", "format_rational",
]
