"""Exact integer polynomials: sparse multivariate and dense univariate.

A :class:`MultiPoly` maps exponent tuples to nonzero Python ints. A
:class:`DensePoly` is a coefficient tuple indexed by degree. Factor lists
describe products ``prod (1 - x^alpha)^m`` and are expanded either through
the generic sparse route or, in one variable, through the dense kernels in
:mod:`gnl.kernels`.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from gnl import kernels
from gnl._bigint import dec, parse
from gnl.errors import CapacityError, InputError

DEFAULT_MAX_TERMS = 1 << 24

ExpVec = tuple[int, ...]
FactorList = list[tuple[ExpVec, int]]


def max_terms() -> int:
    """Term-count capacity, overridable with ``GNL_MAX_TERMS``."""
    raw = os.environ.get("GNL_MAX_TERMS")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise InputError(f"GNL_MAX_TERMS must be an integer, got {raw!r}") from None
    return DEFAULT_MAX_TERMS


class MultiPoly:
    """Sparse polynomial in ``d`` variables with integer coefficients."""

    __slots__ = ("d", "terms")

    def __init__(self, d: int, terms: Mapping[Sequence[int], int] | None = None):
        if d < 1:
            raise InputError("a polynomial needs at least one variable")
        clean: dict[ExpVec, int] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(v) for v in e)
            if len(e) != d:
                raise InputError(f"exponent {e} does not have {d} entries")
            if any(v < 0 for v in e):
                raise InputError(f"negative exponent in {e}")
            c = int(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self.d = d
        self.terms = clean

    @classmethod
    def _raw(cls, d: int, terms: dict[ExpVec, int]) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj.d = d
        obj.terms = terms
        return obj

    @classmethod
    def one(cls, d: int) -> "MultiPoly":
        return cls._raw(d, {(0,) * d: 1})

    @classmethod
    def from_dense(cls, coeffs: Iterable[int]) -> "MultiPoly":
        return cls._raw(1, {(i,): c for i, c in enumerate(coeffs) if c})

    def to_dense(self) -> "DensePoly":
        if self.d != 1:
            raise InputError("only univariate polynomials have a dense form")
        if not self.terms:
            return DensePoly(())
        top = max(e[0] for e in self.terms)
        coeffs = [0] * (top + 1)
        for (i,), c in self.terms.items():
            coeffs[i] = c
        return DensePoly(tuple(coeffs))

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, e: Sequence[int]) -> int:
        return self.terms.get(tuple(e), 0)

    def degree_vector(self) -> ExpVec:
        """Coordinatewise maximum exponent over the support."""
        if not self.terms:
            return (0,) * self.d
        return tuple(max(col) for col in zip(*self.terms))

    def sorted_terms(self) -> list[tuple[ExpVec, int]]:
        return sorted(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.d == other.d and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.d, frozenset(self.terms.items())))

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        return mul(self, other)

    def __repr__(self) -> str:
        if not self.terms:
            return f"MultiPoly(d={self.d}, 0)"
        shown = " + ".join(f"{c}*x^{e}" for e, c in self.sorted_terms()[:6])
        more = " + ..." if len(self.terms) > 6 else ""
        return f"MultiPoly(d={self.d}, {shown}{more})"

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "terms": [{"e": list(e), "c": dec(c)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "MultiPoly":
        try:
            d = int(obj["d"])
            terms: dict[ExpVec, int] = {}
            for t in obj["terms"]:
                e = tuple(int(v) for v in t["e"])
                if e in terms:
                    raise InputError(f"duplicate exponent {list(e)}")
                terms[e] = parse(t["c"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed polynomial JSON: {exc}") from None
        return cls(d, terms)


@dataclass(frozen=True)
class DensePoly:
    """Univariate polynomial stored as coefficients ``coeffs[k]`` of ``x^k``."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.coeffs and self.coeffs[-1] == 0:
            object.__setattr__(self, "coeffs", tuple(kernels.trim(self.coeffs)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def length(self) -> int:
        return kernels.l1_norm(self.coeffs)

    def __mul__(self, other: "DensePoly") -> "DensePoly":
        return DensePoly(tuple(kernels.mul_dense(self.coeffs, other.coeffs)))

    def to_multi(self) -> MultiPoly:
        return MultiPoly.from_dense(self.coeffs)


def check_factors(factors: Iterable[tuple[Sequence[int], int]]) -> FactorList:
    """Normalize and validate a factor list; all exponents must share one length."""
    out: FactorList = []
    d = None
    for alpha, m in factors:
        alpha = tuple(int(v) for v in alpha)
        m = int(m)
        if not alpha or any(v < 0 for v in alpha) or not any(alpha):
            raise InputError(f"factor exponent {list(alpha)} must be nonzero and non-negative")
        if m < 1:
            raise InputError(f"factor multiplicity must be >= 1, got {m}")
        if d is None:
            d = len(alpha)
        elif len(alpha) != d:
            raise InputError("factor exponents have different lengths")
        out.append((alpha, m))
    return out


def factors_to_json(factors: FactorList) -> dict:
    return {"factors": [{"e": list(a), "m": m} for a, m in factors]}


def factors_from_json(obj: Mapping) -> FactorList:
    try:
        return check_factors((f["e"], f["m"]) for f in obj["factors"])
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed factor list JSON: {exc}") from None


def binomial_pow(alpha: Sequence[int], m: int) -> MultiPoly:
    """Expand ``(1 - x^alpha)^m`` directly from signed binomial coefficients."""
    ((alpha, m),) = check_factors([(alpha, m)])
    terms = {}
    c = 1
    for k in range(m + 1):
        terms[tuple(k * a for a in alpha)] = -c if k & 1 else c
        c = c * (m - k) // (k + 1)
    return MultiPoly._raw(len(alpha), terms)


def mul(p: MultiPoly, q: MultiPoly, limit: int | None = None) -> MultiPoly:
    """Exact product; raises :class:`CapacityError` past ``limit`` terms."""
    if p.d != q.d:
        raise InputError(f"variable counts differ: {p.d} vs {q.d}")
    limit = max_terms() if limit is None else limit
    if len(p) < len(q):
        p, q = q, p
    out: dict[ExpVec, int] = {}
    get = out.get
    if p.d == 1:
        for (i,), a in p.terms.items():
            for (j,), b in q.terms.items():
                k = (i + j,)
                out[k] = get(k, 0) + a * b
            if len(out) > limit:
                raise CapacityError(f"product exceeds {limit} terms")
    else:
        for e, a in p.terms.items():
            for f, b in q.terms.items():
                k = tuple(x + y for x, y in zip(e, f))
                out[k] = get(k, 0) + a * b
            if len(out) > limit:
                raise CapacityError(f"product exceeds {limit} terms")
    return MultiPoly._raw(p.d, {e: c for e, c in out.items() if c})


def expand(factors: Iterable[tuple[Sequence[int], int]], method: str = "auto",
           limit: int | None = None) -> MultiPoly:
    """Expand ``prod (1 - x^alpha)^m``.

    ``method="sparse"`` multiplies binomial powers term by term in any number
    of variables; ``"dense"`` (univariate only) runs the dense kernels.
    ``"auto"`` picks dense for one variable.
    """
    factors = check_factors(factors)
    if not factors:
        raise InputError("empty factor list: variable count is undefined")
    d = len(factors[0][0])
    if method == "auto":
        method = "dense" if d == 1 else "sparse"
    if method == "dense":
        if d != 1:
            raise InputError("dense expansion needs one variable")
        return expand_dense(factors, limit).to_multi()
    if method != "sparse":
        raise InputError(f"unknown expansion method {method!r}")
    out = MultiPoly.one(d)
    for alpha, m in factors:
        out = mul(out, binomial_pow(alpha, m), limit)
    return out


def expand_dense(factors: Iterable[tuple[Sequence[int], int]],
                 limit: int | None = None) -> DensePoly:
    factors = check_factors(factors)
    if any(len(a) != 1 for a, _ in factors):
        raise InputError("dense expansion needs one variable")
    limit = max_terms() if limit is None else limit
    total = sum(a[0] * m for a, m in factors)
    if total + 1 > limit:
        raise CapacityError(f"dense expansion would have degree {total} (limit {limit})")
    if not factors:
        return DensePoly((1,))
    # start from the factor with the largest multiplicity: its binomial row
    # is built directly instead of by m passes
    order = sorted(factors, key=lambda f: f[1], reverse=True)
    (k0,), m0 = order[0]
    coeffs = [0] * (k0 * m0 + 1)
    c = 1
    for j in range(m0 + 1):
        coeffs[j * k0] = -c if j & 1 else c
        c = c * (m0 - j) // (j + 1)
    for (k,), m in order[1:]:
        coeffs = kernels.mul_one_minus_power(coeffs, k, m)
    return DensePoly(tuple(coeffs))


def length(p: MultiPoly | DensePoly) -> int:
    """Sum of the absolute values of the coefficients."""
    if isinstance(p, DensePoly):
        return p.length()
    return sum(abs(c) for c in p.terms.values())


def substitute_last(p: MultiPoly, m: int) -> MultiPoly:
    """Replace the last variable by ``x_1^m``; colliding terms are summed."""
    if p.d < 2:
        raise InputError("substitution needs at least two variables")
    if m < 1:
        raise InputError(f"substitution exponent must be >= 1, got {m}")
    out: dict[ExpVec, int] = {}
    for e, c in p.terms.items():
        k = (e[0] + m * e[-1],) + e[1:-1]
        out[k] = out.get(k, 0) + c
    return MultiPoly._raw(p.d - 1, {e: c for e, c in out.items() if c})


def substitute_factors(factors: FactorList, m: int) -> FactorList:
    """Apply ``x_d -> x_1^m`` to every factor exponent."""
    return [((a[0] + m * a[-1],) + a[1:-1], k) for a, k in check_factors(factors)]


def staircase_length(factors: Iterable[tuple[Sequence[int], int]],
                     limit: int | None = None) -> int:
    """Length of a univariate factor product without expanding every factor.

    A factor ``(1 - x^T)^k`` with ``T`` above the degree of everything
    multiplied so far lands on disjoint shifted copies, so it multiplies the
    length by ``2^k``. Such factors are kept pending and only expanded when a
    later, smaller-gap factor forces the full product.
    """
    factors = check_factors(factors)
    if any(len(a) != 1 for a, _ in factors):
        raise InputError("staircase length needs one variable")
    acc = [1]
    pending: list[tuple[int, int]] = []
    degree = 0
    for (t,), k in sorted(factors):
        if t > degree:
            pending.append((t, k))
        else:
            for pt, pk in pending:
                acc = kernels.mul_one_minus_power(acc, pt, pk)
            pending = []
            limit_ = max_terms() if limit is None else limit
            if degree + t * k + 1 > limit_:
                raise CapacityError(f"staircase fallback degree {degree + t * k} exceeds {limit_}")
            acc = kernels.mul_one_minus_power(acc, t, k)
        degree += t * k
    return kernels.l1_norm(acc) << sum(k for _, k in pending)
