"""Exact integer checks of the length inequalities for the family n(n).

All statements with powers of two in a denominator are checked in integer
form: ``L(q / 2^k) < c`` is the same as ``L(q) < c * 2^k`` because the length
is absolutely homogeneous. Nothing here divides.

    trc3(n):   L((1-x)^(n+3) (1-x^2)^(n(n+1)/2+3) (1-x^3)^(2n+2)) < 2^((n+4)(n+1)/2)
    pn(n):     L((1-x)^n (1-x^2)^(2n) (1-x^3)^(2n)) < 2^(4n-1)
    tail:      2 * L((1-x)^3 (1-x^3)^2) <= 64
    induction: P(a+b) = P(a) P(b) and L(P(n)) <= L(P(30))^5 L(P(n-150)) < 2^(4n-6)
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

from gnl import __version__, kernels
from gnl._bigint import dec, parse
from gnl.bigpoly import DensePoly, expand_dense, length
from gnl.errors import CapacityError, InputError
from gnl.family import dims, fine_grading, structure
from gnl.grading import associated_polynomial

FINE_MAX_N = 3

STATEMENTS = {
    "trc3": "L((1-x)^(n+3)(1-x^2)^(n(n+1)/2+3)(1-x^3)^(2n+2)) < 2^((n+4)(n+1)/2)",
    "pn": "L((1-x)^n(1-x^2)^(2n)(1-x^3)^(2n)) < 2^(4n-1)",
    "tail": "2*L((1-x)^3(1-x^3)^2) <= 64",
    "induction": "P_n = P_b^5 P_(n-5b) and L(P_n) <= L(P_b)^5 L(P_(n-5b)) < 2^(4n-6), b = 30 and reduction down to n <= 180 by default",
    "fine": "L(fine grading polynomial of n(n)) > 2^dim z",
}


@dataclass
class SweepVerdict:
    n: int
    length: int
    bound: int
    holds: bool
    elapsed: float = 0.0

    def to_json(self) -> dict:
        return {"n": self.n, "holds": self.holds, "length": dec(self.length),
                "bound": dec(self.bound), "elapsed": round(self.elapsed, 6)}

    @classmethod
    def from_json(cls, obj) -> "SweepVerdict":
        return cls(int(obj["n"]), parse(obj["length"]), parse(obj["bound"]), bool(obj["holds"]),
                   float(obj.get("elapsed", 0.0)))


@dataclass
class Verdict:
    """Outcome of a one-off check with its supporting values."""

    claim: str
    holds: bool
    values: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        vals = {k: (dec(v) if isinstance(v, int) and not isinstance(v, bool) else v)
                for k, v in self.values.items()}
        return {"claim": self.claim, "statement": STATEMENTS.get(self.claim, ""),
                "holds": self.holds, "values": vals, "pass": self.holds}


def three_part_exponents(n: int) -> tuple[int, int, int]:
    d = dims(n)
    return d.d1, d.d2, d.d3


def three_part_polynomial(n: int) -> DensePoly:
    if n < 1:
        raise InputError("n must be >= 1")
    a, b, c = three_part_exponents(n)
    return expand_dense([((1,), a), ((2,), b), ((3,), c)])


def pn_polynomial(n: int) -> DensePoly:
    """Integer numerator (1-x)^n (1-x^2)^(2n) (1-x^3)^(2n)."""
    if n < 1:
        raise InputError("n must be >= 1")
    return expand_dense([((1,), n), ((2,), 2 * n), ((3,), 2 * n)])


def check_trc3(n: int) -> SweepVerdict:
    t0 = time.perf_counter()
    ell = three_part_polynomial(n).length()
    bound = 1 << dims(n).z
    return SweepVerdict(n, ell, bound, ell < bound, time.perf_counter() - t0)


def check_pn(n: int) -> SweepVerdict:
    t0 = time.perf_counter()
    ell = pn_polynomial(n).length()
    bound = 1 << (4 * n - 1)
    return SweepVerdict(n, ell, bound, ell < bound, time.perf_counter() - t0)


def check_tail_constant() -> Verdict:
    value = 2 * expand_dense([((1,), 3), ((3,), 2)]).length()
    # the middle factor (1-x^2)^k has length exactly 2^k, so it normalizes to 1
    middle_ok = all(expand_dense([((2,), k)]).length() == 1 << k for k in range(1, 64))
    return Verdict("tail", value <= 64 and middle_ok,
                   {"value": value, "bound": 64, "middle_factor_normalized_length_is_1": middle_ok})


def check_factorization(n: int) -> Verdict:
    """The rearrangement of the trc3 polynomial into the pn part, the middle
    factor and the tail, with the matching powers of two."""
    a, b, c = three_part_exponents(n)
    mid = n * (n - 3) // 2 + 3
    lhs = three_part_polynomial(n)
    rhs = pn_polynomial(n) * expand_dense([((2,), mid)]) * expand_dense([((1,), 3), ((3,), 2)])
    powers = 4 * n + mid - 1 == dims(n).z
    return Verdict("factorization", lhs == rhs and powers,
                   {"n": n, "identity": lhs == rhs, "powers_of_two": powers, "middle_exponent": mid})


def check_induction_chain(n: int, block: int = 30, floor: int = 180) -> Verdict:
    """Check the chain L(p_n) <= L(p_b)^5 L(p_(n-5b)) <= (1/2)^6 in integer form.

    n is reduced by 5b until it lands at or below ``floor``. Each link checks the
    factor identity P_k = P_b^5 P_(k-5b), submultiplicativity, and that the
    middle expression is below 2^(4k-6); the premises L(P_b) < 2^(4b-1) and
    L(P_base) < 2^(4 base - 1) are checked exactly as well. The direct value
    L(P_n) < 2^(4n-6) is reported separately.
    """
    if n <= floor:
        raise InputError(f"the induction step applies to n > {floor}")
    if block < 1:
        raise InputError("block must be >= 1")
    step = 5 * block
    pb = pn_polynomial(block)
    lb = pb.length()
    pb5 = pb * pb * pb * pb * pb
    chain = []
    k = n
    while k > floor:
        chain.append(k)
        k -= step
    base = k
    if base < 1:
        raise InputError(f"n={n} reduces below 1 with block {block}")
    block_ok = lb < 1 << (4 * block - 1)
    base_ok = pn_polynomial(base).length() < 1 << (4 * base - 1)
    identities = submult = links = True
    for k in chain:
        pk = pn_polynomial(k)
        lower = pn_polynomial(k - step)
        identities &= pb5 * lower == pk
        middle = lb ** 5 * lower.length()
        submult &= pk.length() <= middle
        links &= middle < 1 << (4 * k - 6)
    direct = pn_polynomial(n).length()
    chain_ok = block_ok and base_ok and links
    values = {
        "n": n, "block": block, "floor": floor, "chain": chain, "base": base,
        "identities": identities,
        "submultiplicative": submult,
        "block_below_half": block_ok,
        "base_below_half": base_ok,
        "links_below_2^(4k-6)": links,
        "chain_holds": chain_ok,
        "length": direct,
        "target": 1 << (4 * n - 6),
        "direct_below_target": direct < 1 << (4 * n - 6),
    }
    return Verdict("induction", identities and submult and chain_ok, values)


def check_fine_exceeds(n: int, max_n: int = FINE_MAX_N) -> Verdict:
    if n > max_n:
        raise CapacityError(f"n={n}: not verified at this scale (limit n <= {max_n})")
    p = associated_polynomial(structure(n), fine_grading(n))
    ell = length(p)
    bound = 1 << dims(n).z
    return Verdict("fine", ell > bound, {"n": n, "length": ell, "bound": bound, "terms": len(p)})


# -- sweeps -----------------------------------------------------------------

CHECKS: dict[str, Callable[[int], SweepVerdict]] = {"trc3": check_trc3, "pn": check_pn}


@dataclass
class Report:
    claim: str
    ns: list[int]
    verdicts: list[SweepVerdict]
    version: str = __version__

    @property
    def passed(self) -> bool:
        return all(v.holds for v in self.verdicts) and len(self.verdicts) == len(self.ns)

    def to_json(self) -> dict:
        contiguous = self.ns == list(range(min(self.ns), max(self.ns) + 1)) if self.ns else True
        out = {
            "tool": "gnl",
            "version": self.version,
            "claim": self.claim,
            "statement": STATEMENTS[self.claim],
            "range": [min(self.ns), max(self.ns)] if self.ns else [],
            "verdicts": [v.to_json() for v in sorted(self.verdicts, key=lambda v: v.n)],
            "pass": self.passed,
        }
        if not contiguous:
            out["ns"] = list(self.ns)
        return out


def _load_checkpoint(path) -> dict[int, SweepVerdict]:
    done = {}
    if path and os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    v = SweepVerdict.from_json(json.loads(line))
                    done[v.n] = v
    return done


def sweep(claim: str, ns: Iterable[int], jobs: int = 1, report_path=None,
          checkpoint=None, progress: Callable[[SweepVerdict], None] | None = None) -> Report:
    """Run a per-n check over ``ns``.

    Verdicts already in ``checkpoint`` (JSON lines) are reused; new ones are
    appended there as they complete. The report content does not depend on
    ``jobs`` apart from timings.
    """
    if claim not in CHECKS:
        raise InputError(f"unknown sweep claim {claim!r}; choose from {sorted(CHECKS)}")
    ns = sorted(set(int(n) for n in ns))
    if not ns or ns[0] < 1:
        raise InputError("sweep needs n >= 1")
    done = {n: v for n, v in _load_checkpoint(checkpoint).items() if n in ns}
    todo = [n for n in ns if n not in done]
    fn = CHECKS[claim]
    ck = open(checkpoint, "a", encoding="utf-8") if checkpoint else None
    try:
        def record(v: SweepVerdict):
            done[v.n] = v
            if ck:
                ck.write(json.dumps(v.to_json()) + "\n")
                ck.flush()
            if progress:
                progress(v)

        if jobs > 1 and len(todo) > 1:
            # biggest first keeps the workers balanced
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for v in pool.map(fn, sorted(todo, reverse=True)):
                    record(v)
        else:
            for n in todo:
                record(fn(n))
    finally:
        if ck:
            ck.close()
    report = Report(claim, ns, [done[n] for n in ns])
    if report_path:
        with open(report_path, "w", encoding="utf-8") as fh:
            json.dump(report.to_json(), fh, indent=2)
            fh.write("\n")
    return report


def backend() -> str:
    return kernels.BACKEND
