"""Command-line entry point ``gnl``.

Exit status: 0 when every check passes, 1 when a checked claim fails or a
violation list is nonempty, 2 for usage, input or capacity errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from gnl import (
    __version__,
    bigpoly,
    cohomology,
    derivations,
    family,
    grading,
    kernels,
    verify,
)
from gnl._bigint import dec
from gnl.bigpoly import MultiPoly
from gnl.errors import CapacityError, GnlError, InputError, NotNilpotentError
from gnl.grading import Grading
from gnl.liealg import (
    StructureConstants,
    _read_json,
    center,
    check_jacobi,
    lower_central_series,
    parse_rational,
)

OK, FAILED, USAGE = 0, 1, 2


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _write(path, obj) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(_dump(obj) + "\n")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


def _text(obj, indent: int = 0) -> list[str]:
    lines = []
    pad = "  " * indent
    for k, v in obj.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.extend(_text(v, indent + 1))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}: [{len(v)} entries]")
        else:
            lines.append(f"{pad}{k}: {v}")
    return lines


def emit(args, obj: dict) -> None:
    if args.quiet:
        return
    if args.format == "text":
        print("\n".join(_text(obj)))
    else:
        print(_dump(obj))


# -- commands ---------------------------------------------------------------

def cmd_check(args) -> int:
    L = StructureConstants.load(args.algebra)
    bad = check_jacobi(L)
    out = {"dim": L.n, "jacobi_violations": [[L.labels[i] for i in t] for t in bad]}
    try:
        _, cls = lower_central_series(L)
        out.update(nilpotent=True, nilpotency_class=cls)
    except NotNilpotentError:
        out.update(nilpotent=False, nilpotency_class=None)
    out["center_dim"] = center(L).dim
    out["pass"] = not bad and out["nilpotent"]
    emit(args, out)
    return OK if out["pass"] else FAILED


def cmd_grading_check(args) -> int:
    L = StructureConstants.load(args.algebra)
    G = Grading.load(args.grading)
    bad = grading.validate(L, G)
    emit(args, {"violations": [list(t) for t in bad], "pass": not bad})
    return OK if not bad else FAILED


def cmd_grading_poly(args) -> int:
    L = StructureConstants.load(args.algebra)
    G = Grading.load(args.grading)
    p = grading.associated_polynomial(L, G)
    out = p.to_json()
    out["length"] = dec(bigpoly.length(p))
    out["factors"] = bigpoly.factors_to_json(G.factors())["factors"]
    if args.out:
        _write(args.out, p.to_json())
    emit(args, out)
    return OK


def _strategy(raw: str):
    if raw in ("minimal", "degree_bound"):
        return raw
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"strategy must be minimal, degree_bound or an integer, got {raw!r}") from None


def cmd_grading_collapse(args) -> int:
    L = StructureConstants.load(args.algebra)
    G = Grading.load(args.grading)
    before = grading.associated_length(L, G)
    out: dict = {"length_before": dec(before)}
    if args.to_line:
        new, ms = grading.collapse_to_line(L, G)
        out["m"] = ms
    else:
        step = grading.collapse_once(L, G, _strategy(args.strategy))
        new = step.grading
        out["m"] = [step.m]
        if step.warning:
            out["warning"] = step.warning
            print(f"warning: {step.warning}", file=sys.stderr)
    after = grading.associated_length(L, new)
    out.update(grading=new.to_json(), length_after=dec(after), preserved=after == before,
               valid=not grading.validate(L, new))
    if args.out:
        _write(args.out, new.to_json())
    emit(args, out)
    return OK if out["valid"] else FAILED


def cmd_family_build(args) -> int:
    L, G, lay = family.build(args.n)
    if args.out:
        _write(args.out, L.to_json())
    if args.grading_out:
        _write(args.grading_out, G.to_json())
    out = {"n": args.n, "dim": L.n, "dims": family.dims(args.n).as_dict(),
           "jacobi": True, "nilpotency_class": 3, "grading_valid": True}
    if not args.out:
        out["algebra"] = L.to_json()
    emit(args, out)
    return OK


def cmd_family_dims(args) -> int:
    rec = family.dims(args.n).as_dict()
    if args.measure:
        measured = family.measured_dims(args.n)
        rec = {"formula": rec, "measured": measured, "pass": measured == rec}
        emit(args, rec)
        return OK if rec["pass"] else FAILED
    emit(args, rec)
    return OK


def cmd_family_fine(args) -> int:
    G = family.fine_grading(args.n)
    _, ts = family.fine_weights(args.n)
    L = family.structure(args.n)
    out = {"n": args.n, "t": ts, "grading": G.to_json(), "valid": not grading.validate(L, G)}
    if args.out:
        _write(args.out, G.to_json())
    emit(args, out)
    return OK if out["valid"] else FAILED


def _read_matrix(path) -> list[list[Fraction]]:
    raw = _read_json(path)
    try:
        return [[parse_rational(x) for x in row] for row in raw]
    except (TypeError, ValueError, ZeroDivisionError):
        raise InputError(f"{path}: expected a JSON list of rows of numbers or 'p/q' strings") from None


def cmd_family_rebase(args) -> int:
    if args.matrix:
        mats = [_read_matrix(args.matrix)]
    else:
        rng = random.Random(args.seed)
        mats = []
        while len(mats) < args.random:
            P = [[Fraction(rng.randint(-3, 3)) for _ in range(args.n)] for _ in range(args.n)]
            try:
                family.rebase_matrix(args.n, P)
            except InputError:
                continue
            mats.append(P)
    results = [family.rebase_check(args.n, P) for P in mats]
    emit(args, {"n": args.n, "checked": len(results), "pass": all(results)})
    return OK if all(results) else FAILED


def _estimate(N: int) -> str:
    eqs = N * N * (N - 1) // 2
    return f"{N * N} unknowns, up to {eqs} sparse equations"


def cmd_der(args) -> int:
    if args.algebra:
        L = StructureConstants.load(args.algebra)
    elif args.family_n:
        L = family.structure(args.family_n)
    else:
        raise InputError("give an algebra file or --family-n")
    N = L.n
    too_big = (args.family_n and args.family_n > 3) or N > 23
    if too_big and not args.allow_large:
        raise CapacityError(f"derivation system for dim {N}: {_estimate(N)}; rerun with --allow-large")
    if too_big:
        print(f"solving derivation system: {_estimate(N)}", file=sys.stderr)
    if args.family_n:
        lay = family.FamilyLayout(args.family_n)
        checks = [c for c in args.check.split(",") if c]
        unknown = set(checks) - {"levi", "triangular", "diagonal", "multiplicity"}
        if unknown:
            raise InputError(f"unknown checks: {sorted(unknown)}")
        out = derivations.verify_family(L, lay, checks)
        supplied = []
        if args.grading:
            supplied.append(("grading", derivations.grading_derivation(L, Grading.load(args.grading))))
        if args.derivation:
            supplied.append(("derivation", _read_matrix(args.derivation)))
        for key, D in supplied:
            rep = derivations.check_multiplicities(L, D, args.family_n)
            out[f"supplied_{key}"] = rep
            out["pass"] = out["pass"] and rep["pass"]
    else:
        if args.grading or args.derivation:
            raise InputError("--grading and --derivation need --family-n")
        basis = derivations.derivation_space(L)
        out = {"dim_algebra": N, "dim_der": basis.dim, "pass": True}
    if args.json:
        _write(args.json, out)
    emit(args, out)
    return OK if out["pass"] else FAILED


def cmd_cohomology(args) -> int:
    L = StructureConstants.load(args.algebra)
    b = cohomology.betti(L, args.max_dim)
    out = {"dim": L.n, "betti": b.b, "total": b.total, "euler": b.euler,
           "poincare_duality": b.b == b.b[::-1]}
    code = OK
    if args.grading:
        G = Grading.load(args.grading)
        chk = cohomology.check_ds_bound(L, G, args.max_dim)
        out["bound"] = chk.to_json()
        code = OK if chk.holds else FAILED
    if args.json:
        _write(args.json, out)
    emit(args, out)
    return code


def cmd_verify_sweep(args) -> int:
    lo, hi = args.n_from, args.n_to
    if hi < lo:
        raise InputError("--n-to must be >= --n-from")

    def progress(v):
        if args.format == "text" and not args.quiet:
            print(f"n={v.n}: {'holds' if v.holds else 'FAILS'} ({v.elapsed:.2f}s)", file=sys.stderr)

    report = verify.sweep(args.claim, range(lo, hi + 1), jobs=args.jobs, report_path=args.report,
                          checkpoint=args.checkpoint, progress=progress)
    out = report.to_json()
    out["backend"] = kernels.BACKEND
    emit(args, out)
    return OK if report.passed else FAILED


def cmd_verify_tail(args) -> int:
    v = verify.check_tail_constant()
    emit(args, v.to_json())
    return OK if v.holds else FAILED


def cmd_verify_induction(args) -> int:
    v = verify.check_induction_chain(args.n, args.block, args.floor)
    emit(args, v.to_json())
    return OK if v.holds else FAILED


def cmd_verify_fine(args) -> int:
    v = verify.check_fine_exceeds(args.n, args.max_n)
    emit(args, v.to_json())
    return OK if v.holds else FAILED


def cmd_poly_expand(args) -> int:
    factors = bigpoly.factors_from_json(_read_json(args.factors))
    p = bigpoly.expand(factors, method=args.method)
    out = p.to_json()
    out["length"] = dec(bigpoly.length(p))
    if args.out:
        _write(args.out, p.to_json())
    emit(args, out)
    return OK


def cmd_poly_length(args) -> int:
    obj = _read_json(args.file)
    if isinstance(obj, dict) and "factors" in obj:
        factors = bigpoly.factors_from_json(obj)
        if factors and len(factors[0][0]) == 1:
            ell = bigpoly.staircase_length(factors)
        else:
            ell = bigpoly.length(bigpoly.expand(factors))
    else:
        ell = bigpoly.length(MultiPoly.from_json(obj))
    emit(args, {"length": dec(ell)})
    return OK


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    base = argparse.ArgumentParser(add_help=False)
    base.add_argument("--format", choices=("json", "text"), default="json")
    base.add_argument("--quiet", action="store_true", help="print nothing; rely on the exit code")
    common = argparse.ArgumentParser(add_help=False, parents=[base])
    common.add_argument("--json", dest="format", action="store_const", const="json",
                        help="same as --format json")

    p = argparse.ArgumentParser(prog="gnl", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"gnl {__version__} ({kernels.BACKEND} kernels)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="Jacobi identity, nilpotency, center")
    s.add_argument("algebra")
    s.set_defaults(func=cmd_check)

    g = sub.add_parser("grading", help="gradings and associated polynomials")
    gs = g.add_subparsers(dest="action", required=True)
    s = gs.add_parser("check", parents=[common])
    s.add_argument("algebra")
    s.add_argument("grading")
    s.set_defaults(func=cmd_grading_check)
    s = gs.add_parser("poly", parents=[common])
    s.add_argument("algebra")
    s.add_argument("grading")
    s.add_argument("--out")
    s.set_defaults(func=cmd_grading_poly)
    s = gs.add_parser("collapse", parents=[common])
    s.add_argument("algebra")
    s.add_argument("grading")
    s.add_argument("--strategy", default="minimal", help="minimal, degree_bound or an integer m")
    s.add_argument("--to-line", action="store_true", help="collapse all the way to one variable")
    s.add_argument("--out")
    s.set_defaults(func=cmd_grading_collapse)

    f = sub.add_parser("family", help="the family n(n)")
    fs = f.add_subparsers(dest="action", required=True)
    s = fs.add_parser("build", parents=[common])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--out")
    s.add_argument("--grading-out")
    s.set_defaults(func=cmd_family_build)
    s = fs.add_parser("dims", parents=[common])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--measure", action="store_true", help="also recompute from the algebra")
    s.set_defaults(func=cmd_family_dims)
    s = fs.add_parser("fine-grading", parents=[common])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_family_fine)
    s = fs.add_parser("rebase-check", parents=[common])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--matrix", help="JSON file with an n x n matrix (rows = new e_i)")
    s.add_argument("--random", type=int, default=10, help="number of random integer matrices")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_family_rebase)

    s = sub.add_parser("der", parents=[base], help="derivation algebra")
    s.add_argument("algebra", nargs="?")
    s.add_argument("--family-n", type=int)
    s.add_argument("--check", default="levi,triangular,diagonal,multiplicity")
    s.add_argument("--json", dest="json", metavar="OUT", help="write the result to OUT")
    s.add_argument("--allow-large", action="store_true")
    s.add_argument("--grading", help="one-variable grading with degrees 1..3; check its eigenspace dimensions")
    s.add_argument("--derivation", help="JSON matrix (D[r][c] = coefficient of b_r in D(b_c)) to check likewise")
    s.set_defaults(func=cmd_der)

    s = sub.add_parser("cohomology", parents=[base], help="Betti numbers and the length bound")
    s.add_argument("algebra")
    s.add_argument("--max-dim", type=int, default=cohomology.DEFAULT_MAX_DIM)
    s.add_argument("--grading")
    s.add_argument("--json", dest="json", metavar="OUT", help="write the result to OUT")
    s.set_defaults(func=cmd_cohomology)

    v = sub.add_parser("verify", help="exact length inequalities")
    vs = v.add_subparsers(dest="claim", required=True)
    for claim, lo, hi in (("trc3", 17, 200), ("pn", 30, 180)):
        s = vs.add_parser(claim, parents=[common])
        s.add_argument("--n-from", type=int, default=lo)
        s.add_argument("--n-to", type=int, default=hi)
        s.add_argument("--jobs", type=int, default=1)
        s.add_argument("--report")
        s.add_argument("--checkpoint", help="JSON-lines file of finished verdicts to resume from")
        s.set_defaults(func=cmd_verify_sweep)
    s = vs.add_parser("tail", parents=[common])
    s.set_defaults(func=cmd_verify_tail)
    s = vs.add_parser("induction", parents=[common])
    s.add_argument("--n", type=int, default=181)
    s.add_argument("--block", type=int, default=30)
    s.add_argument("--floor", type=int, default=180, help="reduce n by 5*block until it is <= floor")
    s.set_defaults(func=cmd_verify_induction)
    s = vs.add_parser("fine", parents=[common])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--max-n", type=int, default=verify.FINE_MAX_N)
    s.set_defaults(func=cmd_verify_fine)

    q = sub.add_parser("poly", help="factor lists and polynomials")
    qs = q.add_subparsers(dest="action", required=True)
    s = qs.add_parser("expand", parents=[common])
    s.add_argument("factors")
    s.add_argument("--method", choices=("auto", "sparse", "dense"), default="auto")
    s.add_argument("--out")
    s.set_defaults(func=cmd_poly_expand)
    s = qs.add_parser("length", parents=[common])
    s.add_argument("file", help="polynomial JSON or factor-list JSON")
    s.set_defaults(func=cmd_poly_length)
    return p


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    # `gnl family --n N ...` is shorthand for `gnl family build --n N ...`
    if len(argv) >= 2 and argv[0] == "family" and argv[1].startswith("-") and argv[1] not in ("-h", "--help"):
        argv.insert(1, "build")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except (InputError, CapacityError) as exc:
        print(f"gnl: error: {exc}", file=sys.stderr)
        return USAGE
    except GnlError as exc:
        print(f"gnl: error: {exc}", file=sys.stderr)
        return FAILED


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
