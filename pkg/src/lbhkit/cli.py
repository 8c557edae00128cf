"""Command line interface.

Exit codes: 0 success, 1 validation failure, 2 parse or usage failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import algebra, circle, cyclotomic, witness
from .algebra import AlgebraElement, Cocycle
from .fileio import FileFormatError, read_element, read_groupoid, write_element
from .groupoid import FiniteGroupoid, is_bisection, is_effective, is_principal, isotropy, validate

EXIT_OK, EXIT_INVALID, EXIT_PARSE = 0, 1, 2


def canonical(obj) -> object:
    """Round floats to 12 significant digits, recursively."""
    if isinstance(obj, float):
        return float(format(obj, ".12g"))
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(canonical(obj), sort_keys=True, indent=2, ensure_ascii=False)


def validation_report(g: FiniteGroupoid, cocycle: Optional[Cocycle]) -> dict:
    problems = [str(v) for v in validate(g)]
    if not problems and cocycle is not None:
        problems += cocycle.violations()
    return {"valid": not problems, "violations": problems}


def analysis_report(g: FiniteGroupoid, cocycle: Optional[Cocycle] = None,
                    tol: float = algebra.DEFAULT_TOL) -> tuple[dict, Optional[witness.Witness]]:
    """Effectiveness, Cartan structure and, when not effective, a witness normaliser."""
    cartan = algebra.cartan_check(g, cocycle)
    report = {
        "valid": True,
        "num_arrows": len(g.arrows),
        "num_units": len(g.units),
        "isotropy_size": len(isotropy(g)),
        "principal": is_principal(g),
        "effective": is_effective(g),
        "commutant_dim": algebra.commutant_dimension(g, cocycle),
        "cartan": cartan.as_dict(),
        "twisted": cocycle is not None and bool(cocycle.turns),
        "witness": None,
    }
    w = witness.build_witness(g, tol, cocycle)
    if w is not None:
        report["witness"] = {
            "gamma": str(w.gamma),
            "N": w.order,
            "p": w.p,
            "support_size": len(w.certificate.support),
            "normaliser_residual": w.certificate.normaliser_residual,
            "norm": w.norm(),
        }
    return report, w


def normaliser_verdict(n: AlgebraElement, cocycle: Optional[Cocycle] = None,
                       tol: float = algebra.DEFAULT_TOL) -> dict:
    check = algebra.is_normaliser(n, tol, cocycle)
    supp = algebra.support(n, tol)
    bis = is_bisection(supp)
    verdict = {
        "is_normaliser": check.is_normaliser,
        "residual": check.residual,
        "support": [str(a) for a in supp],
        "is_bisection": bis,
        "fk_sequence": None,
    }
    if check.is_normaliser and bis:
        seq = algebra.build_fk_sequence(n, tol, cocycle)
        verdict["fk_sequence"] = {
            "stable_index": seq.stable_index,
            "terms": [[str(a) for a in algebra.support(fk, 0.0)] for fk in seq.terms],
            "verified": seq.verified,
        }
    return verdict


def gauss_report(p: int, verify: bool) -> dict:
    n = cyclotomic.gauss_normaliser(p)
    out = {"p": p, "element": str(n)}
    if verify:
        out["verified"] = cyclotomic.verify_gauss_identity(p)
    return out


def demo_integers_report(K: int, tol: float = circle.NONZERO_TOL) -> dict:
    s = circle.sample_m(K)
    series = circle.dft(s)
    sweep = circle.laurent_sweep()
    return {
        "samples": K,
        "unimodular": circle.is_unimodular(s),
        "c1_mag": abs(series[1]),
        "c2_mag": abs(series[2]),
        "violates_lbh": circle.cstar_lbh_violation(series, tol),
        "laurent_sweep_passed": sweep.exceptions == 0,
    }


def _emit(obj: dict, as_json: bool, text: str):
    print(dumps(obj) if as_json else text)


def _load(path):
    g, cocycle = read_groupoid(path)
    report = validation_report(g, cocycle)
    return g, cocycle, report


def cmd_validate(args) -> int:
    g, cocycle, report = _load(args.path)
    if args.json:
        print(dumps(report))
    elif report["valid"]:
        print(f"{args.path}: valid ({len(g.arrows)} arrows, {len(g.units)} units)")
    else:
        print(f"{args.path}: invalid")
        for line in report["violations"]:
            print(f"  {line}")
    return EXIT_OK if report["valid"] else EXIT_INVALID


def _fail_invalid(path, report) -> int:
    print(f"{path}: invalid groupoid", file=sys.stderr)
    for line in report["violations"]:
        print(f"  {line}", file=sys.stderr)
    return EXIT_INVALID


def cmd_analyze(args) -> int:
    g, cocycle, vreport = _load(args.path)
    if not vreport["valid"]:
        return _fail_invalid(args.path, vreport)
    report, w = analysis_report(g, cocycle, args.tol)
    if args.witness_out and w is not None:
        write_element(args.witness_out, w.m)
    lines = [f"{k}: {report[k]}" for k in ("num_arrows", "num_units", "isotropy_size",
                                          "principal", "effective", "commutant_dim")]
    lines.append("cartan: " + ", ".join(f"{k}={v}" for k, v in report["cartan"].items()))
    wr = report["witness"]
    if wr is None:
        lines.append("witness: none (effective)")
    else:
        lines.append(f"witness: gamma={wr['gamma']} N={wr['N']} p={wr['p']} "
                     f"support={wr['support_size']} residual={wr['normaliser_residual']:.3g} "
                     f"norm={wr['norm']:.12g}")
    _emit(report, args.json, "\n".join(lines))
    return EXIT_OK


def cmd_gauss(args) -> int:
    if not cyclotomic.is_prime(args.p) or args.p > 31:
        print(f"error: p must be a prime <= 31, got {args.p}", file=sys.stderr)
        return EXIT_PARSE
    report = gauss_report(args.p, args.verify)
    text = f"n = {report['element']}"
    if args.verify:
        text += f"\nn n* = n* n = {args.p}·δ0: {'verified' if report['verified'] else 'FAILED'}"
    _emit(report, args.json, text)
    return EXIT_OK if report.get("verified", True) else EXIT_INVALID


def cmd_demo_integers(args) -> int:
    try:
        report = demo_integers_report(args.samples, args.tol)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    text = "\n".join(f"{k}: {v}" for k, v in report.items())
    _emit(report, args.json, text)
    return EXIT_OK


def cmd_check_normaliser(args) -> int:
    g, cocycle, vreport = _load(args.path)
    if not vreport["valid"]:
        return _fail_invalid(args.path, vreport)
    n = read_element(args.element, g)
    verdict = normaliser_verdict(n, cocycle, args.tol)
    text = "\n".join(f"{k}: {v}" for k, v in verdict.items())
    _emit(verdict, args.json, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lbhkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the groupoid axioms of a groupoid file")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="effectiveness, Cartan checks and witness normaliser")
    p.add_argument("path")
    p.add_argument("--tol", type=float, default=algebra.DEFAULT_TOL)
    p.add_argument("--json", action="store_true")
    p.add_argument("--witness-out", metavar="FILE", help="write the witness element file here")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("gauss", help="Gauss normaliser of Z/p")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="check n n* = n* n = p δ0 exactly")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gauss)

    p = sub.add_parser("demo-integers", help="the integer group fails the C*-algebraic hypothesis")
    p.add_argument("--samples", type=int, default=2 ** 14)
    p.add_argument("--tol", type=float, default=circle.NONZERO_TOL)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_demo_integers)

    p = sub.add_parser("check-normaliser", help="test an element file against a groupoid file")
    p.add_argument("path")
    p.add_argument("element")
    p.add_argument("--tol", type=float, default=algebra.DEFAULT_TOL)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check_normaliser)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileFormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
