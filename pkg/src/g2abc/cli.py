"""Command-line front end: analyze a matrix triple, run verification
campaigns, generate family instances.

Exit codes: 0 success, 1 input/validation error, 2 verification mismatch.
"""

import argparse
import json
import os
import sys

import numpy as np

from .errors import G2ABCError
from .gabc import FamilyKind, TripleABC, classify_triple, cross_validate, generate

CASES = {
    "skew": FamilyKind.SKEW,
    "diag": FamilyKind.DIAGONAL,
    "adiag": FamilyKind.ANTIDIAGONAL,
    "sym": FamilyKind.SYMMETRIC,
    "general": FamilyKind.GENERAL,
}

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_MISMATCH = 2


def default_tol():
    raw = os.environ.get("G2ABC_TOL", "").strip()
    if raw:
        try:
            return float(raw)
        except ValueError:
            pass
    return 1e-9


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the exit-code contract wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(self.exit_with(message))

    @staticmethod
    def exit_with(message):
        print(f"error: {message}", file=sys.stderr)
        return EXIT_INPUT


def _form_map(form):
    return {"".join(map(str, key)): value for key, value in form.coeffs.items()}


def _matrix(arr):
    return [[float(v) for v in row] for row in np.asarray(arr)]


def load_triple(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise G2ABCError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise G2ABCError(f"{path} is not valid JSON: {exc}") from exc
    try:
        mats = {name: np.asarray(data[name], dtype=np.float64) for name in ("A", "B", "C")}
    except KeyError as exc:
        raise G2ABCError(f"{path} is missing matrix {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise G2ABCError(f"{path} holds non-numeric matrix data: {exc}") from exc
    return TripleABC(A=mats["A"], B=mats["B"], C=mats["C"])


def build_report(t, tol):
    rep = cross_validate(t, tol=tol)
    return {
        "input": {"A": _matrix(t.A), "B": _matrix(t.B), "C": _matrix(t.C)},
        "family": rep.family,
        "tol": tol,
        "tau0": rep.tau0,
        "tau1": _form_map(rep.tau1),
        "tau2": _form_map(rep.tau2),
        "tau3": _form_map(rep.tau3),
        "torsion_matrix": _matrix(rep.torsion_matrix),
        "div_torsion": [float(v) for v in rep.divergence],
        "ricci": _matrix(rep.ricci_matrix),
        "ricci_block_order": rep.ricci_block_order,
        "flags": {
            "closed": rep.flags.closed,
            "coclosed": rep.flags.coclosed,
            "torsion_free": rep.flags.torsion_free,
        },
        "deviations": {k: float(v) for k, v in rep.deviations.items()},
        "exact_checks": dict(rep.exact_checks),
        "dual_reports": [
            {"formula": r.formula, "component": r.component,
             "tabulated": r.tabulated, "computed": r.computed}
            for r in rep.dual_reports
        ],
        "passed": rep.passed,
    }


def _print_text_report(report, out):
    print(f"family: {report['family']}", file=out)
    flags = report["flags"]
    kinds = [name for name in ("closed", "coclosed", "torsion_free") if flags[name]]
    print(f"class: {', '.join(kinds) if kinds else 'generic (none of closed/coclosed)'}", file=out)
    print(f"tau0 = {report['tau0']:.12g}", file=out)
    for name in ("tau1", "tau2", "tau3"):
        coeffs = report[name]
        if coeffs:
            body = "  ".join(f"{v:+.12g} e{k}" for k, v in sorted(coeffs.items()))
        else:
            body = "0"
        print(f"{name} = {body}", file=out)
    div = report["div_torsion"]
    print("div T =", "  ".join(f"{v:+.12g}" for v in div), file=out)
    worst = max(report["deviations"].items(), key=lambda kv: kv[1])
    print(f"cross-validation: worst deviation {worst[1]:.3e} ({worst[0]}), "
          f"tol {report['tol']:g}", file=out)
    for dual in report["dual_reports"]:
        print(f"  note: {dual['formula']} {dual['component']}: tabulated "
              f"{dual['tabulated']:.12g} vs computed {dual['computed']:.12g}", file=out)
    print(f"passed: {report['passed']}", file=out)


def cmd_analyze(args):
    try:
        triple = load_triple(args.input)
    except G2ABCError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = build_report(triple, args.tol)
    if args.json:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        _print_text_report(report, sys.stdout)
    return EXIT_OK if report["passed"] else EXIT_MISMATCH


def cmd_verify(args):
    cases = list(CASES) if args.case == "all" else [args.case]
    worst = {}
    failures = 0
    duals = {}
    summary = []
    for case_index, case in enumerate(cases):
        kind = CASES[case]
        case_worst = 0.0
        case_key = ""
        for trial in range(args.trials):
            seed = np.random.SeedSequence((args.seed, case_index, trial))
            triple = generate(kind, seed)
            rep = cross_validate(triple, tol=args.tol)
            if not rep.passed:
                failures += 1
            for key, val in rep.deviations.items():
                worst[key] = max(worst.get(key, 0.0), val)
                if val > case_worst:
                    case_worst, case_key = val, key
            for r in rep.dual_reports:
                ident = (r.formula, r.component)
                if ident not in duals or duals[ident].delta < r.delta:
                    duals[ident] = r
        summary.append((case, args.trials, case_worst, case_key))
    passed = failures == 0
    if args.json:
        print(json.dumps({
            "cases": {c: {"trials": n, "worst": w, "worst_quantity": k}
                      for c, n, w, k in summary},
            "worst_deviations": {k: v for k, v in sorted(worst.items())},
            "dual_reports": [
                {"formula": f, "component": c, "tabulated": r.tabulated,
                 "computed": r.computed}
                for (f, c), r in sorted(duals.items())],
            "tol": args.tol,
            "failing_trials": failures,
            "passed": passed,
        }, sort_keys=True, indent=2))
    else:
        for case, n, w, k in summary:
            print(f"case {case}: {n} trials, worst deviation {w:.3e} ({k or 'n/a'})")
        print(f"worst per quantity at tol {args.tol:g}:")
        for key, val in sorted(worst.items()):
            mark = "ok" if val <= args.tol else "FAIL"
            print(f"  {key:28s} {val:12.3e}  {mark}")
        if duals:
            print("tabulated-formula mismatches (dual reports; generic route adjudicates):")
            for (formula, comp), r in sorted(duals.items()):
                print(f"  {formula} {comp}: tabulated {r.tabulated:+.12g}"
                      f" vs computed {r.computed:+.12g}")
        print("verdict:", "PASS" if passed else f"FAIL ({failures} failing trials)")
    return EXIT_OK if passed else EXIT_MISMATCH


def cmd_gen(args):
    triple = generate(CASES[args.case], args.seed, scale=args.scale)
    payload = {
        "A": _matrix(triple.A),
        "B": _matrix(triple.B),
        "C": _matrix(triple.C),
        "family": classify_triple(triple).value,
        "seed": args.seed,
    }
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def make_parser():
    parser = _Parser(prog="g2abc",
                     description="Torsion geometry of the G2-structures on g_{A,B,C}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="full torsion report for a triple file")
    p_an.add_argument("--input", required=True, help="JSON file with matrices A, B, C")
    p_an.add_argument("--json", action="store_true", help="emit the report as JSON")
    p_an.add_argument("--tol", type=float, default=default_tol())

    p_ver = sub.add_parser("verify", help="cross-validation campaign on generated triples")
    p_ver.add_argument("--case", choices=[*CASES, "all"], default="all")
    p_ver.add_argument("--trials", type=int, default=100)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--tol", type=float, default=default_tol())
    p_ver.add_argument("--json", action="store_true")

    p_gen = sub.add_parser("gen", help="write a random triple of a family")
    p_gen.add_argument("--case", choices=list(CASES), required=True)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--scale", type=float, default=1.0)
    p_gen.add_argument("--out", required=True)
    return parser


def main(argv=None):
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    handlers = {"analyze": cmd_analyze, "verify": cmd_verify, "gen": cmd_gen}
    try:
        return handlers[args.command](args)
    except G2ABCError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
