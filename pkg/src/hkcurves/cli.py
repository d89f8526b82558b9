"""Command-line interface.

Every number is printed as an exact rational string (``p`` or ``p/q``).  With
``--json`` the output is a single object
``{"subcommand": ..., "inputs": {...}, "results": {name: "p/q" | bool}}``.

Exit status: 0 after any successful computation, 1 when an internal check
fails, 2 on bad usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .criterion import (
    BetaClass,
    ZeroNormUnsupported,
    decide_uniruled,
    eigenvalues,
    n_leq_7_sweep,
    residue_for_k3_2,
    search_witness,
    table_norms,
    _precision_for,
)
from .jacobi import NAMED_FORMS, InadmissiblePair, ResidueSet, is_admissible, jcoeff, named_form

Result = Union[str, bool]

COEFF_FORMS = {"f": "f", "g": "g", "phi": "phi", "phi-pow-over-delta": "phi_pow_over_delta"}
SERIES_FORMS = sorted({name.replace("_", "-") for name in NAMED_FORMS})


class UsageError(Exception):
    pass


def fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(Fraction(x))


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer: {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    # --json is accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit a single JSON object")

    parser = argparse.ArgumentParser(
        prog="hkcurves",
        description="Uniruled divisors on K3^[n]-type varieties and the Fano variety of lines.",
    )
    parser.add_argument("--json", action="store_true", help="emit a single JSON object")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("uniruled", parents=[common], help="decide existence of a uniruled divisor")
    _add_class_args(p)
    p.add_argument("--witness", action="store_true", help="also search for a decomposition")
    p.add_argument("--r-bound", type=int, default=6)
    p.add_argument("--d-bound", type=int, default=12)

    p = sub.add_parser("coeff", parents=[common], help="coefficient of a named form")
    p.add_argument("--form", choices=sorted(COEFF_FORMS), default="phi-pow-over-delta")
    _add_class_args(p)
    p.add_argument("--qprec", type=_positive_int, default=None)

    p = sub.add_parser("table", parents=[common], help="multiplicity / eigenvalue tables for K3^[2]")
    p.add_argument("--which", choices=("multiplicities", "eigenvalues"), required=True)
    p.add_argument("--max-norm", type=parse_rational, default=Fraction(6))

    p = sub.add_parser("series", parents=[common], help="dump the stored terms of a form")
    p.add_argument("--form", choices=SERIES_FORMS, required=True)
    p.add_argument("--qprec", type=_positive_int, default=8)
    p.add_argument("--n", type=_positive_int, default=2, help="for phi-pow-over-delta")

    p = sub.add_parser("fano", parents=[common], help="intersection numbers on the Fano variety")
    p.add_argument("action", choices=("verify",))

    p = sub.add_parser("sweep", parents=[common], help="positivity sweep for n = 2..7")
    p.add_argument("--max-d", type=int, default=6)
    p.add_argument("--norm-cutoff", type=parse_rational, default=Fraction(-2))
    return parser


def _add_class_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=_positive_int, default=2)
    p.add_argument("--norm", type=parse_rational, required=True)
    p.add_argument("--residue", type=int, default=None,
                   help="one representative of the residue set (inferred when unique)")


def _beta_from(args, n: Optional[int] = None) -> BetaClass:
    n = args.n if n is None else n
    norm = args.norm
    modulus = 2 * n - 2
    if n >= 2 and modulus % norm.denominator:
        raise UsageError(f"--norm: denominator of {norm} does not divide 2n-2 = {modulus}")
    residue = args.residue
    if residue is None and n == 1:
        residue = 0
    if residue is None:
        options = [rho for rho in range(n) if is_admissible(norm, ResidueSet.of(rho, modulus), n - 1)]
        if len(options) != 1:
            raise UsageError(f"--residue: required for n={n}, norm={norm} "
                             f"(admissible choices: {options or 'none'})")
        residue = options[0]
    try:
        return BetaClass.make(n, norm, residue)
    except InadmissiblePair as exc:
        raise UsageError(f"--norm/--residue: {exc}") from exc


def run_uniruled(args) -> Tuple[dict, Dict[str, Result], List[str]]:
    beta = _beta_from(args)
    decision = decide_uniruled(beta)
    inputs = {"n": args.n, "norm": fmt(beta.norm), "residue": beta.residue.representative()}
    results: Dict[str, Result] = {"exists": decision.exists, "multiplicity": fmt(decision.multiplicity)}
    lines = [f"exists = {fmt(decision.exists)}, multiplicity = {fmt(decision.multiplicity)}"]
    if args.witness:
        inputs.update({"r_bound": args.r_bound, "d_bound": args.d_bound})
        w = search_witness(beta, args.r_bound, args.d_bound)
        results["witness_found"] = w is not None
        if w is None:
            lines.append("witness = none within bounds")
        else:
            for i, (d, r) in enumerate(w.pairs, 1):
                results[f"d_{i}"] = fmt(d)
                results[f"r_{i}"] = fmt(r)
            lines.append("witness = " + " ".join(f"(d={d}, r={r})" for d, r in w.pairs))
    return inputs, results, lines


def run_coeff(args) -> Tuple[dict, Dict[str, Result], List[str]]:
    name = COEFF_FORMS[args.form]
    if name != "phi_pow_over_delta" and args.n != 2:
        raise UsageError(f"--n: form {args.form} has index 1, so n must be 2")
    beta = _beta_from(args)
    d, _ = beta.locate()
    prec = _precision_for(d)
    if args.qprec is not None:
        prec = max(prec, args.qprec)
    form = named_form(name, prec, beta.n)
    value = jcoeff(form, beta.norm, beta.residue)
    inputs = {"form": args.form, "n": args.n, "norm": fmt(beta.norm),
              "residue": beta.residue.representative(), "qprec": prec}
    label = f"{args.form}[{fmt(beta.norm)}, {beta.residue}]"
    return inputs, {label: fmt(value)}, [f"{label} = {fmt(value)}"]


def run_table(args) -> Tuple[dict, Dict[str, Result], List[str]]:
    norms = table_norms(args.max_norm)
    inputs = {"which": args.which, "max_norm": fmt(args.max_norm)}
    results: Dict[str, Result] = {}
    lines = []
    if args.which == "multiplicities":
        lines.append("norm\tf_beta")
        for D in norms:
            value = decide_uniruled(BetaClass.make(2, D, residue_for_k3_2(D))).multiplicity
            results[f"f[{fmt(D)}]"] = fmt(value)
            lines.append(f"{fmt(D)}\t{fmt(value)}")
    else:
        lines.append("norm\tlambda1\tlambda2")
        for D in norms:
            beta = BetaClass.make(2, D, residue_for_k3_2(D))
            try:
                l1, l2 = eigenvalues(beta)
            except ZeroNormUnsupported:
                lines.append(f"{fmt(D)}\t—\t—")
                continue
            results[f"lambda1[{fmt(D)}]"] = fmt(l1)
            results[f"lambda2[{fmt(D)}]"] = fmt(l2)
            lines.append(f"{fmt(D)}\t{fmt(l1)}\t{fmt(l2)}")
    return inputs, results, lines


def run_series(args) -> Tuple[dict, Dict[str, Result], List[str]]:
    name = args.form.replace("-", "_")
    form = named_form(name, args.qprec, args.n)
    inputs = {"form": args.form, "qprec": args.qprec}
    if name == "phi_pow_over_delta":
        inputs["n"] = args.n
    results: Dict[str, Result] = {}
    lines = []
    for (d, r2), v in form.series.items():
        v = Fraction(v)
        text = f"{v.numerator}/{v.denominator}"
        results[f"{d} {r2}"] = text
        lines.append(f"{d} {r2} {text}")
    return inputs, results, lines


def run_fano(args) -> Tuple[dict, Dict[str, Result], List[str]]:
    from .fano import fano_checks

    checks = fano_checks()
    results = {c.name: (c.value if isinstance(c.value, bool) else fmt(c.value)) for c in checks}
    results["all_pass"] = all(c.ok for c in checks)
    return {"action": args.action}, results, [c.line() for c in checks]


def run_sweep(args) -> Tuple[dict, Dict[str, Result], List[str]]:
    if args.max_d < 2:
        raise UsageError("--max-d: must be at least 2")
    report = n_leq_7_sweep(args.max_d, args.norm_cutoff)
    results: Dict[str, Result] = {}
    for n in sorted(report.checked):
        zeros = report.zeros.get(n, [])
        results[f"n={n} all positive"] = not zeros
        for d, r, D in zeros:
            results[f"n={n} zero at d={d} r={r}"] = fmt(D)
        results[f"n={n} all positive-norm positive"] = not report.positive_norm_zeros.get(n)
    d, r, D = report.n8_zero
    results[f"n=8 coefficient at norm {fmt(D)} residue {r}"] = fmt(report.n8_value)
    inputs = {"max_d": args.max_d, "norm_cutoff": fmt(args.norm_cutoff)}
    return inputs, results, report.lines()


RUNNERS = {
    "uniruled": run_uniruled,
    "coeff": run_coeff,
    "table": run_table,
    "series": run_series,
    "fano": run_fano,
    "sweep": run_sweep,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        inputs, results, lines = RUNNERS[args.subcommand](args)
    except UsageError as exc:
        parser.error(str(exc))
    except AssertionError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps({"subcommand": args.subcommand, "inputs": inputs, "results": results},
                         ensure_ascii=False))
    else:
        print("\n".join(lines))
    if args.subcommand == "fano" and not results["all_pass"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
