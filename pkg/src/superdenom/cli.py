"""Batch command-line entry point.

Every subcommand is a pure verification or dump with deterministic output
(canonical term order, no timestamps in the payload).  Exit status: 0 when
all requested checks matched, 1 on a mismatch, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import analytic, identities, squares
from .series import serialize


def _order(value: str) -> int:
    n = int(value)
    if n < 0:
        raise argparse.ArgumentTypeError("order must be nonnegative")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="superdenom",
        description="Exact verification of the gl(2|2) affine denominator "
                    "identity and its companions.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_, order_default=None):
        sp = sub.add_parser(name, help=help_)
        if order_default is not None:
            sp.add_argument("--order", type=_order, default=order_default,
                            help=f"degree cutoff (default {order_default})")
        sp.add_argument("--format", choices=("text", "json", "csv"),
                        default="text")
        sp.add_argument("--output", default=None, help="write to file")
        return sp

    add("verify-denom", "main affine identity", 24)
    add("verify-prefactor", "product vs cyclotomic series prefactor", 40)
    add("verify-finite", "finite rank-3 identity", 24)
    add("verify-sl21", "affine sl(2|1) identity", 18)
    add("verify-talpha-tgamma", "translation orbit sums along alpha vs gamma", 16)
    add("ratio-support", "support shape and triviality of RHS/LHS", 24)

    sp = add("jacobi", "eight-squares table and identities")
    sp.add_argument("--max-n", type=_order, default=64)

    sp = add("analytic", "floating-point evaluation suite")
    sp.add_argument("--q", type=float, default=0.1)
    sp.add_argument("--tol", type=float, default=1e-8)

    sp = add("dump", "serialize a builder output", 24)
    sp.add_argument("--expr", required=True,
                    choices=("lhs", "rhs", "prefactor", "orbit-sum", "rhat-roots"))
    return p


_VERIFIERS = {
    "verify-denom": identities.verify_denominator,
    "verify-prefactor": identities.verify_prefactor,
    "verify-finite": identities.verify_finite_identity,
    "verify-sl21": identities.verify_sl21,
    "verify-talpha-tgamma": identities.verify_talpha_tgamma,
    "ratio-support": identities.ratio_support_check,
}

_DUMPERS = {
    "lhs": lambda n: identities.build_lhs(n),
    "rhs": identities.build_rhs,
    "prefactor": lambda n: identities.build_prefactor(n),
    "orbit-sum": lambda n: identities.build_orbit_sum(n),
    "rhat-roots": lambda n: identities.build_lhs(n, "roots"),
}


def _report_text(doc: dict) -> str:
    lines = [f"{doc['identity']}: "
             f"{'MATCHED' if doc['matched'] else 'MISMATCH'} "
             f"(cutoff {doc['cutoff']}, {doc['lhs_terms']} vs "
             f"{doc['rhs_terms']} terms)"]
    for d in doc["first_diffs"]:
        lines.append(f"  diff at {d['e']}: lhs={d['lhs']} rhs={d['rhs']}")
    return "\n".join(lines)


def _emit(text: str, output):
    if output:
        with open(output, "w") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _run_report(args) -> tuple[int, str]:
    rep = _VERIFIERS[args.command](args.order)
    doc = rep.to_dict(include_millis=False)
    if args.format == "json":
        text = json.dumps(doc, sort_keys=True, indent=2)
    else:
        text = _report_text(doc)
    return (0 if rep.matched else 1), text


def _run_jacobi(args) -> tuple[int, str]:
    rows = squares.jacobi_table(args.max_n)
    ok = all(r["match"] for r in rows)
    gauss_ok = squares.gauss_check(max(args.max_n, 100)).matched
    inter_ok = squares.intermediate_identity_check(args.max_n).matched
    code = 0 if ok and gauss_ok and inter_ok else 1
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=["n", "r8_enum", "r8_theta",
                                            "r8_formula", "match"])
        w.writeheader()
        w.writerows(rows)
        return code, buf.getvalue()
    doc = {"rows": rows, "all_match": ok, "gauss": gauss_ok,
           "intermediate": inter_ok}
    if args.format == "json":
        return code, json.dumps(doc, sort_keys=True, indent=2)
    lines = [f"n={r['n']}: {r['r8_enum']} {r['r8_theta']} {r['r8_formula']} "
             f"{'ok' if r['match'] else 'MISMATCH'}" for r in rows]
    lines.append(f"gauss: {'ok' if gauss_ok else 'MISMATCH'}; "
                 f"intermediate: {'ok' if inter_ok else 'MISMATCH'}")
    return code, "\n".join(lines)


def _run_analytic(args) -> tuple[int, str]:
    cfg = analytic.default_config(q=args.q, tol=args.tol)
    rep = analytic.run_suite(cfg)
    code = 0 if rep["ok"] else 1
    doc = {
        "ok": rep["ok"],
        "ratio_one_max_dev": rep["ratio_one"]["max_deviation"],
        "b_zero_max": rep["b_zeros"]["max"],
        "functional_max_dev": rep["functional"]["max_dev"],
        "limit_dev_a_over_r": rep["limits"]["dev_a_over_r"],
        "limit_dev_b": rep["limits"]["dev_b"],
        "an_limits_max_dev": rep["an_limits"]["max_dev"],
    }
    if args.format == "json":
        return code, json.dumps(doc, sort_keys=True, indent=2)
    lines = [f"{k}: {v:.3e}" if isinstance(v, float) else f"{k}: {v}"
             for k, v in doc.items()]
    return code, "\n".join(lines)


def _run_dump(args) -> tuple[int, str]:
    return 0, serialize(_DUMPERS[args.expr](args.order))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "jacobi":
        code, text = _run_jacobi(args)
    elif args.command == "analytic":
        code, text = _run_analytic(args)
    elif args.command == "dump":
        code, text = _run_dump(args)
    else:
        code, text = _run_report(args)
    _emit(text, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
