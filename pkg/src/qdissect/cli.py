"""``qdissect`` command line: expand series, count, and run the checks.

Exit codes: 0 when every check passed, 1 when at least one failed, 2 on
usage, parse or evaluation errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import congruence as C
from . import dissect as D
from . import oracle, scripts, suite
from . import series as S
from .dsl import DslError, eval_expr, run_script

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _emit(args, payload, human: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(human)


def _table(rows, cols) -> str:
    widths = [max(len(c), *(len(str(r.get(c, ""))) for r in rows)) for c in cols]
    out = ["  ".join(c.ljust(w) for c, w in zip(cols, widths))]
    out.append("  ".join("-" * w for w in widths))
    for r in rows:
        out.append("  ".join(str(r.get(c, "")).ljust(w) for c, w in zip(cols, widths)))
    return "\n".join(out)


def _ring(mod):
    return S.EXACT if mod is None else S.mod(mod)


# ---------------------------------------------------------------------------
# subcommands


def cmd_expand(args) -> int:
    order = args.order if args.order is not None else suite.default_order()
    try:
        s = eval_expr(args.expression, _ring(args.mod), order)
    except DslError as exc:
        print(exc.format(args.expression), file=sys.stderr)
        return EXIT_USAGE
    _emit(args, json.loads(S.to_json(s)), " ".join(str(c) for c in s.tolist()))
    return EXIT_OK


def cmd_oracle(args) -> int:
    if args.l < 0:
        raise UsageError("--l must be >= 0 (0 means unrestricted)")
    table = oracle.count_overpartitions(args.nmax) if args.l == 0 \
        else oracle.count_restricted(args.l, args.nmax)
    counts = [str(c) for c in table.counts]
    human = "\n".join(f"{n}\t{c}" for n, c in enumerate(counts))
    _emit(args, counts, human)
    return EXIT_OK


def _report_checks(args, results) -> int:
    ok = all(r["status"] == "verified" for r in results)
    rows = [{"check": r["check"], "status": r["status"],
             "instances": r.get("instances_checked", ""),
             "seconds": r["seconds"]} for r in results]
    human = _table(rows, ["check", "status", "instances", "seconds"])
    for r in results:
        for c in r.get("counterexamples", [])[:5]:
            human += f"\n  counterexample in {r['check']}: {c}"
        if "error" in r:
            human += f"\n  {r['check']}: {r['error']}"
    _emit(args, {"passed": ok, "results": results}, human)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify_identities(args) -> int:
    order = args.order if args.order is not None else suite.default_order()
    names = suite.GROUPS["identities"]
    if args.polys:
        names = names + suite.GROUPS["polys"]
    return _report_checks(args, suite.run_checks(names, order, jobs=args.jobs))


def cmd_check(args) -> int:
    if args.all:
        names = suite.GROUPS["all"]
    elif args.theorem:
        names = [n for t in args.theorem for n in suite.GROUPS[t]]
    else:
        raise UsageError("give --theorem or --all")
    order = args.order if args.order is not None else suite.default_order()
    results = suite.run_checks(names, order, args.budget, jobs=args.jobs)
    return _report_checks(args, results)


def cmd_replay(args) -> int:
    path = args.script
    if os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    else:
        try:
            text = scripts.source(os.path.basename(path))
        except FileNotFoundError:
            raise UsageError(f"no such script: {path}") from None
    try:
        report = run_script(text, path)
    except DslError as exc:
        print(exc.format(text), file=sys.stderr)
        return EXIT_USAGE
    rows = [{"line": r.line, "status": "ok" if r.passed else "FAIL", "assertion": r.text}
            for r in report.results]
    human = _table(rows, ["line", "status", "assertion"])
    for r in report.results:
        if not r.passed:
            human += (f"\n  line {r.line}: first difference at q^{r.exponent}: "
                      f"{r.lhs} vs {r.rhs}")
    _emit(args, report.to_dict(), human)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_scripts(args) -> int:
    names = scripts.names()
    _emit(args, names, "\n".join(names))
    return EXIT_OK


def cmd_qr(args) -> int:
    if args.mod < 1:
        raise UsageError("--mod must be >= 1")
    empty = C.square_progression_empty(args.target, args.mod, args.odd)
    kind = "odd squares" if args.odd else "squares"
    payload = {"target": args.target, "modulus": args.mod, "odd_only": args.odd,
               "nonresidue": empty}
    _emit(args, payload, f"nonresidue: {str(empty).lower()}  "
                         f"({args.target} mod {args.mod} among {kind})")
    return EXIT_OK if empty else EXIT_FAIL


def cmd_catalog(args) -> int:
    order = args.order if args.order is not None else suite.default_order()
    text = D.catalog_script(order)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _common(default_json, default_jobs) -> argparse.ArgumentParser:
    flags = argparse.ArgumentParser(add_help=False)
    flags.add_argument("--json", action="store_true", default=default_json,
                       help="machine-readable output")
    flags.add_argument("--jobs", type=int, default=default_jobs,
                       help="worker processes for checks (default 1)")
    return flags


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qdissect", parents=[_common(False, 1)],
                description="Truncated q-series checks for overpartition congruences.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    # accepted after the subcommand too, without resetting a value given first
    common = _common(argparse.SUPPRESS, argparse.SUPPRESS)

    sp = sub.add_parser("expand", parents=[common], help="print coefficients of an expression")
    sp.add_argument("expression")
    sp.add_argument("--order", type=int)
    sp.add_argument("--mod", type=int)
    sp.set_defaults(func=cmd_expand)

    sp = sub.add_parser("oracle", parents=[common], help="count overpartitions directly")
    sp.add_argument("--l", type=int, required=True, help="restriction l (0: unrestricted)")
    sp.add_argument("--nmax", type=int, required=True)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("verify-identities", parents=[common], help="the dissection catalog")
    sp.add_argument("--order", type=int)
    sp.add_argument("--polys", action="store_true", help="also the polynomial reductions")
    sp.set_defaults(func=cmd_verify_identities)

    sp = sub.add_parser("check", parents=[common], help="congruence families and the full suite")
    sp.add_argument("--theorem", action="append", choices=["1.1", "1.2", "remark"])
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--budget", type=int, default=C.DEFAULT_BUDGET)
    sp.add_argument("--order", type=int)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("replay", parents=[common], help="run a .qds proof script")
    sp.add_argument("script", help="path, or the name of a shipped script")
    sp.set_defaults(func=cmd_replay)

    sp = sub.add_parser("scripts", parents=[common], help="list shipped scripts")
    sp.set_defaults(func=cmd_scripts)

    sp = sub.add_parser("qr", parents=[common], help="is target a square class mod m?")
    sp.add_argument("--target", type=int, required=True)
    sp.add_argument("--mod", type=int, required=True)
    sp.add_argument("--odd", action="store_true", help="odd squares only")
    sp.set_defaults(func=cmd_qr)

    sp = sub.add_parser("catalog", parents=[common], help="export the catalog as a script")
    sp.add_argument("--order", type=int)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        if getattr(args, "order", None) is not None and args.order < 1:
            raise UsageError("--order must be >= 1")
        return args.func(args)
    except UsageError as exc:
        print(f"qdissect: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:  # e.g. a bad QDISSECT_ORDER or modulus
        print(f"qdissect: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
