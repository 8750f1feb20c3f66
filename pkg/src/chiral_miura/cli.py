"""Command-line driver: ``chiral-miura {psido,table,verify,report}``.

Exit codes: 0 on success / all suites passing, 1 on a failing check or a
rejected input file, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .coeffring import VAR_ORDER, MultiPoly, var
from .lalg import TableConfig, build_table
from .psido import PsiDOSymbol, psido_inv, psido_mul
from .suites import (SUITES, Context, CorruptTable, cache_root, load_table, normalization_ledger,
                     obtain_table, report_json, report_text, run_suites)


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _order(text: str) -> MultiPoly:
    """An order is an integer or one of the known variable names."""
    try:
        return MultiPoly.const(int(text))
    except ValueError:
        pass
    if text not in VAR_ORDER:
        raise argparse.ArgumentTypeError(f"order must be an integer or one of {', '.join(VAR_ORDER)}")
    return var(text)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# psido


def cmd_psido(args) -> int:
    J = args.trunc
    if args.op == "mul":
        left = PsiDOSymbol.generic(args.left, args.left_order, J)
        if args.with_inverse:
            right = psido_inv(left, J)
        else:
            right = PsiDOSymbol.generic(args.right, args.right_order, J)
        result = psido_mul(left, right, J)
        name = "P"
    else:
        result = psido_inv(PsiDOSymbol.generic(args.left, args.left_order, J), J)
        name = "V"
    coeffs = {j: str(result.coeff(j)) for j in range(1, J + 1)}
    if args.format == "json":
        text = json.dumps({"order": str(result.order), "truncation": J,
                           "coeffs": {str(j): c for j, c in coeffs.items()}}, sort_keys=True, indent=1) + "\n"
    else:
        text = f"order: {result.order}\n" + "".join(f"{name}_{j} = {c}\n" for j, c in coeffs.items())
    _emit(text, args.out)
    return 0


# ---------------------------------------------------------------------------
# table


def _config(args) -> TableConfig:
    return TableConfig(pairs=args.pairs, weight=args.weight, s_min=args.s_min, budget=args.budget)


def cmd_table(args) -> int:
    config = _config(args)
    log = (lambda n, left: print(f"rank {n}: {left} entries pending", file=sys.stderr)) if args.verbose else None
    if args.no_cache:
        table = build_table(config, log)
        table.ledger = normalization_ledger()
        source = "built"
    else:
        table, path, hit = obtain_table(config, cache_root(args.cache), log)
        source = f"cache {'hit' if hit else 'miss'}: {path}"
    print(source, file=sys.stderr)
    text = table.dumps()
    if args.classical:
        from .classical import classical_limit

        text = json.dumps(classical_limit(table).to_json(), sort_keys=True, indent=1) + "\n"
    _emit(text, args.out)
    return 0


# ---------------------------------------------------------------------------
# verify / report


def cmd_verify(args) -> int:
    names = list(SUITES) if "all" in args.suite else list(dict.fromkeys(args.suite))
    table = load_table(Path(args.table)) if args.table else None
    ctx = Context(cache_root(args.cache), table)
    log = (lambda msg: print(msg, file=sys.stderr)) if args.verbose else None
    results = run_suites(names, ctx, args, log)
    js = json.dumps(report_json(results), sort_keys=True, indent=1) + "\n"
    txt = report_text(results)
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(js)
        (out / "report.txt").write_text(txt)
    sys.stdout.write(js if args.format == "json" else txt)
    return 0 if all(r.ok for r in results) else 1


def cmd_report(args) -> int:
    """Render a table file (or one entry of it) for reading."""
    table = load_table(Path(args.table)) if args.table else \
        obtain_table(_config(args), cache_root(args.cache))[0]
    keys = sorted(table.entries)
    if args.entry:
        want = tuple(int(x) for x in args.entry.split(","))
        if want not in table.entries:
            print(f"entry {want} not in table", file=sys.stderr)
            return 1
        keys = [want]
    if args.format == "json":
        data = {",".join(map(str, k)): str(table.entries[k]) for k in keys}
        text = json.dumps({"entries": data, "ledger": table.ledger}, sort_keys=True, indent=1) + "\n"
    else:
        lines = [f"(U_{i})_({s})(U_{j}) = {table.entries[(i, s, j)]}" for i, s, j in keys]
        if not args.entry:
            lines += ["", "normalization ledger:"] + [f"  {k}: {v}" for k, v in sorted(table.ledger.items())]
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


# ---------------------------------------------------------------------------
# parser


def _table_flags(p, defaults: TableConfig):
    p.add_argument("--pairs", type=_positive, default=defaults.pairs, help="tabulate i + j <= PAIRS")
    p.add_argument("--weight", type=int, default=defaults.weight, help="largest result weight")
    p.add_argument("--s-min", type=int, default=defaults.s_min, help="smallest mode index")
    p.add_argument("--budget", type=_positive, default=defaults.budget, help="sampled ranks per entry")


def build_parser() -> argparse.ArgumentParser:
    from .suites import MAIN_TABLE

    parser = argparse.ArgumentParser(prog="chiral-miura", description=__doc__.splitlines()[0])
    parser.add_argument("--cache", help="cache directory (default: $CHIRAL_MIURA_CACHE or ~/.cache/chiral_miura)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("psido", help="multiply or invert generic symbols")
    p.add_argument("op", choices=["mul", "inv"])
    p.add_argument("--trunc", "--truncation", dest="trunc", type=_positive, default=2)
    p.add_argument("--left", default="W", help="generator family of the left symbol")
    p.add_argument("--right", default="U", help="generator family of the right symbol")
    p.add_argument("--left-order", type=_order, default=var("lam"))
    p.add_argument("--right-order", type=_order, default=var("mu"))
    p.add_argument("--with-inverse", action="store_true", help="multiply the left symbol by its inverse")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_psido)

    p = sub.add_parser("table", help="build or load the structure table")
    _table_flags(p, MAIN_TABLE)
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--classical", action="store_true", help="write the classical bracket table instead")
    p.add_argument("--out")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", action="append", choices=sorted(SUITES) + ["all"], required=True)
    p.add_argument("--table", help="table file to verify instead of the cached default")
    p.add_argument("--n", type=_positive, help="rank for the thm4 and closure suites")
    p.add_argument("--seed", type=int, default=0, help="seed for the random nu specializations")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--out-dir")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="print table entries")
    _table_flags(p, MAIN_TABLE)
    p.add_argument("--table")
    p.add_argument("--entry", help="i,s,j")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CorruptTable as exc:
        print(f"error: rejected table file: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
