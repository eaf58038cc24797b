"""Command-line interface: ``mindtree <command> ...``.

Exit codes: 0 success, 1 domain or input error, 2 usage error,
3 verification failure. Exact values print as integers or ``p/q``;
binary64 results print as hex-float followed by decimal.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import counting, formulas, oracle, sumplan
from .errors import DomainError
from .io import serialize
from .mind import enumerate_mind, mind_ascending, mind_descending
from .tree import (
    colless_index,
    make_complete_full_binary,
    make_divide_and_conquer,
    make_ladder,
    make_perfect,
    sd_label,
)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2
EXIT_VERIFY = 3

DEFAULT_ENUM_WEIGHT = 7


def _q(x):
    """Exact rational as ``p`` or ``p/q``."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _jsonable(x):
    if isinstance(x, Fraction):
        return _q(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _dump(obj):
    return json.dumps(_jsonable(obj), indent=2) + "\n"


def _csv(header, rows):
    lines = [",".join(header)]
    lines.extend(",".join("" if c is None else str(c) for c in row) for row in rows)
    return "\n".join(lines) + "\n"


def _text_table(header, rows):
    cells = [list(header)] + [["" if c is None else str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "\n".join(" ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() for r in cells) + "\n"


def _emit_records(header, rows, fmt):
    if fmt == "csv":
        return _csv(header, rows)
    if fmt == "json":
        return _dump([dict(zip(header, row)) for row in rows])
    if fmt == "text":
        return _text_table(header, rows)
    raise DomainError(f"format {fmt!r} is not available for this command")


def _tree_output(tree, fmt):
    if fmt in ("newick", "dot", "json"):
        out = serialize(tree, fmt)
        return out if out.endswith("\n") else out + "\n"
    if fmt == "text":
        sd = sd_label(tree)
        return (
            f"leaves={tree.n_leaves} s={sd.s_count} d={sd.d_count} "
            f"colless={colless_index(tree)}\n{serialize(tree, 'newick')}\n"
        )
    raise DomainError(f"format {fmt!r} is not available for trees")


# construct ---------------------------------------------------------------


def _cmd_construct(args):
    kind = args.kind
    if kind == "perfect":
        if args.k is None and args.n is None:
            raise DomainError("perfect needs --k or --n")
        if args.k is not None:
            k = args.k
        else:
            if args.n < 1 or args.n & (args.n - 1):
                raise DomainError(f"perfect trees need a power-of-two leaf count, got {args.n}")
            k = args.n.bit_length() - 1
        if k < 0:
            raise DomainError("k must be >= 0")
        tree = make_perfect(k)
    else:
        if args.n is None:
            raise DomainError(f"{kind} needs --n")
        if args.n < 1:
            raise DomainError("n must be >= 1")
        if kind == "ladder":
            tree = make_ladder(args.n)
        elif kind == "dac":
            tree = make_divide_and_conquer(args.n)
        elif kind == "cfb":
            tree = make_complete_full_binary(args.n)
        else:
            tree = mind_descending(args.n) if args.order == "desc" else mind_ascending(args.n)
    return _tree_output(tree, args.format)


# count ---------------------------------------------------------------------


def _cmd_count(args):
    what = args.what
    fmt = args.format
    if what == "theta":
        n_max = args.n_max if args.n_max is not None else args.n
        if n_max is None:
            raise DomainError("theta needs --n-max")
        table = counting.theta_table(n_max, args.convention)
        if fmt == "csv":
            return table.to_csv(args.view)
        if fmt == "json":
            rows = {n: (table.rows[n] if args.view == "s" else table.d_row(n)) for n in table.rows}
            return _dump({"n_max": n_max, "view": args.view, "convention": args.convention,
                          "rows": rows, "alpha": table.alpha})
        if fmt == "text":
            lines = table.to_csv(args.view).splitlines()
            return _text_table(lines[0].split(","), [line.split(",") for line in lines[1:]])
        raise DomainError(f"format {fmt!r} is not available for theta")
    ns = _n_range(args)
    if what == "alpha":
        rows = [(n, counting.alpha(n, args.convention)) for n in ns]
        return _emit_records(["n", "alpha"], rows, fmt)
    if what == "products":
        if args.s is None:
            rows = [(n, counting.total_products(n)) for n in ns]
            return _emit_records(["n", "products"], rows, fmt)
        rows = [(n, args.s, counting.products_for_form(n, args.s)) for n in ns]
        return _emit_records(["n", "s", "products_per_form"], rows, fmt)
    if what == "dac-products":
        rows = [(n, counting.dac_products(n, args.method or "closed")) for n in ns]
        return _emit_records(["n", "dac_products"], rows, fmt)
    if what == "bounds":
        rows = []
        for n in ns:
            b = counting.s_bounds(n)
            rows.append((n, b.s_min, b.s_max, b.d_min, b.pow2_in_factorial))
        return _emit_records(["n", "s_min", "s_max", "d_min", "pow2_in_factorial"], rows, fmt)
    raise DomainError(f"unknown count {what!r}")


def _n_range(args):
    if args.n is not None:
        return [args.n]
    if getattr(args, "n_max", None) is not None:
        return list(range(1, args.n_max + 1))
    raise DomainError("give --n or --n-max")


# formulas ------------------------------------------------------------------


def _cmd_formulas(args):
    what = args.what
    ns = _n_range(args)
    rows = []
    if what == "sigma":
        for n in ns:
            rows.append((n, formulas.sigma(n, args.method or "recursive")))
        header = ["n", "sigma"]
    elif what == "delta":
        for n in ns:
            rows.append((n, formulas.delta(n, args.method or "recursive")))
        header = ["n", "delta"]
    elif what == "cdesc":
        rows = [(n, formulas.c_desc(n)) for n in ns]
        header = ["n", "c_desc"]
    elif what == "casc":
        rows = [(n, formulas.c_asc(n, args.method or "recurrence")) for n in ns]
        header = ["n", "c_asc"]
    elif what == "normalized":
        for n in ns:
            c = args.c if args.c is not None else formulas.c_asc(n)
            rows.append((n, c, _q(formulas.normalized_colless(c, n))))
        header = ["n", "c", "normalized"]
    else:
        raise DomainError(f"unknown formula {what!r}")
    return _emit_records(header, rows, args.format)


# takagi / sweep ------------------------------------------------------------


def _cmd_takagi(args):
    k = args.k
    if k < 0:
        raise DomainError("k must be >= 0")
    rows = []
    for r in range(2**k + 1):
        tau = formulas.takagi_dyadic(r, k, args.method).value
        rows.append((r, _q(Fraction(r, 2**k)), _q(tau)))
    return _emit_records(["r", "x", "tau"], rows, args.format)


SWEEP_HEADER = ["n", "sigma", "delta", "delta_cfb", "c_desc", "c_asc", "c_max", "normalized_c_asc"]


def _cmd_sweep(args):
    if args.n_max < 1:
        raise DomainError("n_max must be >= 1")
    rows = []
    for n in range(1, args.n_max + 1):
        asc = formulas.c_asc(n)
        norm = _q(formulas.normalized_colless(asc, n)) if n >= 4 else None
        rows.append(
            (
                n,
                formulas.sigma(n),
                formulas.delta(n),
                formulas.delta_cfb(n),
                formulas.c_desc(n),
                asc,
                formulas.c_max(n),
                norm,
            )
        )
    return _emit_records(SWEEP_HEADER, rows, args.format)


# enumerate -----------------------------------------------------------------


def _cmd_enumerate(args):
    trees = enumerate_mind(args.n, max_weight=args.max_weight)
    if args.format == "newick":
        return "".join(serialize(t, "newick") + "\n" for t in trees)
    if args.format == "json":
        return _dump(
            [
                {"index": i, "colless": colless_index(t), "newick": serialize(t, "newick")}
                for i, t in enumerate(trees)
            ]
        )
    if args.format in ("csv", "text"):
        rows = [(i, colless_index(t), serialize(t, "newick")) for i, t in enumerate(trees)]
        if args.format == "csv":
            return _csv(["index", "colless", "newick"], rows)
        return _text_table(["index", "colless", "newick"], rows)
    raise DomainError(f"format {args.format!r} is not available for enumerate")


# verify --------------------------------------------------------------------


def _cmd_verify(args):
    if args.n is not None:
        lo = hi = args.n
    elif args.n_max is not None:
        lo, hi = 1, args.n_max
    else:
        raise DomainError("give --n or --n-max")
    if not 1 <= lo <= hi <= oracle.MAX_SHAPE_N:
        raise DomainError(f"verification supports 1 <= n <= {oracle.MAX_SHAPE_N}")
    names = ["theta", "mind", "colless", "incremental"] if args.check == "all" else [args.check]
    fns = {
        "theta": oracle.verify_theta,
        "mind": oracle.verify_mind,
        "colless": oracle.verify_colless_extremes,
        "incremental": oracle.verify_incremental,
    }
    reports = [fns[name](n) for name in names for n in range(lo, hi + 1)]
    ok = all(r["pass"] for r in reports)
    if args.format == "text":
        out = "".join(
            f"{r['check']:<12} n={r['n']:<3} {'pass' if r['pass'] else 'FAIL'}\n" for r in reports
        )
    else:
        out = _dump({"pass": ok, "reports": reports})
    return out, (EXIT_OK if ok else EXIT_VERIFY)


# sum -----------------------------------------------------------------------


PLANS = {
    "mind": sumplan.heuristic_mind_plan,
    "ladder": sumplan.ladder_plan,
    "dac": sumplan.dac_plan,
}


def _read_values(path):
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return sumplan.parse_values(text)


def _cmd_sum(args):
    values = _read_values(args.input)
    if not values:
        raise DomainError("no values to sum")
    plan = PLANS[args.plan](values)
    if args.action == "plan":
        fmt = "newick" if args.format == "text" else args.format
        return _tree_output(plan.tree, fmt)
    if args.format in ("newick", "dot"):
        raise DomainError(f"format {args.format!r} only applies to 'sum plan'")
    if args.action == "eval":
        result = sumplan.evaluate(plan)
        if args.format == "json":
            return _dump({"plan": args.plan, "result": sumplan.format_float(result)})
        return sumplan.format_float(result) + "\n"
    report = sumplan.error_report(plan)
    if args.format == "text":
        return "".join(f"{k}: {v}\n" for k, v in report.to_dict().items())
    return _dump({"plan": args.plan, **report.to_dict()})


# parser --------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mindtree",
        description="S/D-node counts, Colless extremes and summation plans for full binary trees.",
    )
    parser.add_argument(
        "--threads", type=int, default=1,
        help="upper bound on worker threads (results never depend on it)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a named tree shape")
    p.add_argument("kind", choices=["ladder", "dac", "cfb", "perfect", "mind"])
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int, help="exponent for perfect trees")
    p.add_argument("--base", choices=["ladder"], default="ladder")
    p.add_argument("--order", choices=["desc", "asc"], default="desc")
    p.add_argument("--format", choices=["newick", "dot", "json", "text"], default="newick")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("count", help="exact counts of forms and products")
    p.add_argument("what", choices=["alpha", "theta", "products", "dac-products", "bounds"])
    p.add_argument("--n", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--s", type=int, help="S-node count for products per form")
    p.add_argument("--view", choices=["s", "d"], default="s")
    p.add_argument("--convention", choices=list(counting.CONVENTIONS), default="form")
    p.add_argument("--method", choices=["closed", "david"])
    p.add_argument("--format", choices=["csv", "json", "text"], default="csv")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("formulas", help="evaluate a scalar formula")
    p.add_argument("what", choices=["sigma", "delta", "cdesc", "casc", "normalized"])
    p.add_argument("--n", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--method", help="evaluation method where several exist")
    p.add_argument("--c", type=int, help="Colless index to normalize (default c_asc(n))")
    p.add_argument("--format", choices=["csv", "json", "text"], default="csv")
    p.set_defaults(func=_cmd_formulas)

    p = sub.add_parser("takagi", help="Takagi function at every r/2^k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", choices=list(formulas.TAKAGI_METHODS), default="via_delta")
    p.add_argument("--format", choices=["csv", "json", "text"], default="csv")
    p.set_defaults(func=_cmd_takagi)

    p = sub.add_parser("enumerate", help="list every MinD tree on n leaves")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-weight", type=int, default=DEFAULT_ENUM_WEIGHT)
    p.add_argument("--format", choices=["newick", "json", "csv", "text"], default="newick")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("sweep", help="per-n table of counts and Colless extremes")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--format", choices=["csv", "json", "text"], default="csv")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("verify", help="brute-force checks against enumerated shapes")
    p.add_argument("check", choices=["theta", "mind", "colless", "incremental", "all"])
    p.add_argument("--n", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("sum", help="binary64 summation along a tree")
    p.add_argument("action", choices=["eval", "plan", "report"])
    p.add_argument("--input", default="-", help="file with one value per line, or - for stdin")
    p.add_argument("--plan", choices=list(PLANS), default="mind")
    p.add_argument("--format", choices=["json", "text", "newick", "dot"], default="json")
    p.set_defaults(func=_cmd_sum)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    if args.threads < 1:
        parser.print_usage(sys.stderr)
        print("mindtree: error: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        result = args.func(args)
    except (ValueError, OSError) as exc:  # DomainError and parse errors included
        print(f"mindtree: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    code = EXIT_OK
    if isinstance(result, tuple):
        result, code = result
    sys.stdout.write(result)
    return code


if __name__ == "__main__":
    sys.exit(main())
