"""``detlab`` command line."""

import argparse
import json
import sys
import time

from . import __version__
from .algebra import as_scalar
from .checks import CHECKS, get_check
from .errors import ConfigError, DetlabError
from .report import STATUSES
from .suite import build_report, effective_budget, expand_values, load_config, run_suite, run_tasks, write_report

PARAM_FLAGS = ("n", "m", "x", "a", "b", "c", "alpha", "beta", "N", "seed", "degree", "family", "claim",
               "support", "enumerate_limit")


def number(text):
    """Integer or ``p/q``; ranges ``lo..hi`` and comma lists are kept as grids."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        int(lo), int(hi)
        return text
    if "," in text:
        return [number(t) for t in text.split(",")]
    try:
        return as_scalar(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an integer or p/q rational: {text!r}") from None


def _value(text):
    try:
        return number(text)
    except argparse.ArgumentTypeError:
        return text  # names such as --family T


def _add_params(p):
    for name in PARAM_FLAGS:
        p.add_argument(f"--{name}", type=_value, default=None, metavar="V")
    p.add_argument("--grid", default=None, help="JSON object of parameter grids")


def _grid_from_args(args):
    grid = {}
    if args.grid:
        try:
            grid.update(json.loads(args.grid))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"--grid is not JSON: {exc}", location="--grid") from None
    for name in PARAM_FLAGS:
        v = getattr(args, name, None)
        if v is not None:
            grid[name] = v
    return grid


def _instances(check_id, grid):
    check = get_check(check_id)
    keys = list(grid)
    axes = [expand_values(grid[k], f"--{k}") for k in keys]
    from itertools import product

    out = [dict(zip(keys, vals)) for vals in product(*axes)]
    allowed = set(check.required + check.optional)
    for point in out:
        missing = [p for p in check.required if p not in point]
        extra = [p for p in point if p not in allowed]
        if missing or extra:
            raise ConfigError(f"{check_id}: missing {missing}, unexpected {extra}", location=check_id)
    return out


def _line(rec):
    params = " ".join(f"{k}={v}" for k, v in rec["parameters"].items())
    tail = f" [{rec['code']}]" if rec.get("code") else ""
    return f"{rec['status'].upper():<16} {rec['id']} {params}{tail}"


def _run_and_report(check_id, args):
    grid = _grid_from_args(args)
    tasks = [(check_id, p) for p in _instances(check_id, grid)]
    t0 = time.perf_counter()
    budget = args.budget if args.budget is not None else effective_budget()
    quiet = args.out in (None, "-") and args.json
    records = run_tasks(tasks, budget, args.jobs, None if quiet else lambda r: print(_line(r)))
    report = build_report(records, {"command": check_id, "grid": grid}, time.perf_counter() - t0)
    if args.json or args.out:
        write_report(report, args.out)
    return 0 if report["passed"] else 1


def cmd_verify(args):
    return _run_and_report(args.check, args)


def cmd_ct(args):
    if not args.identity.startswith("ct."):
        raise ConfigError(f"{args.identity!r} is not a constant-term identity", location="ct")
    args.check = args.identity
    return _run_and_report(args.identity, args)


def cmd_list(args):
    for cid, check in CHECKS.items():
        params = ", ".join(check.required) + ("" if not check.optional else
                                              " [" + ", ".join(check.optional) + "]")
        print(f"{cid:<34} {params:<28} {check.describe()}")
    return 0


def _parse_support(text):
    out = []
    for part in text.split(";"):
        dn, dj = part.split(",")
        out.append((int(dn), int(dj)))
    return tuple(out)


def cmd_guess(args):
    from .holonomic import annihilates, compute_kernel_table, guess_recurrence, in_span, known_recurrences

    table = compute_kernel_table(args.m, args.x, args.N)
    supports = [_parse_support(s) for s in args.support] if args.support else \
        [rec.support for rec in known_recurrences()]
    known = {rec.support: rec for rec in known_recurrences(args.m, args.x)}
    status = 0
    for support in supports:
        basis = guess_recurrence(table, support, args.degree)
        print(f"support {list(support)}: {len(basis)} independent recurrence(s)")
        for rec in basis[:args.show]:
            print(f"  {rec}")
        bad = [rec for rec in basis if annihilates(rec, table)]
        if bad:
            status = 1
            print("  some guessed recurrence fails on the table")
        if support in known:
            found = in_span(basis, known[support], args.degree)
            print(f"  contains the known recurrence: {'yes' if found else 'no'}")
            status |= 0 if found else 1
    return status


def cmd_oracle(args):
    from .combinatorics import count_lgv_paths, count_plane_partitions

    box = (args.a, args.b, args.c)
    if args.kind == "pp":
        print(count_plane_partitions(box))
    else:
        print(count_lgv_paths(box, args.variant))
    return 0


def cmd_suite(args):
    config = load_config(args.config)
    progress = None if args.quiet else (lambda r: print(_line(r), file=sys.stderr))
    report, status = run_suite(config, jobs=args.jobs, progress=progress)
    write_report(report, args.out)
    counts = ", ".join(f"{s}={report['counts'][s]}" for s in STATUSES)
    print(f"{config.name}: {len(report['records'])} records; {counts}", file=sys.stderr)
    return status


def build_parser():
    p = argparse.ArgumentParser(prog="detlab", description=__doc__)
    p.add_argument("--version", action="version", version=f"detlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a registered check on a parameter grid")
    v.add_argument("check")
    _add_params(v)
    v.add_argument("--symbolic", action="store_true", help="leave x symbolic (the default when --x is absent)")
    v.add_argument("--budget", type=int, default=None)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--out", default=None, help="write the JSON report here")
    v.add_argument("--json", action="store_true", help="print the JSON report")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("ct", help="run a constant-term identity")
    c.add_argument("identity")
    _add_params(c)
    c.add_argument("--budget", type=int, default=None)
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--out", default=None)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_ct)

    g = sub.add_parser("guess", help="guess recurrences for the kernel table")
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--x", type=int, required=True)
    g.add_argument("--N", type=int, default=15)
    g.add_argument("--support", action="append", help="shifts as 'dn,dj;dn,dj;...' (repeatable)")
    g.add_argument("--degree", type=int, default=4)
    g.add_argument("--show", type=int, default=0, help="print this many basis recurrences")
    g.set_defaults(func=cmd_guess)

    o = sub.add_parser("oracle", help="brute-force plane partition and path counts")
    o.add_argument("kind", choices=("pp", "lgv"))
    o.add_argument("--a", type=int, required=True)
    o.add_argument("--b", type=int, required=True)
    o.add_argument("--c", type=int, required=True)
    o.add_argument("--variant", choices=("toeplitz", "shifted"), default="toeplitz")
    o.set_defaults(func=cmd_oracle)

    s = sub.add_parser("suite", help="run a suite config (or a bundled one: paper-full, smoke)")
    s.add_argument("--config", required=True)
    s.add_argument("--out", default=None)
    s.add_argument("--jobs", type=int, default=None)
    s.add_argument("--quiet", action="store_true")
    s.set_defaults(func=cmd_suite)

    ls = sub.add_parser("list", help="list registered checks")
    ls.set_defaults(func=cmd_list)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        where = exc.info.get("location")
        print(f"detlab: {exc.code}: {exc}" + (f" (at {where})" if where else ""), file=sys.stderr)
        return 2
    except DetlabError as exc:
        print(f"detlab: {exc.code}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
