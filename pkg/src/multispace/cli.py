"""Command-line frontend.

Subcommands: count, enumerate, hasse, distance, meet, join, mspan,
poly, roots, search, ball, bound, simulate.

Exit codes: 0 success, 1 usage or input error, 2 enumeration limit
exceeded, 3 a proven channel bound was violated (implementation bug).
Output defaults to a human table on a TTY and JSON when piped;
--format overrides.
"""

import argparse
import json
import math
import os
import sys

from .channel import ChannelConfig, end_to_end, run_trials, write_trial_csv
from .codes import (
    MultispaceCode,
    ball_size,
    codespace_growth,
    exhaustive_optimal_code,
    greedy_code,
    sphere_packing_bound,
)
from .errors import BoundViolation, FormatError, LimitExceeded, MultispaceError
from .fields import parse_field_spec
from .lattice import (
    Multispace,
    VectorMultiset,
    count_multispaces,
    distance,
    enumerate_multispaces,
    hasse_dot,
    join,
    meet,
    mspan,
)
from .linalg import subspace_distance
from .qpoly import LinearizedPoly, poly_from_multispace, roots_multiset


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def _read_json_arg(arg: str) -> dict:
    """Accept a path to a JSON file or an inline JSON literal."""
    text = arg
    if not arg.lstrip().startswith("{") and os.path.exists(arg):
        with open(arg) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON (or a readable file): {arg!r}") from exc


def _pick_format(args, default_piped="json"):
    if args.format:
        return args.format
    return "table" if sys.stdout.isatty() else default_piped


def _out(args):
    if getattr(args, "output", None):
        return open(args.output, "w")
    return sys.stdout


def _emit(args, doc: dict, table_lines: list[str]):
    fmt = _pick_format(args)
    fh = _out(args)
    try:
        if fmt == "json":
            fh.write(json.dumps(doc, indent=2) + "\n")
        else:
            fh.write("\n".join(table_lines) + "\n")
    finally:
        if fh is not sys.stdout:
            fh.close()


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_count(args) -> int:
    ctx = parse_field_spec(args.q_spec)
    rows = []
    cumulative = 0
    for j in range(args.m + 1):
        c = count_multispaces(args.n, j, ctx.q)
        cumulative += c
        rows.append({"rank": j, "count": c, "cumulative": cumulative})
    doc = {"q-spec": ctx.spec, "n": args.n, "rows": rows}
    if _pick_format(args) == "csv":
        lines = ["rank,count,cumulative"]
        lines += [f"{r['rank']},{r['count']},{r['cumulative']}" for r in rows]
        fh = _out(args)
        try:
            fh.write("\n".join(lines) + "\n")
        finally:
            if fh is not sys.stdout:
                fh.close()
        return 0
    lines = [f"{'rank':>4}  {'count':>12}  {'cumulative':>12}"]
    lines += [f"{r['rank']:>4}  {r['count']:>12}  {r['cumulative']:>12}" for r in rows]
    _emit(args, doc, lines)
    return 0


def cmd_enumerate(args) -> int:
    ctx = parse_field_spec(args.q_spec)
    words = list(enumerate_multispaces(ctx, args.n, args.m))
    doc = {"q-spec": ctx.spec, "n": args.n, "m": args.m, "multispaces": [w.to_dict() for w in words]}
    lines = [f"rank {args.m}: {len(words)} multispaces"]
    lines += [f"  dim {w.dim} ht {w.height} basis {w.underlying.basis.tolist()}" for w in words]
    _emit(args, doc, lines)
    return 0


def cmd_hasse(args) -> int:
    ctx = parse_field_spec(args.q_spec)
    hd = hasse_dot(ctx, args.n, args.m_max)
    fh = _out(args)
    try:
        fh.write(hd.dot)
    finally:
        if fh is not sys.stdout:
            fh.close()
    print(
        f"nodes: {hd.nodes} edges: {hd.edges} per-rank: {'/'.join(map(str, hd.rank_sizes))}",
        file=sys.stderr,
    )
    return 0


def _load_multispace(arg: str) -> Multispace:
    return Multispace.from_dict(_read_json_arg(arg))


def cmd_distance(args) -> int:
    w1 = _load_multispace(args.w1)
    w2 = _load_multispace(args.w2)
    d = distance(w1, w2)
    ds = subspace_distance(w1.underlying, w2.underlying)
    dh = abs(w1.height - w2.height)
    doc = {"distance": d, "underlying_distance": ds, "height_distance": dh}
    _emit(args, doc, [f"distance: {d}", f"  underlying: {ds}", f"  height: {dh}"])
    return 0


def cmd_meet(args) -> int:
    w = meet(_load_multispace(args.w1), _load_multispace(args.w2))
    _emit(args, w.to_dict(), [f"dim {w.dim} ht {w.height} basis {w.underlying.basis.tolist()}"])
    return 0


def cmd_join(args) -> int:
    w = join(_load_multispace(args.w1), _load_multispace(args.w2))
    _emit(args, w.to_dict(), [f"dim {w.dim} ht {w.height} basis {w.underlying.basis.tolist()}"])
    return 0


def cmd_mspan(args) -> int:
    b = VectorMultiset.from_dict(_read_json_arg(args.vectors))
    w = mspan(b)
    _emit(args, w.to_dict(), [f"dim {w.dim} ht {w.height} rank {w.rank} basis {w.underlying.basis.tolist()}"])
    return 0


def cmd_poly(args) -> int:
    w = _load_multispace(args.w)
    L = poly_from_multispace(w)
    doc = L.to_dict()
    _emit(args, doc, [L.text(), f"subfield degree: {L.coefficient_subfield_degree()}"])
    return 0


def cmd_roots(args) -> int:
    L = LinearizedPoly.from_dict(_read_json_arg(args.poly))
    w = roots_multiset(L)
    _emit(args, w.to_dict(), [f"dim {w.dim} ht {w.height} rank {w.rank} basis {w.underlying.basis.tolist()}"])
    return 0


def cmd_search(args) -> int:
    ctx = parse_field_spec(args.q_spec)
    if args.optimal:
        code = exhaustive_optimal_code(ctx, args.n, args.m_max, args.d_min)
    else:
        code = greedy_code(ctx, args.n, args.m_max, args.d_min, seed=args.seed)
    bound = sphere_packing_bound(ctx, args.n, args.m_max, args.d_min)
    verified = None if code.min_distance == math.inf else int(code.min_distance)
    doc = code.to_dict()
    doc["packing_bound"] = bound
    doc["seed"] = args.seed
    doc["method"] = "optimal" if args.optimal else "greedy"
    if args.csv:
        opt_col = len(code) if args.optimal else ""
        print("q,n,m_max,d_min,greedy_size,optimal_size,packing_bound,seed")
        print(
            f"{ctx.q},{args.n},{args.m_max},{args.d_min},"
            f"{'' if args.optimal else len(code)},{opt_col},{bound},{args.seed}"
        )
        return 0
    lines = [
        f"size: {len(code)}",
        f"verified min distance: {'inf' if verified is None else verified}",
        f"packing bound: {bound}",
    ]
    if args.output:
        # --output names the code file; the stats summary goes to stdout
        with open(args.output, "w") as fh:
            fh.write(json.dumps(doc, indent=2) + "\n")
        args.output = None
        doc = {"written": True, "size": len(code), "min_distance": verified, "packing_bound": bound}
    _emit(args, doc, lines)
    return 0


def cmd_ball(args) -> int:
    w = _load_multispace(args.center)
    size = ball_size(w, args.radius, args.m_max)
    _emit(args, {"center_rank": w.rank, "radius": args.radius, "size": size}, [f"ball size: {size}"])
    return 0


def cmd_bound(args) -> int:
    ctx = parse_field_spec(args.q_spec)
    b = sphere_packing_bound(ctx, args.n, args.m_max, args.d_min)
    space = codespace_growth(ctx, args.n, args.m_max)
    doc = {"packing_bound": b, "space_size": space}
    _emit(args, doc, [f"packing bound: {b}", f"space size: {space}"])
    return 0


def cmd_simulate(args) -> int:
    code = MultispaceCode.from_dict(_read_json_arg(args.code))
    cfg = ChannelConfig(
        mode=args.mode, trials=args.trials, s=args.s, seed=args.seed,
        random_generator=args.random_generator,
    )
    if args.end_to_end:
        summary = end_to_end(code, cfg)
        doc = summary.to_dict()
    else:
        if len(code) == 0:
            raise FormatError("code file holds no codewords")
        run = run_trials(code.codewords[args.codeword], cfg)
        if args.trial_log:
            with open(args.trial_log, "w", newline="") as fh:
                write_trial_csv(run.records, fh)
        summary = run.summary
        doc = summary.to_dict()
    lines = [f"trials: {summary.trials}", f"violations: {summary.violations}",
             f"max distance: {summary.max_distance}"]
    hist = ", ".join(f"{k}:{v}" for k, v in sorted(summary.histogram.items()))
    lines.append(f"histogram: {hist}")
    if hasattr(summary, "block_error_rate"):
        lines.append(f"block error rate: {summary.block_error_rate}")
    _emit(args, doc, lines)
    return 3 if summary.violations else 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    p = _Parser(prog="multispace", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--format", choices=["table", "json", "csv", "dot"], default=None)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, **kwargs):
        sp = sub.add_parser(name, **kwargs)
        sp.set_defaults(func=fn)
        return sp

    sp = add("count", cmd_count, help="per-rank multispace counts and cumulative code-space size")
    sp.add_argument("q_spec")
    sp.add_argument("n", type=int)
    sp.add_argument("m", type=int)
    sp.add_argument("--output")

    sp = add("enumerate", cmd_enumerate, help="list all multispaces of one rank")
    sp.add_argument("q_spec")
    sp.add_argument("n", type=int)
    sp.add_argument("m", type=int)
    sp.add_argument("--output")

    sp = add("hasse", cmd_hasse, help="DOT Hasse diagram up to a rank cap")
    sp.add_argument("q_spec")
    sp.add_argument("n", type=int)
    sp.add_argument("m_max", type=int)
    sp.add_argument("--output")

    sp = add("distance", cmd_distance, help="lattice distance with its decomposition")
    sp.add_argument("w1")
    sp.add_argument("w2")
    sp.add_argument("--output")

    sp = add("meet", cmd_meet, help="greatest lower bound of two multispaces")
    sp.add_argument("w1")
    sp.add_argument("w2")
    sp.add_argument("--output")

    sp = add("join", cmd_join, help="least upper bound of two multispaces")
    sp.add_argument("w1")
    sp.add_argument("w2")
    sp.add_argument("--output")

    sp = add("mspan", cmd_mspan, help="multispan of a vector multiset")
    sp.add_argument("vectors")
    sp.add_argument("--output")

    sp = add("poly", cmd_poly, help="linearized polynomial of a multispace")
    sp.add_argument("w")
    sp.add_argument("--output")

    sp = add("roots", cmd_roots, help="multispace of the roots of a linearized polynomial")
    sp.add_argument("poly")
    sp.add_argument("--output")

    sp = add("search", cmd_search, help="greedy or certified-optimal code construction")
    sp.add_argument("q_spec")
    sp.add_argument("n", type=int)
    sp.add_argument("m_max", type=int)
    sp.add_argument("d_min", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--optimal", action="store_true")
    sp.add_argument("--csv", action="store_true")
    sp.add_argument("--output")

    sp = add("ball", cmd_ball, help="metric ball size around a multispace")
    sp.add_argument("center")
    sp.add_argument("radius", type=int)
    sp.add_argument("m_max", type=int)
    sp.add_argument("--output")

    sp = add("bound", cmd_bound, help="sphere-packing upper bound on code size")
    sp.add_argument("q_spec")
    sp.add_argument("n", type=int)
    sp.add_argument("m_max", type=int)
    sp.add_argument("d_min", type=int)
    sp.add_argument("--output")

    sp = add("simulate", cmd_simulate, help="channel simulation against a code file")
    sp.add_argument("code")
    sp.add_argument("--mode", choices=["full-rank", "deletion", "rank-deficient", "compound"], required=True)
    sp.add_argument("--s", type=int, default=0)
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--codeword", type=int, default=0, help="codeword index for single-word runs")
    sp.add_argument("--end-to-end", action="store_true", help="sample codewords and decode")
    sp.add_argument("--random-generator", action="store_true", help="send a random generating multiset")
    sp.add_argument("--trial-log", help="write per-trial CSV here")
    sp.add_argument("--output")

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except LimitExceeded as exc:
        print(f"limit exceeded: {exc}", file=sys.stderr)
        return 2
    except BoundViolation as exc:
        print(f"bound violation: {exc}", file=sys.stderr)
        return 3
    except MultispaceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
