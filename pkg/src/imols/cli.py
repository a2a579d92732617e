"""Command-line interface.

Exit codes: 0 success / verification passed, 1 construction, verification or
input failure (with a report on stderr or stdout), 2 usage error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

from . import admissibility as adm
from .compositions import (
    ConstructionError,
    fill_gdd,
    fill_hole,
    fill_igdd,
    glue_ipbd,
    ipbd_from_resolvable,
    replace_blocks,
    truncate_group,
    wilson_expand,
)
from .core import BlockDesign, DesignError, GroupedDesign, IncompleteSquare, SquareSet
from .formats import emit_design, emit_json, emit_square, emit_square_set, parse_design, parse_square_set
from .galois import idempotent_mols, mols_from_field
from .planner import PlanError, plan_imols
from .search import Outcome, search_block_design, search_square_set
from .verify import (
    Report,
    verify_block_design,
    verify_grouped_design,
    verify_idempotent,
    verify_incomplete_latin,
    verify_resolution,
    verify_square_set,
)


class Failure(Exception):
    """A reportable failure: exit status 1."""


def _sizes(text: str) -> list[int]:
    try:
        out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not out:
        raise argparse.ArgumentTypeError("empty list")
    return out


def _read_design(path: str) -> BlockDesign | GroupedDesign:
    return parse_design(Path(path).read_text())


def _read_block_design(path: str) -> BlockDesign:
    d = _read_design(path)
    if not isinstance(d, BlockDesign):
        raise Failure(f"{path}: expected a block design, found a grouped design")
    return d


def _read_grouped(path: str) -> GroupedDesign:
    d = _read_design(path)
    if not isinstance(d, GroupedDesign):
        raise Failure(f"{path}: expected a grouped design, found a block design")
    return d


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _verify_any(obj: Any, K: Any = None) -> Report:
    if isinstance(obj, SquareSet):
        return verify_square_set(obj)
    if isinstance(obj, IncompleteSquare):
        return verify_incomplete_latin(obj)
    if isinstance(obj, GroupedDesign):
        return verify_grouped_design(obj, K)
    return verify_block_design(obj, K)


def _emit_any(obj: Any) -> str:
    if isinstance(obj, SquareSet):
        return emit_square_set(obj)
    return emit_design(obj)


def _finish(obj: Any, args: argparse.Namespace, K: Any = None) -> int:
    report = _verify_any(obj, K)
    if not report.ok:
        raise Failure(str(report))
    text = _emit_any(obj)
    _write(text, args.out)
    if args.out not in (None, "-"):
        # verify again from the bytes on disk
        again = _verify_any(_load(args.out, None), K)
        if not again.ok:
            raise Failure(f"re-read of {args.out}:\n{again}")
    print(report, file=sys.stderr)
    return 0


def _load(path: str, kind: str | None) -> Any:
    text = Path(path).read_text()
    if kind is None:
        kind = "design" if text.lstrip().startswith("{") else "set"
    if kind in ("design", "grouped"):
        d = parse_design(text)
        if kind == "grouped" and not isinstance(d, GroupedDesign):
            raise Failure(f"{path}: expected a grouped design")
        if kind == "design" and not isinstance(d, (BlockDesign, GroupedDesign)):
            raise Failure(f"{path}: not a design")
        return d
    ss = parse_square_set(text)
    if kind == "square":
        if ss.t != 1:
            raise Failure(f"{path}: expected one square, found {ss.t}")
        return ss.squares[0]
    return ss


# ---------------------------------------------------------------- verify


def cmd_verify(args: argparse.Namespace) -> int:
    obj = _load(args.file, args.kind)
    reports = [_verify_any(obj, args.K)]
    if isinstance(obj, BlockDesign) and obj.resolution is not None:
        reports.append(verify_resolution(obj))
    if args.idempotent:
        squares = obj.squares if isinstance(obj, SquareSet) else (obj,) if isinstance(obj, IncompleteSquare) else ()
        reports += [verify_idempotent(s) for s in squares]
    for r in reports:
        print(r)
    return 0 if all(r.ok for r in reports) else 1


# ---------------------------------------------------------------- admissible


def _need(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        args.parser.error(f"missing required option(s) {' '.join(missing)}")


def cmd_admissible(args: argparse.Namespace) -> int:
    kind = args.kind
    if kind == "pbd":
        _need(args, "v", "K")
        conds = adm.pbd_conditions(args.v, args.K)
    elif kind == "ipbd":
        _need(args, "v", "w", "K")
        conds = adm.ipbd_conditions(args.v, args.w, args.K)
        conds[f"v >= (k-1)w + 1 = {(min(args.K) - 1) * args.w + 1}"] = adm.ipbd_inequality(args.v, args.w, args.K)
    elif kind == "gdd":
        _need(args, "g", "u", "K")
        conds = adm.gdd_conditions(args.g, args.u, args.K)
    elif kind == "igdd":
        _need(args, "g", "h", "u", "K")
        conds = adm.igdd_conditions(args.g, args.h, args.u, args.K)
    elif kind == "imols":
        _need(args, "t", "n", "m")
        conds = {f"n >= (t+1)m: {args.n} >= {(args.t + 1) * args.m}": adm.imols_bound(args.t, args.n, args.m)}
    else:
        _need(args, "v", "k")
        conds = adm.pbd_conditions(args.v, [args.k])
        conds[f"v = k mod k(k-1) = {args.k * (args.k - 1)}"] = adm.rpbd_admissible(args.v, args.k)
    for name, ok in conds.items():
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
    ok = all(conds.values())
    print("admissible" if ok else "not admissible")
    return 0 if ok else 1


# ---------------------------------------------------------------- construct


def _by_type(paths: Sequence[str], key: Callable[[Any], Any], reader: Callable[[str], Any]) -> dict[Any, Any]:
    out: dict[Any, Any] = {}
    for p in paths or ():
        d = reader(p)
        out[key(d)] = d
    return out


def cmd_construct(args: argparse.Namespace) -> int:
    what = args.what
    K = args.K
    if what in ("mols", "idempotent-mols"):
        _need(args, "q")
        ss = mols_from_field(args.q) if what == "mols" else idempotent_mols(args.q)
        if args.t is not None:
            if args.t > ss.t:
                raise Failure(f"GF({args.q}) gives only {ss.t} squares, asked for {args.t}")
            ss = ss.take(args.t)
        if what == "idempotent-mols":
            bad = [r for r in map(verify_idempotent, ss.squares) if not r.ok]
            if bad:
                raise Failure("\n".join(map(str, bad)))
        return _finish(ss, args)
    if what == "imols":
        _need(args, "ipbd", "t")
        d = _read_block_design(args.ipbd)
        if args.templates != "auto":
            args.parser.error("only --templates auto is supported")
        templates = {k: idempotent_mols(k) for k in sorted(d.block_sizes())}
        return _finish(glue_ipbd(d, templates, args.t), args)
    if what == "wilson":
        _need(args, "master", "weights")
        master = _read_grouped(args.master)
        weights = args.weights * master.v if len(args.weights) == 1 else args.weights
        if len(weights) != master.v:
            raise Failure(f"need 1 or {master.v} weights, got {len(args.weights)}")
        ings = _by_type(args.ingredient, lambda d: tuple(sorted(len(g) for g in d.groups)), _read_grouped)
        supplier = lambda key: ings.get(tuple(x for x in key if x))  # noqa: E731
        return _finish(wilson_expand(master, weights, supplier, K), args, K)
    if what == "fill-gdd":
        _need(args, "design", "group", "i")
        fillers = _by_type(args.filler, lambda d: d.v - args.i, _read_block_design)
        return _finish(fill_gdd(_read_grouped(args.design), args.group - 1, args.i, fillers, K), args, K)
    if what == "fill-igdd":
        _need(args, "design", "i")
        fillers = _by_type(args.filler, lambda d: (d.v - args.i, max(d.w - args.i, 0)), _read_block_design)
        return _finish(fill_igdd(_read_grouped(args.design), args.i, fillers, K), args, K)
    if what == "from-resolvable":
        _need(args, "design")
        return _finish(ipbd_from_resolvable(_read_block_design(args.design)), args)
    if what == "replace-blocks":
        _need(args, "design")
        fillers = _by_type(args.filler, lambda d: d.v, _read_block_design)
        return _finish(replace_blocks(_read_block_design(args.design), fillers, K), args, K)
    if what == "truncate":
        _need(args, "design", "group", "keep")
        return _finish(truncate_group(_read_grouped(args.design), args.group - 1, args.keep), args)
    _need(args, "outer", "inner")
    out = fill_hole(_read_block_design(args.outer), _read_block_design(args.inner), K)
    return _finish(out, args, K)


# ---------------------------------------------------------------- plan / search


def cmd_plan(args: argparse.Namespace) -> int:
    ipbd = _read_block_design(args.ipbd) if args.ipbd else None
    plan = plan_imols(args.t, args.n, args.m, ipbd=ipbd, search_budget=args.budget)
    sys.stdout.write(emit_json(plan.to_json()))
    if not args.materialize:
        return 0
    if not plan.materialized:
        raise Failure(f"plan for {args.t}-IMOLS({args.n};{args.m}) is certificate-only and cannot be materialized")
    ss = plan.execute()
    report = verify_square_set(ss)
    print(report, file=sys.stderr)
    if not report.ok:
        return 1
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for k, s in enumerate(ss.squares, start=1):
        path = out_dir / f"square-{k}.txt"
        path.write_text(emit_square(s))
        print(f"wrote {path}", file=sys.stderr)
    return 0


def cmd_search(args: argparse.Namespace) -> int:
    if args.what == "imols":
        _need(args, "n", "m", "t")
        hole = None if args.hole is None else [h - 1 for h in args.hole]
        res = search_square_set(args.n, args.m, args.t, hole=hole, budget=args.budget)
        found = res.squares
    else:
        _need(args, "v", "w", "K")
        res = search_block_design(args.v, args.w, args.K, budget=args.budget)
        found = res.design
    manifest = emit_json(res.manifest())
    if args.manifest:
        Path(args.manifest).write_text(manifest)
    else:
        sys.stderr.write(manifest)
    if res.outcome is not Outcome.FOUND:
        print(f"{res.outcome.value} after {res.nodes} nodes", file=sys.stderr)
        return 1
    return _finish(found, args)


# ---------------------------------------------------------------- parser


def _budget(text: str) -> int:
    try:
        b = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"budget must be a positive integer, got {text!r}") from None
    if b < 1:
        raise argparse.ArgumentTypeError(f"budget must be a positive integer, got {text!r}")
    return b


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="imols", description="Incomplete MOLS and the block designs behind them.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check a square, square set or design file")
    v.add_argument("file")
    v.add_argument("--kind", choices=["square", "set", "design", "grouped"])
    v.add_argument("--K", type=_sizes, help="allowed block sizes, e.g. 3,4")
    v.add_argument("--idempotent", action="store_true", help="also require L(i,i) = i")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("admissible", help="print the necessary conditions for a parameter set")
    a.add_argument("kind", choices=["pbd", "ipbd", "gdd", "igdd", "imols", "rpbd"])
    for name in ("v", "w", "g", "h", "u", "t", "n", "m", "k"):
        a.add_argument(f"--{name}", type=int)
    a.add_argument("--K", type=_sizes)
    a.set_defaults(func=cmd_admissible, parser=a)

    c = sub.add_parser("construct", help="run one construction and write its verified output")
    c.add_argument("what", choices=[
        "mols", "idempotent-mols", "imols", "wilson", "fill-gdd", "fill-igdd",
        "from-resolvable", "replace-blocks", "truncate", "fill-hole",
    ])
    c.add_argument("--q", type=int)
    c.add_argument("--t", type=int)
    c.add_argument("--ipbd")
    c.add_argument("--templates", default="auto")
    c.add_argument("--design", help="input design file")
    c.add_argument("--master")
    c.add_argument("--weights", type=_sizes, help="one weight for all points, or one per point")
    c.add_argument("--ingredient", action="append", help="ingredient GDD file (repeatable)")
    c.add_argument("--filler", action="append", help="filler design file (repeatable)")
    c.add_argument("--group", type=int, help="1-based group index")
    c.add_argument("--i", type=int, help="number of new points")
    c.add_argument("--keep", type=int)
    c.add_argument("--outer")
    c.add_argument("--inner")
    c.add_argument("--K", type=_sizes)
    c.add_argument("--out", help="output file (default stdout)")
    c.set_defaults(func=cmd_construct, parser=c)

    pl = sub.add_parser("plan", help="plan a construction")
    pl_sub = pl.add_subparsers(dest="target", required=True)
    pi = pl_sub.add_parser("imols")
    pi.add_argument("--t", type=int, required=True)
    pi.add_argument("--n", type=int, required=True)
    pi.add_argument("--m", type=int, required=True)
    pi.add_argument("--ipbd", help="IPBD file to glue on")
    pi.add_argument("--budget", type=_budget, help="allow search routes with this node budget")
    pi.add_argument("--materialize", action="store_true")
    pi.add_argument("--out-dir", default=".")
    pi.set_defaults(func=cmd_plan)

    s = sub.add_parser("search", help="exhaustive search with a node budget")
    s.add_argument("what", choices=["imols", "design"])
    for name in ("n", "m", "t", "v", "w"):
        s.add_argument(f"--{name}", type=int)
    s.add_argument("--hole", type=_sizes, help="1-based hole, default 1..m")
    s.add_argument("--K", type=_sizes)
    s.add_argument("--budget", type=_budget, required=True)
    s.add_argument("--out", help="output file (default stdout)")
    s.add_argument("--manifest", help="manifest file (default stderr)")
    s.set_defaults(func=cmd_search, parser=s)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (Failure, DesignError, ConstructionError, PlanError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
