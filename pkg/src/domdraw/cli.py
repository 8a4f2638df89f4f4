"""``domdraw`` command line: gen | decompose | draw | fips | dimension | query | render.

Exit codes: 0 success, 2 input error, 3 search bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .drawing import Drawing, DrawingError, classify_fips, fips, invalid_dimension, render_svg
from .graph_core import (
    Dag,
    GraphError,
    format_edge_list,
    gen_antichain,
    gen_chain,
    gen_crown,
    gen_random_dag,
    parse_edge_list,
    transitive_closure,
)
from .modular_decomposition import md_tree
from .optimizer import DEFAULT_MAX_K, SearchBoundExceeded, SearchConfig, dominance_dimension, fpt_min_fips
from .reachability_index import Index, sweep_stats

EXIT_OK, EXIT_INPUT, EXIT_BOUND = 0, 2, 3


class InputError(Exception):
    pass


@dataclass(frozen=True)
class Config:
    input: str | None = None
    gen: str | None = None
    dims: int = 2
    max_k: int = DEFAULT_MAX_K
    seed: int | None = None
    format: str = "json"
    out: str | None = None

    def __post_init__(self):
        if self.dims < 1:
            raise InputError("--dims must be >= 1")
        if self.max_k < 2:
            raise InputError("--max-k must be >= 2")


def generate(spec: str, seed: int | None = None) -> Dag:
    """Build a graph from ``chain:n``, ``antichain:n``, ``crown:n`` or ``random:n,p[,seed]``."""
    kind, sep, args = spec.partition(":")
    if not sep:
        raise InputError(f"bad generator spec {spec!r}: expected kind:args")
    try:
        if kind in ("chain", "antichain", "crown"):
            n = int(args)
            return {"chain": gen_chain, "antichain": gen_antichain, "crown": gen_crown}[kind](n)
        if kind == "random":
            parts = args.split(",")
            if len(parts) not in (2, 3):
                raise InputError(f"bad random spec {spec!r}: expected random:n,p[,seed]")
            n, p = int(parts[0]), float(parts[1])
            s = int(parts[2]) if len(parts) == 3 else seed
            return gen_random_dag(n, p, s)
    except ValueError as exc:
        raise InputError(f"bad generator spec {spec!r}: {exc}") from None
    raise InputError(f"unknown generator {kind!r}")


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def load_graph(cfg: Config) -> Dag:
    if (cfg.input is None) == (cfg.gen is None):
        raise InputError("give exactly one input: a graph file or --gen SPEC")
    if cfg.gen is not None:
        return generate(cfg.gen, cfg.seed)
    return parse_edge_list(_read(cfg.input))


def load_drawing(path: str) -> Drawing:
    """Read a drawing JSON, or the ``drawing`` member of a ``draw`` result."""
    try:
        data = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from None
    if isinstance(data, dict) and isinstance(data.get("drawing"), dict):
        data = data["drawing"]
    return Drawing.from_dict(data)


def _checked_drawing(g: Dag, path: str) -> Drawing:
    drawing = load_drawing(path)
    bad = invalid_dimension(g, drawing)
    if bad is not None:
        raise InputError(f"drawing dimension {bad} is not a topological order of the graph")
    return drawing


def _emit(text: str, cfg: Config) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands


def cmd_gen(args, cfg: Config) -> int:
    _emit(format_edge_list(generate(args.spec, cfg.seed)), cfg)
    return EXIT_OK


def cmd_decompose(args, cfg: Config) -> int:
    g = load_graph(cfg)
    tree = md_tree(g)
    if cfg.format == "text":
        lines = [f"k = {tree.k}"]
        stack = [(tree.root, 0)]
        while stack:
            node, depth = stack.pop()
            lines.append(f"{'  ' * depth}{node.kind} {sorted(node.members)}")
            stack.extend((c, depth + 1) for c in reversed(node.children))
        _emit("\n".join(lines), cfg)
    else:
        kinds: dict[str, int] = {}
        for node in tree.nodes():
            kinds[node.kind] = kinds.get(node.kind, 0) + 1
        _emit(json.dumps({"k": tree.k, "kinds": kinds, "tree": tree.root.to_dict()}), cfg)
    return EXIT_OK


def cmd_draw(args, cfg: Config) -> int:
    g = load_graph(cfg)
    res = fpt_min_fips(g, cfg.dims, SearchConfig(max_k=cfg.max_k))
    if cfg.format == "svg":
        r = transitive_closure(g)
        _emit(render_svg(res.drawing, g, fip_pairs=fips(r, res.drawing).fips), cfg)
    elif cfg.format == "text":
        lines = [f"d = {res.d}", f"k = {res.k}", f"fips = {res.cost}", f"explored = {res.explored}"]
        lines += [f"dim {i}: {' '.join(map(str, o))}" for i, o in enumerate(res.drawing.orders)]
        _emit("\n".join(lines), cfg)
    else:
        _emit(res.to_json(), cfg)
    if args.svg:
        if res.d != 2:
            raise InputError("--svg needs --dims 2")
        r = transitive_closure(g)
        with open(args.svg, "w") as fh:
            fh.write(render_svg(res.drawing, g, fip_pairs=fips(r, res.drawing).fips))
    return EXIT_OK


def cmd_fips(args, cfg: Config) -> int:
    g = load_graph(cfg)
    drawing = _checked_drawing(g, args.drawing)
    report = fips(transitive_closure(g), drawing)
    if args.partition:
        report = classify_fips(report, json.loads(_read(args.partition)))
    if cfg.format == "text":
        lines = [f"count = {report.count}", f"cost = {report.cost}"]
        lines += [f"{u} {v}" for u, v in report.fips]
        _emit("\n".join(lines), cfg)
    else:
        _emit(report.to_json(), cfg)
    return EXIT_OK


def cmd_dimension(args, cfg: Config) -> int:
    g = load_graph(cfg)
    d_max = args.d_max if args.d_max is not None else cfg.dims
    dim = dominance_dimension(g, d_max, SearchConfig(max_k=cfg.max_k))
    if cfg.format == "text":
        _emit(str(dim) if dim is not None else f"unknown above {d_max}", cfg)
    else:
        _emit(json.dumps({"dimension": dim, "d_max": d_max}), cfg)
    return EXIT_OK


def _split_query_operands(args) -> tuple[str | None, int | None, int | None]:
    ops = list(args.operands)
    path = None
    if args.gen is None:
        if not ops:
            raise InputError("give exactly one input: a graph file or --gen SPEC")
        path = ops.pop(0)
    if args.sweep and not ops:
        return path, None, None
    if len(ops) != 2:
        raise InputError("query needs two vertices u v, or --sweep")
    try:
        return path, int(ops[0]), int(ops[1])
    except ValueError:
        raise InputError(f"vertex ids must be integers, got {ops}") from None


def cmd_query(args, cfg: Config) -> int:
    g = load_graph(cfg)
    index = Index(g, _checked_drawing(g, args.drawing))
    if args.sweep:
        stats = sweep_stats(index)
        if cfg.format == "text":
            _emit("\n".join(f"{k} = {v}" for k, v in stats.to_dict().items()), cfg)
        else:
            _emit(stats.to_json(), cfg)
        return EXIT_OK
    if args.u is None or args.v is None:
        raise InputError("query needs two vertices u v, or --sweep")
    for x in (args.u, args.v):
        if not 0 <= x < g.n:
            raise InputError(f"vertex {x} out of range [0, {g.n})")
    if args.u == args.v:
        raise InputError("query needs two distinct vertices")
    ans = index.query(args.u, args.v)
    if cfg.format == "text":
        _emit(f"{'reachable' if ans.reachable else 'not_reachable'} ({ans.method})", cfg)
    else:
        _emit(json.dumps({"u": args.u, "v": args.v, "reachable": ans.reachable, "method": ans.method}), cfg)
    return EXIT_OK


def cmd_render(args, cfg: Config) -> int:
    g = load_graph(cfg)
    drawing = _checked_drawing(g, args.drawing)
    marks = fips(transitive_closure(g), drawing).fips if args.show_fips else None
    _emit(render_svg(drawing, g, cell=args.cell, fip_pairs=marks), cfg)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dims", type=int, default=2, help="number of dimensions d")
    common.add_argument("--max-k", type=int, default=DEFAULT_MAX_K, help="search bound on k")
    common.add_argument("--seed", type=int, default=None, help="seed for random:n,p specs")
    common.add_argument("--format", choices=("json", "text", "svg"), default="json")
    common.add_argument("--out", default=None, help="write output here instead of stdout")

    graph_in = argparse.ArgumentParser(add_help=False)
    graph_in.add_argument("input", nargs="?", help="edge-list file ('-' for stdin)")
    graph_in.add_argument("--gen", default=None, metavar="SPEC", help="use a generated graph instead")

    parser = argparse.ArgumentParser(prog="domdraw", description="Minimum-fip weak dominance drawings of DAGs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="write a generated graph as an edge list")
    p.add_argument("spec", help="chain:n | antichain:n | crown:n | random:n,p[,seed]")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("decompose", parents=[common, graph_in], help="modular decomposition tree and k")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("draw", parents=[common, graph_in], help="minimum-fip drawing")
    p.add_argument("--svg", default=None, help="also write an SVG (d=2 only)")
    p.set_defaults(func=cmd_draw)

    p = sub.add_parser("fips", parents=[common, graph_in], help="list the fips of a drawing")
    p.add_argument("--drawing", required=True, help="drawing JSON (or draw output)")
    p.add_argument("--partition", default=None, help="JSON list of blocks for inner/outer tags")
    p.set_defaults(func=cmd_fips)

    p = sub.add_parser("dimension", parents=[common, graph_in], help="dominance dimension up to a bound")
    p.add_argument("--d-max", type=int, default=None, help="largest d to try (defaults to --dims)")
    p.set_defaults(func=cmd_dimension)

    p = sub.add_parser("query", parents=[common], help="reachability queries through a drawing")
    p.add_argument("operands", nargs="*", metavar="[INPUT] U V", help="graph file (unless --gen) then u v")
    p.add_argument("--gen", default=None, metavar="SPEC", help="use a generated graph instead")
    p.add_argument("--drawing", required=True, help="drawing JSON (or draw output)")
    p.add_argument("--sweep", action="store_true", help="query all ordered pairs and report stats")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("render", parents=[common, graph_in], help="SVG of a 2D drawing")
    p.add_argument("--drawing", required=True, help="drawing JSON (or draw output)")
    p.add_argument("--cell", type=int, default=40)
    p.add_argument("--show-fips", action="store_true")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "query":
            args.input, args.u, args.v = _split_query_operands(args)
        cfg = Config(
            input=getattr(args, "input", None),
            gen=getattr(args, "gen", None),
            dims=args.dims,
            max_k=args.max_k,
            seed=args.seed,
            format=args.format,
            out=args.out,
        )
        return args.func(args, cfg)
    except SearchBoundExceeded as exc:
        print(f"domdraw: {exc}. Raise --max-k (exhaustive cost grows like (k!)^d) or use fewer dimensions.",
              file=sys.stderr)
        return EXIT_BOUND
    except (InputError, GraphError, DrawingError, ValueError, OSError) as exc:
        print(f"domdraw: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
