"""Runtime of the FPT solver as n grows with k held fixed.

Graphs are series compositions of copies of a small gadget (an antichain or
crown), so the decomposition tree stays shallow and every search is k-sized.

    python scripts/fpt_scaling.py --gadget crown:3 --sizes 10 100 1000 --dims 2 3
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from domdraw import Dag, fpt_min_fips, md_tree
from domdraw.cli import generate
from domdraw.optimizer import search_k


@dataclass
class ScalingConfig:
    gadget: str = "crown:3"
    sizes: list[int] = field(default_factory=lambda: [10, 100, 1000])
    dims: list[int] = field(default_factory=lambda: [2, 3])
    repeats: int = 3


def series_of(gadget: Dag, copies: int) -> Dag:
    """Copies of ``gadget`` where every sink of copy i reaches every source of copy i+1."""
    sources = [v for v in range(gadget.n) if not gadget.pred[v]]
    sinks = [v for v in range(gadget.n) if not gadget.succ[v]]
    edges = []
    for c in range(copies):
        off = c * gadget.n
        edges += [(u + off, v + off) for u, v in gadget.edges]
        if c:
            prev = off - gadget.n
            edges += [(s + prev, t + off) for s in sinks for t in sources]
    return Dag(gadget.n * copies, edges)


def run(cfg: ScalingConfig) -> list[dict]:
    gadget = generate(cfg.gadget)
    rows = []
    for size in cfg.sizes:
        g = series_of(gadget, max(1, size // gadget.n))
        tree = md_tree(g)
        for d in cfg.dims:
            times = []
            for _ in range(cfg.repeats):
                t0 = time.perf_counter()
                res = fpt_min_fips(g, d, tree=tree)
                times.append(time.perf_counter() - t0)
            rows.append(
                {"n": g.n, "m": g.m, "k": search_k(tree), "d": d, "cost": res.cost,
                 "explored": res.explored, "best_seconds": round(min(times), 4)}
            )
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--gadget", default="crown:3")
    ap.add_argument("--sizes", type=int, nargs="+", default=[10, 100, 1000])
    ap.add_argument("--dims", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args(argv)
    cfg = ScalingConfig(args.gadget, args.sizes, args.dims, args.repeats)
    print(json.dumps({"config": asdict(cfg), "rows": run(cfg)}, indent=2))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
