"""How often a drawing-based reachability index has to fall back to search.

For each random DAG, three drawings per dimension are compared: the FPT
optimum, d independent random linear extensions, and one extension repeated
d times. The quantity reported is fallback_fips / incomparable ordered pairs,
i.e. the share of unreachable queries that the coordinates fail to certify.

    python scripts/index_fallbacks.py --count 50 --n 10 --dims 1 2 3
"""

from __future__ import annotations

import argparse
import json
import random
import statistics
from dataclasses import asdict, dataclass, field

from domdraw import Drawing, Index, SearchBoundExceeded, fpt_min_fips, gen_random_dag, sweep_stats
from domdraw.graph_core import transitive_closure


@dataclass
class FallbackConfig:
    count: int = 50
    n: int = 10
    edge_prob: float = 0.3
    dims: list[int] = field(default_factory=lambda: [1, 2, 3])
    seed: int = 0


def random_extension(g, rng):
    indeg = [len(p) for p in g.pred]
    ready = [v for v in range(g.n) if indeg[v] == 0]
    out = []
    while ready:
        v = ready.pop(rng.randrange(len(ready)))
        out.append(v)
        for w in g.succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    return tuple(out)


def run(cfg: FallbackConfig) -> dict:
    rng = random.Random(cfg.seed)
    shares = {d: {"fpt": [], "random": [], "repeated": []} for d in cfg.dims}
    too_wide = 0
    done = 0
    while done < cfg.count:
        g = gen_random_dag(cfg.n, cfg.edge_prob, rng.randrange(2**31))
        incomparable = len(transitive_closure(g).incomparable_pairs())
        if incomparable == 0:
            continue
        try:
            best = {d: fpt_min_fips(g, d).drawing for d in cfg.dims}
        except SearchBoundExceeded:
            too_wide += 1
            continue
        done += 1
        for d in cfg.dims:
            base = random_extension(g, rng)
            drawings = {
                "fpt": best[d],
                "random": Drawing(tuple(random_extension(g, rng) for _ in range(d))),
                "repeated": Drawing.repeat(base, d),
            }
            for name, dr in drawings.items():
                shares[d][name].append(sweep_stats(Index(g, dr)).fallback_fips / incomparable)
    summary = {
        d: {name: round(statistics.fmean(v), 4) for name, v in per.items()} for d, per in shares.items()
    }
    return {"config": asdict(cfg), "graphs": done, "skipped_k_bound": too_wide, "mean_uncertified_share": summary}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--n", type=int, default=10)
    ap.add_argument("--p", type=float, default=0.3)
    ap.add_argument("--dims", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    print(json.dumps(run(FallbackConfig(args.count, args.n, args.p, args.dims, args.seed)), indent=2))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
