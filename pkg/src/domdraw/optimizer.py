"""Minimum-fip drawings: exhaustive search on small graphs and the
bottom-up algorithm over the modular decomposition tree.

The exhaustive search enumerates d-tuples of linear extensions. Each
extension is encoded as a 0/1 row over the ordered incomparable pairs
("u before v here"); the cost of a tuple is the weighted count of pairs
whose entries are 1 in every row, so whole blocks of tuples are scored with
one matrix product.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np

from .drawing import Drawing, contract, fips, is_compact, outer_fip_counts  # noqa: F401
from .graph_core import Dag, Reachability, topological_orders, transitive_closure
from .modular_decomposition import SERIES, MdNode, MdTree, QuotientGraph, md_tree, node_quotient, quotient

DEFAULT_MAX_K = 9
DEFAULT_MAX_EXPLORED = 5 * 10**8
# entries per scoring block (rows x extensions)
BLOCK_ENTRIES = 1 << 22


class SearchBoundExceeded(RuntimeError):
    """The exhaustive search would be larger than the configured bound."""

    def __init__(self, message: str, k: int | None = None, bound: int | None = None):
        super().__init__(message)
        self.k = k
        self.bound = bound


@dataclass(frozen=True)
class SearchConfig:
    max_k: int = DEFAULT_MAX_K
    max_explored: int | None = DEFAULT_MAX_EXPLORED
    workers: int | None = None

    def __post_init__(self):
        if self.max_k < 2:
            raise ValueError("search bound must be at least 2")

    def n_workers(self) -> int:
        if self.workers is not None:
            return max(1, self.workers)
        env = os.environ.get("DOMDRAW_THREADS")
        if env:
            try:
                return max(1, int(env))
            except ValueError:
                raise ValueError(f"DOMDRAW_THREADS must be an integer, got {env!r}") from None
        return 1


@dataclass(frozen=True)
class OptResult:
    drawing: Drawing
    cost: int
    explored: int
    k: int | None = None

    @property
    def d(self) -> int:
        return self.drawing.d

    def to_dict(self) -> dict:
        return {
            "cost": self.cost,
            "drawing": self.drawing.to_dict(),
            "explored": self.explored,
            "k": self.k,
            "d": self.d,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


# ---------------------------------------------------------------------------
# exhaustive search


def _pair_matrix(exts: list[tuple[int, ...]], pairs: list[tuple[int, int]], h: int, dtype) -> np.ndarray:
    pos = np.empty((len(exts), h), dtype=np.int32)
    idx = np.arange(h, dtype=np.int32)
    for e, order in enumerate(exts):
        pos[e, list(order)] = idx
    us = np.fromiter((u for u, _ in pairs), dtype=np.intp, count=len(pairs))
    vs = np.fromiter((v for _, v in pairs), dtype=np.intp, count=len(pairs))
    return (pos[:, us] < pos[:, vs]).astype(dtype)


def brute_force_min_cost(
    h: Dag | QuotientGraph,
    d: int,
    costs: Sequence[int] | None = None,
    *,
    max_vertices: int | None = DEFAULT_MAX_K,
    max_explored: int | None = DEFAULT_MAX_EXPLORED,
    stop_at_zero: bool = False,
    workers: int = 1,
) -> OptResult:
    """Cheapest d-tuple of linear extensions of ``h``.

    Ties go to the lexicographically smallest tuple. ``explored`` counts the
    tuples scored, which is ``L**d`` for ``L`` linear extensions unless
    ``stop_at_zero`` cut the search short after finding a zero-cost tuple.
    Scoring more than ``max_explored`` tuples aborts with
    :class:`SearchBoundExceeded`.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    if isinstance(h, QuotientGraph):
        dag = h.dag
        costs = h.costs if costs is None else costs
    else:
        dag = h
    n = dag.n
    if costs is None:
        costs = (1,) * n
    if len(costs) != n:
        raise ValueError(f"expected {n} costs, got {len(costs)}")
    if max_vertices is not None and n > max_vertices:
        raise SearchBoundExceeded(
            f"graph has {n} vertices, exhaustive search bound is {max_vertices}", k=n, bound=max_vertices
        )
    exts = list(topological_orders(dag))
    L = len(exts)
    total = L**d

    def over_budget(count: int) -> None:
        if max_explored is not None and count > max_explored:
            raise SearchBoundExceeded(
                f"{L} linear extensions give {total} {d}-tuples; search stopped after "
                f"{max_explored} tuples without reaching 0",
                k=n,
                bound=max_explored,
            )

    r = transitive_closure(dag)
    pairs = r.incomparable_pairs()
    if not pairs:
        # a total order: one extension, nothing to pay
        return OptResult(Drawing.repeat(exts[0], d), 0, 1 if stop_at_zero else total)

    weights = [costs[u] * costs[v] for u, v in pairs]
    # float32 sums are exact while every partial sum stays below 2**24
    dtype = np.float32 if sum(weights) < 2**24 else np.float64
    A = _pair_matrix(exts, pairs, n, dtype)
    w = np.array(weights, dtype=dtype)

    if d == 1:
        over_budget(L)
        scores = A @ w
        best = int(np.argmin(scores))
        return OptResult(Drawing((exts[best],)), int(round(scores[best])), L)

    rows_per_block = max(1, BLOCK_ENTRIES // L)
    blocks = [(s, min(s + rows_per_block, L)) for s in range(0, L, rows_per_block)]
    AT = A.T.copy()

    def score(mask: np.ndarray, block: tuple[int, int]):
        lo, hi = block
        mat = (A[lo:hi] * mask) @ AT
        flat = int(np.argmin(mat))
        i, j = divmod(flat, L)
        return int(round(mat[i, j])), lo + i, j, (hi - lo) * L

    best_cost = None
    best_idx = None
    explored = 0
    pool = ThreadPoolExecutor(workers) if workers > 1 else None
    try:
        done = False
        for prefix in product(range(L), repeat=d - 2):
            mask = w.copy()
            for e in prefix:
                mask *= A[e]
            # blocks are consumed in order so the reduction is deterministic
            for start in range(0, len(blocks), workers):
                batch = blocks[start : start + workers]
                over_budget(explored + sum((hi - lo) * L for lo, hi in batch))
                if pool is None:
                    results = [score(mask, b) for b in batch]
                else:
                    results = list(pool.map(lambda b: score(mask, b), batch))
                for c, i, j, count in results:
                    explored += count
                    if best_cost is None or c < best_cost:
                        best_cost, best_idx = c, prefix + (i, j)
                    if stop_at_zero and best_cost == 0:
                        done = True
                        break
                if done:
                    break
            if done:
                break
    finally:
        if pool is not None:
            pool.shutdown()
    drawing = Drawing(tuple(exts[i] for i in best_idx))
    return OptResult(drawing, best_cost, explored)


# ---------------------------------------------------------------------------
# expansion


def assigned_coordinate(quotient_rank: int, preceding_costs: Sequence[int], inner_rank: int, base: int = 1) -> int:
    """Coordinate of a vertex after expanding its super-vertex.

    quotient rank + sum of (cost - 1) over super-vertices placed earlier +
    rank inside the module, shifted so the result uses the same ``base``
    (0 or 1) as the inputs.
    """
    return quotient_rank + sum(c - 1 for c in preceding_costs) + inner_rank - base


def _check_expand_args(quotient_drawing: Drawing, costs, module_drawings):
    h = quotient_drawing.n
    if quotient_drawing.vertices != frozenset(range(h)):
        raise ValueError("quotient drawing must be over super-vertices 0..h-1")
    if len(costs) != h or len(module_drawings) != h:
        raise ValueError(f"need {h} costs and module drawings")
    for i, md in enumerate(module_drawings):
        if md.d != quotient_drawing.d:
            raise ValueError(f"module drawing {i} has d={md.d}, quotient has d={quotient_drawing.d}")
        if md.n != costs[i]:
            raise ValueError(f"module drawing {i} has {md.n} vertices but cost {costs[i]}")


def expand(quotient_drawing: Drawing, costs: Sequence[int], module_drawings: Sequence[Drawing]) -> Drawing:
    """Replace each super-vertex by its module's drawing, by rank arithmetic."""
    _check_expand_args(quotient_drawing, costs, module_drawings)
    total = sum(costs)
    orders = []
    for dim, qorder in enumerate(quotient_drawing.orders):
        slots: list[int | None] = [None] * total
        earlier: list[int] = []
        for sv in qorder:
            qrank = quotient_drawing.coord(dim, sv)
            md = module_drawings[sv]
            for v in md.orders[dim]:
                c = assigned_coordinate(qrank, earlier, md.coord(dim, v), base=1)
                if slots[c - 1] is not None:
                    raise ValueError("coordinate collision during expansion")
                slots[c - 1] = v
            earlier.append(costs[sv])
        orders.append(tuple(slots))
    return Drawing(tuple(orders))


def expand_concat(quotient_drawing: Drawing, costs: Sequence[int], module_drawings: Sequence[Drawing]) -> Drawing:
    """Same result as :func:`expand`, built by concatenating module orders."""
    _check_expand_args(quotient_drawing, costs, module_drawings)
    return Drawing(
        tuple(
            tuple(v for sv in qorder for v in module_drawings[sv].orders[dim])
            for dim, qorder in enumerate(quotient_drawing.orders)
        )
    )


# ---------------------------------------------------------------------------
# bottom-up algorithm


def search_k(t: MdTree) -> int:
    """Largest child count among nodes that need a real search.

    Series nodes are excluded: their quotient is a chain with a single
    linear extension.
    """
    return max((len(nd.children) for nd in t.nodes() if nd.children and nd.kind != SERIES), default=0)


def fpt_min_fips(
    g: Dag,
    d: int,
    config: SearchConfig = SearchConfig(),
    r: Reachability | None = None,
    tree: MdTree | None = None,
) -> OptResult:
    """Minimum-fip d-dimensional drawing of ``g`` via its decomposition tree."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if r is None:
        r = transitive_closure(g)
    if tree is None:
        tree = md_tree(g, r)
    k = search_k(tree)
    if k > config.max_k:
        raise SearchBoundExceeded(
            f"modular decomposition has a node with k={k} children, above the search bound {config.max_k}",
            k=k,
            bound=config.max_k,
        )
    workers = config.n_workers()
    best: dict[frozenset, Drawing] = {}
    explored = 0
    for node in tree.postorder():
        if node.is_leaf:
            (v,) = node.members
            best[node.members] = Drawing.repeat((v,), d)
            continue
        q = node_quotient(g, r, node)
        res = brute_force_min_cost(
            q,
            d,
            max_vertices=None if node.kind == SERIES else config.max_k,
            max_explored=config.max_explored,
            stop_at_zero=True,
            workers=workers,
        )
        explored += res.explored
        best[node.members] = expand(res.drawing, q.costs, [best[c.members] for c in node.children])
        for c in node.children:
            del best[c.members]
    drawing = best[tree.root.members]
    report = fips(r, drawing)
    return OptResult(drawing, report.cost, explored, k=tree.k)


def outer_fips_lower_bound_check(
    g: Dag,
    partition: Sequence[Sequence[int]],
    drawing: Drawing,
    r: Reachability | None = None,
    max_explored: int | None = DEFAULT_MAX_EXPLORED,
) -> bool:
    """Outer fips of a partition-compact drawing vs. the quotient optimum.

    True iff the outer-fip count equals the cost of the contracted drawing
    and is at least the exhaustive optimum of the weighted quotient.
    """
    if r is None:
        r = transitive_closure(g)
    blocks = [tuple(b) for b in partition]
    for i, b in enumerate(blocks):
        if not is_compact(drawing, b):
            raise ValueError(f"block {i} is not compact")
    block_of = {v: i for i, b in enumerate(blocks) for v in b}
    report = fips(r, drawing)
    t = sum(1 for u, v in report.fips if block_of[u] != block_of[v])
    q = quotient(g, r, blocks)
    contracted = contract(drawing, blocks)
    t_contracted = fips(transitive_closure(q.dag), contracted, q.costs).cost
    opt = brute_force_min_cost(q, drawing.d, max_vertices=None, max_explored=max_explored).cost
    return t == t_contracted and t >= opt


def dominance_dimension_at_most(g: Dag, d: int, config: SearchConfig = SearchConfig()) -> bool:
    return fpt_min_fips(g, d, config).cost == 0


def dominance_dimension(g: Dag, d_max: int, config: SearchConfig = SearchConfig()) -> int | None:
    """Smallest d <= d_max admitting a 0-fip drawing, else None."""
    if d_max < 1:
        raise ValueError("d_max must be >= 1")
    r = transitive_closure(g)
    tree = md_tree(g, r)
    for d in range(1, d_max + 1):
        if fpt_min_fips(g, d, config, r=r, tree=tree).cost == 0:
            return d
    return None
