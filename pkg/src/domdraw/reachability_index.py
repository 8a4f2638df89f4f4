"""Reachability queries answered from a weak dominance drawing.

A pair that is out of order in some dimension is certified unreachable in
O(d). Dominated pairs need a graph search; for fips that search finds
nothing, which is the cost a good drawing keeps low.
"""

from __future__ import annotations

import json
from array import array
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

from .drawing import Drawing, DrawingError, invalid_dimension
from .graph_core import Dag

CERTIFICATE, FALLBACK = "certificate", "fallback"


class Answer(NamedTuple):
    reachable: bool
    method: str


@dataclass
class IndexStats:
    queries: int = 0
    negative_certificates: int = 0
    fallbacks: int = 0
    fallback_fips: int = 0

    def to_dict(self) -> dict:
        return {
            "queries": self.queries,
            "certificates": self.negative_certificates,
            "fallbacks": self.fallbacks,
            "fallback_fips": self.fallback_fips,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


class Index:
    def __init__(self, g: Dag, drawing: Drawing):
        bad = invalid_dimension(g, drawing)
        if bad is not None:
            raise DrawingError(f"dimension {bad} is not a topological order of the graph")
        self.n = g.n
        self.d = drawing.d
        self.succ = g.succ
        # ranks[dim * n + v]
        self.ranks = array("l", (drawing.coord(dim, v) for dim in range(self.d) for v in range(self.n)))

    def rank(self, dim: int, v: int) -> int:
        return self.ranks[dim * self.n + v]

    def certified_unreachable(self, u: int, v: int) -> bool:
        n, ranks = self.n, self.ranks
        return any(ranks[k + u] > ranks[k + v] for k in range(0, self.d * n, n))

    def query(self, u: int, v: int) -> Answer:
        for x in (u, v):
            if not 0 <= x < self.n:
                raise ValueError(f"vertex {x} out of range [0, {self.n})")
        if u == v:
            raise ValueError("query needs two distinct vertices")
        if self.certified_unreachable(u, v):
            return Answer(False, CERTIFICATE)
        return Answer(self._search(u, v), FALLBACK)

    def _search(self, u: int, v: int) -> bool:
        # dimension 0 is a topological order: anything ranked after v cannot lead to v
        ranks = self.ranks
        limit = ranks[v]
        seen = {u}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            for y in self.succ[x]:
                if y == v:
                    return True
                if y not in seen and ranks[y] < limit:
                    seen.add(y)
                    queue.append(y)
        return False


def build(g: Dag, drawing: Drawing) -> Index:
    return Index(g, drawing)


def query(index: Index, u: int, v: int) -> Answer:
    return index.query(u, v)


def sweep_stats(index: Index) -> IndexStats:
    """Query every ordered pair of distinct vertices and tally the methods."""
    stats = IndexStats()
    for u in range(index.n):
        for v in range(index.n):
            if u == v:
                continue
            ans = index.query(u, v)
            stats.queries += 1
            if ans.method == CERTIFICATE:
                stats.negative_certificates += 1
            else:
                stats.fallbacks += 1
                if not ans.reachable:
                    stats.fallback_fips += 1
    return stats


__all__ = ["Answer", "IndexStats", "Index", "build", "query", "sweep_stats"]
