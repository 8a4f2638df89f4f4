"""DAGs over dense integer ids, bitset transitive closure, linear extensions
and a few generators.

Vertices are always ``0..n-1``. Reachability rows are Python ints used as
bitsets: bit ``v`` of ``down[u]`` is set iff there is a path ``u -> v``.
"""

from __future__ import annotations

import random
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Raised for malformed graph input or structural violations."""


class CycleError(GraphError):
    pass


class Dag:
    """Immutable directed acyclic graph on vertices ``0..n-1``."""

    __slots__ = ("n", "edges", "succ", "pred", "_topo")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        succ: list[list[int]] = [[] for _ in range(n)]
        pred: list[list[int]] = [[] for _ in range(n)]
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop on vertex {u}")
            if (u, v) in seen:
                raise GraphError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
            succ[u].append(v)
            pred[v].append(u)
        self.n = n
        self.edges = frozenset(seen)
        self.succ = tuple(tuple(sorted(s)) for s in succ)
        self.pred = tuple(tuple(sorted(p)) for p in pred)
        order = _kahn(self)
        if len(order) != n:
            raise CycleError("graph contains a directed cycle")
        self._topo = tuple(order)

    @property
    def m(self) -> int:
        return len(self.edges)

    def topological_order(self) -> tuple[int, ...]:
        """Smallest-id-first topological order."""
        return self._topo

    def induced(self, members: Sequence[int]) -> tuple["Dag", tuple[int, ...]]:
        """Subgraph induced by ``members``, relabelled to ``0..len-1`` in
        ascending id order. Returns the subgraph and the local->global map."""
        verts = tuple(sorted(members))
        local = {v: i for i, v in enumerate(verts)}
        es = [(local[u], local[v]) for u in verts for v in self.succ[u] if v in local]
        return Dag(len(verts), es), verts

    def __eq__(self, other):
        if not isinstance(other, Dag):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Dag(n={self.n}, edges={sorted(self.edges)})"


def _kahn(g: Dag) -> list[int]:
    import heapq

    indeg = [len(p) for p in g.pred]
    heap = [v for v in range(g.n) if indeg[v] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        u = heapq.heappop(heap)
        out.append(u)
        for v in g.succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(heap, v)
    return out


# ---------------------------------------------------------------------------
# edge-list format


def parse_edge_list(text: bytes | str) -> Dag:
    """Parse the edge-list format: first line ``n``, then ``u v`` per line.

    ``#`` starts a comment, blank lines are ignored, CRLF is accepted.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise GraphError(f"input is not valid UTF-8: {exc}") from None
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 1:
                raise GraphError(f"line {lineno}: expected vertex count, got {raw!r}")
            n = _parse_int(fields[0], lineno)
            if n < 0:
                raise GraphError(f"line {lineno}: negative vertex count")
            continue
        if len(fields) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {raw!r}")
        u, v = (_parse_int(f, lineno) for f in fields)
        for x in (u, v):
            if not 0 <= x < n:
                raise GraphError(f"line {lineno}: vertex id {x} not in [0, {n})")
        edges.append((u, v))
    if n is None:
        raise GraphError("missing vertex count line")
    return Dag(n, edges)


def _parse_int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise GraphError(f"line {lineno}: {tok!r} is not an integer") from None


def format_edge_list(g: Dag) -> str:
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in sorted(g.edges))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# reachability


class Reachability:
    """Strict partial order G* stored as descendant and ancestor bitrows."""

    __slots__ = ("n", "down", "up")

    def __init__(self, n: int, down: Sequence[int]):
        self.n = n
        self.down = tuple(down)
        up = [0] * n
        for u in range(n):
            row = self.down[u]
            while row:
                low = row & -row
                up[low.bit_length() - 1] |= 1 << u
                row ^= low
        self.up = tuple(up)

    def reaches(self, u: int, v: int) -> bool:
        return (self.down[u] >> v) & 1 == 1

    def comparable(self, u: int, v: int) -> bool:
        return self.reaches(u, v) or self.reaches(v, u)

    def incomparable(self, u: int, v: int) -> bool:
        if u == v:
            raise ValueError("incomparable() needs two distinct vertices")
        return not self.comparable(u, v)

    def pairs(self) -> set[tuple[int, int]]:
        return {(u, v) for u in range(self.n) for v in iter_bits(self.down[u])}

    def incomparable_mask(self, u: int) -> int:
        full = (1 << self.n) - 1
        return full & ~(self.down[u] | self.up[u] | (1 << u))

    def incomparable_pairs(self) -> list[tuple[int, int]]:
        """All ordered incomparable pairs, sorted."""
        return [(u, v) for u in range(self.n) for v in iter_bits(self.incomparable_mask(u))]

    def __eq__(self, other):
        if not isinstance(other, Reachability):
            return NotImplemented
        return self.n == other.n and self.down == other.down

    def __hash__(self):
        return hash((self.n, self.down))


def iter_bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_to_set(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


def set_to_bits(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def transitive_closure(g: Dag) -> Reachability:
    """Closure by OR-ing successor rows in reverse topological order."""
    down = [0] * g.n
    for u in reversed(g.topological_order()):
        row = 0
        for v in g.succ[u]:
            row |= down[v] | (1 << v)
        down[u] = row
    return Reachability(g.n, down)


# ---------------------------------------------------------------------------
# linear extensions


def topological_orders(g: Dag, first: int | None = None) -> Iterator[tuple[int, ...]]:
    """Enumerate every linear extension of ``g`` exactly once, in
    lexicographic order.

    With ``first`` set, only extensions starting with that vertex are
    produced; the streams for distinct ``first`` values partition the full
    enumeration.
    """
    n = g.n
    if n == 0:
        yield ()
        return
    indeg = [len(p) for p in g.pred]
    used = [False] * n
    order: list[int] = []

    def minimal() -> list[int]:
        return [v for v in range(n) if not used[v] and indeg[v] == 0]

    def place(v: int) -> None:
        used[v] = True
        order.append(v)
        for w in g.succ[v]:
            indeg[w] -= 1

    def unplace() -> None:
        v = order.pop()
        used[v] = False
        for w in g.succ[v]:
            indeg[w] += 1

    roots = minimal()
    if first is not None:
        roots = [first] if first in roots else []
    # explicit stack: recursion would overflow on long chains.
    # frame = [candidates, next index]; a frame with index > 0 owns the
    # vertex currently at the top of ``order``.
    stack: list[list] = [[roots, 0]]
    while stack:
        frame = stack[-1]
        cands, i = frame
        if i > 0:
            unplace()
        if i == len(cands):
            stack.pop()
            continue
        frame[1] = i + 1
        place(cands[i])
        if len(order) == n:
            yield tuple(order)
        else:
            stack.append([minimal(), 0])


def count_linear_extensions(g: Dag) -> int:
    return sum(1 for _ in topological_orders(g))


# ---------------------------------------------------------------------------
# generators


def gen_chain(n: int) -> Dag:
    _check_n(n)
    return Dag(n, [(i, i + 1) for i in range(n - 1)])


def gen_antichain(n: int) -> Dag:
    _check_n(n)
    return Dag(n)


def gen_crown(n: int) -> Dag:
    """Crown S_n^0: ``a_i = i``, ``b_j = n + j``, edges ``a_i -> b_j`` for i != j."""
    _check_n(n)
    return Dag(2 * n, [(i, n + j) for i in range(n) for j in range(n) if i != j])


def gen_random_dag(n: int, edge_prob: float, seed: int | None = None) -> Dag:
    """Forward-only Erdos-Renyi DAG: each (i, j), i < j, kept with ``edge_prob``."""
    _check_n(n)
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError(f"edge_prob must be in [0, 1], got {edge_prob}")
    rng = random.Random(seed)
    return Dag(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < edge_prob])


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"generator needs n >= 1, got {n}")
