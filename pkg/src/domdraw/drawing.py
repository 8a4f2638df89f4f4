"""Weak dominance drawings as tuples of topological orders.

Coordinates are 1-based ranks. A fip is an ordered incomparable pair that
is dominated in every dimension.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence
from xml.sax.saxutils import escape

from .graph_core import Dag, Reachability, iter_bits, set_to_bits
from .modular_decomposition import _is_module_mask

INNER, OUTER = "inner", "outer"

COST_LIMIT = 2**64 - 1


class DrawingError(ValueError):
    pass


@dataclass(frozen=True)
class Drawing:
    """``d`` orders over the same vertex set.

    Full drawings of a graph use vertices ``0..n-1``; sub-drawings used
    during expansion may hold any vertex ids.
    """

    orders: tuple[tuple[int, ...], ...]
    _pos: tuple[dict, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        orders = tuple(tuple(int(v) for v in o) for o in self.orders)
        if not orders:
            raise DrawingError("a drawing needs at least one dimension")
        base = set(orders[0])
        if len(base) != len(orders[0]):
            raise DrawingError("dimension 0 is not a permutation (repeated vertex)")
        for i, o in enumerate(orders[1:], start=1):
            if len(o) != len(orders[0]):
                raise DrawingError(f"dimension {i} has {len(o)} entries, expected {len(orders[0])}")
            if set(o) != base or len(set(o)) != len(o):
                raise DrawingError(f"dimension {i} is not a permutation of the vertex set")
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "_pos", tuple({v: i + 1 for i, v in enumerate(o)} for o in orders))

    @property
    def d(self) -> int:
        return len(self.orders)

    @property
    def n(self) -> int:
        return len(self.orders[0])

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.orders[0])

    def coord(self, dim: int, v: int) -> int:
        return self._pos[dim][v]

    def coords(self, v: int) -> tuple[int, ...]:
        return tuple(p[v] for p in self._pos)

    def to_dict(self) -> dict:
        return {"d": self.d, "orders": [list(o) for o in self.orders]}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, data: Mapping) -> "Drawing":
        try:
            orders = data["orders"]
        except (KeyError, TypeError):
            raise DrawingError("drawing JSON needs an 'orders' list") from None
        drawing = cls(tuple(tuple(o) for o in orders))
        if "d" in data and data["d"] != drawing.d:
            raise DrawingError(f"'d' is {data['d']} but {drawing.d} orders were given")
        return drawing

    @classmethod
    def from_json(cls, text: str) -> "Drawing":
        return cls.from_dict(json.loads(text))

    @classmethod
    def repeat(cls, order: Sequence[int], d: int) -> "Drawing":
        return cls((tuple(order),) * d)


def invalid_dimension(g: Dag, drawing: Drawing) -> int | None:
    """Index of the first dimension that is not a topological order of ``g``."""
    if drawing.vertices != frozenset(range(g.n)):
        raise DrawingError(f"drawing covers {drawing.n} vertices, graph has {g.n}")
    for dim in range(drawing.d):
        pos = drawing._pos[dim]
        if any(pos[u] >= pos[v] for u, v in g.edges):
            return dim
    return None


def validate(g: Dag, r: Reachability | None, drawing: Drawing) -> bool:
    """True iff every dimension is a topological order of ``g``.

    Checking edges suffices; ``r`` is accepted for interface symmetry.
    """
    return invalid_dimension(g, drawing) is None


# ---------------------------------------------------------------------------
# fips


@dataclass(frozen=True)
class FipReport:
    fips: tuple[tuple[int, int], ...]
    count: int
    cost: int
    kinds: tuple[str, ...] | None = None

    @property
    def inner(self) -> list[tuple[int, int]]:
        return [f for f, k in zip(self.fips, self._kinds()) if k == INNER]

    @property
    def outer(self) -> list[tuple[int, int]]:
        return [f for f, k in zip(self.fips, self._kinds()) if k == OUTER]

    def _kinds(self):
        if self.kinds is None:
            raise ValueError("report is not classified; call classify_fips first")
        return self.kinds

    def to_dict(self) -> dict:
        out = {"fips": [list(f) for f in self.fips], "count": self.count, "cost": self.cost}
        if self.kinds is not None:
            out["kinds"] = list(self.kinds)
        return out

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _after_masks(drawing: Drawing, n: int) -> list[int]:
    """For each vertex, the set of vertices ranked after it in every dimension."""
    dom = [(1 << n) - 1] * n
    for order in drawing.orders:
        later = 0
        for v in reversed(order):
            dom[v] &= later
            later |= 1 << v
    return dom


def fip_cost(pairs: Iterable[tuple[int, int]], costs: Sequence[int] | None = None) -> int:
    if costs is None:
        total = sum(1 for _ in pairs)
    else:
        total = sum(costs[u] * costs[v] for u, v in pairs)
    if total > COST_LIMIT:
        raise OverflowError(f"fip cost {total} exceeds the 64-bit limit")
    return total


def fips(r: Reachability, drawing: Drawing, costs: Sequence[int] | None = None) -> FipReport:
    """Every ordered incomparable pair dominated in all dimensions."""
    n = r.n
    if drawing.vertices != frozenset(range(n)):
        raise DrawingError(f"drawing covers {drawing.n} vertices, relation has {n}")
    if costs is not None and len(costs) != n:
        raise ValueError(f"expected {n} costs, got {len(costs)}")
    dom = _after_masks(drawing, n)
    found = []
    for u in range(n):
        for v in iter_bits(dom[u] & ~r.down[u] & ~r.up[u]):
            found.append((u, v))
    return FipReport(tuple(found), len(found), fip_cost(found, costs))


def classify_fips(report: FipReport, partition: Sequence[Iterable[int]]) -> FipReport:
    block_of = {}
    for i, block in enumerate(partition):
        for v in block:
            block_of[v] = i
    kinds = []
    for u, v in report.fips:
        if u not in block_of or v not in block_of:
            missing = u if u not in block_of else v
            raise ValueError(f"partition does not cover fip endpoint {missing}")
        kinds.append(INNER if block_of[u] == block_of[v] else OUTER)
    return FipReport(report.fips, report.count, report.cost, tuple(kinds))


def outer_fip_counts(report: FipReport, module: Iterable[int]) -> dict[int, int]:
    """For each vertex of ``module``, fips joining it to a vertex outside."""
    m = set(module)
    counts = {v: 0 for v in m}
    for u, v in report.fips:
        if (u in m) != (v in m):
            counts[u if u in m else v] += 1
    return counts


# ---------------------------------------------------------------------------
# compactness and compaction


def _span(drawing: Drawing, module: set[int], dim: int) -> tuple[int, int]:
    ranks = [drawing.coord(dim, v) for v in module]
    return min(ranks), max(ranks)


def is_compact(drawing: Drawing, module: Iterable[int]) -> bool:
    m = set(module)
    if not m:
        raise ValueError("module must be non-empty")
    for dim in range(drawing.d):
        lo, hi = _span(drawing, m, dim)
        if hi - lo + 1 != len(m):
            return False
    return True


def separator(drawing: Drawing, module: Iterable[int], dim: int) -> set[int]:
    """Non-members ranked strictly between two members in ``dim``."""
    m = set(module)
    if not m:
        raise ValueError("module must be non-empty")
    lo, hi = _span(drawing, m, dim)
    return {v for v in drawing.orders[dim][lo - 1 : hi] if v not in m}


def compaction_pivot(r: Reachability, drawing: Drawing, module: Iterable[int]) -> tuple[int, dict[int, int]]:
    """Module vertex with the fewest outer fips (smallest id on ties)."""
    counts = outer_fip_counts(fips(r, drawing), module)
    pivot = min(counts, key=lambda v: (counts[v], v))
    return pivot, counts


def compaction(r: Reachability, drawing: Drawing, module: Iterable[int]) -> Drawing:
    """Gather ``module`` around its pivot in every dimension.

    Members on the pivot's left hop rightwards over adjacent separator
    vertices, members on its right hop leftwards, until none can move. The
    pivot never moves, and only member/separator pairs change relative order.
    """
    m = set(module)
    if not m:
        raise ValueError("module must be non-empty")
    if not _is_module_mask(r, set_to_bits(m)):
        raise ValueError(f"{sorted(m)} is not a module")
    pivot, _ = compaction_pivot(r, drawing, m)
    new_orders = []
    for dim in range(drawing.d):
        sep = separator(drawing, m, dim)
        order = list(drawing.orders[dim])
        p = order.index(pivot)
        i = 0
        while i < len(order) - 1:
            a, b = order[i], order[i + 1]
            # member a just left of separator b, both left of the pivot
            left = a in m and b in sep and i < p
            # separator a just left of member b, both right of the pivot
            right = a in sep and b in m and i > p
            if left or right:
                order[i], order[i + 1] = b, a
                i = max(i - 1, 0)
            else:
                i += 1
        new_orders.append(tuple(order))
    return Drawing(tuple(new_orders))


def contract(drawing: Drawing, partition: Sequence[Iterable[int]]) -> Drawing:
    """Collapse each compact block to one super-vertex (its index)."""
    blocks = [set(b) for b in partition]
    for i, b in enumerate(blocks):
        if not is_compact(drawing, b):
            raise ValueError(f"block {i} is not compact in the drawing")
    block_of = {v: i for i, b in enumerate(blocks) for v in b}
    orders = []
    for order in drawing.orders:
        seq = []
        for v in order:
            i = block_of[v]
            if not seq or seq[-1] != i:
                seq.append(i)
        orders.append(tuple(seq))
    return Drawing(tuple(orders))


# ---------------------------------------------------------------------------
# SVG


def render_svg(
    drawing: Drawing,
    g: Dag,
    cell: int = 40,
    fip_pairs: Iterable[tuple[int, int]] | None = None,
    labels: Sequence[str] | None = None,
) -> str:
    """Plot a 2D drawing: x = rank in dimension 0, y = rank in dimension 1 (up)."""
    if drawing.d != 2:
        raise DrawingError(f"SVG rendering needs d=2, got d={drawing.d}")
    if drawing.vertices != frozenset(range(g.n)):
        raise DrawingError("drawing does not match the graph")
    n = g.n
    size = (n + 1) * cell

    def xy(v):
        return drawing.coord(0, v) * cell, size - drawing.coord(1, v) * cell

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>',
    ]
    for u, v in sorted(g.edges):
        (x1, y1), (x2, y2) = xy(u), xy(v)
        parts.append(f'<line class="edge" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black"/>')
    for u, v in sorted(fip_pairs or ()):
        (x1, y1), (x2, y2) = xy(u), xy(v)
        parts.append(
            f'<line class="fip" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
            f'stroke="red" stroke-dasharray="4 3"/>'
        )
    r = max(cell // 6, 2)
    for v in range(n):
        x, y = xy(v)
        text = escape(labels[v] if labels else str(v))
        parts.append(f'<circle class="vertex" cx="{x}" cy="{y}" r="{r}" fill="steelblue"/>')
        parts.append(f'<text x="{x + r + 2}" y="{y - r - 2}" font-size="{max(cell // 3, 8)}">{text}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
