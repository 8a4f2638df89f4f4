"""Path-based modular decomposition, computed on the transitive closure.

A module is a vertex set whose members look identical from every outside
vertex, both in what they reach and in what reaches them. The tree is built
by the classical three-way split (parallel / series / prime) applied to the
induced subposet of each node; no linear-time machinery.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .graph_core import Dag, GraphError, Reachability, bits_to_set, iter_bits, set_to_bits, transitive_closure

LEAF, PARALLEL, SERIES, PRIME = "leaf", "parallel", "series", "prime"

ORACLE_BOUND = 12


def _distinguishes(r: Reachability, w: int, mask: int) -> bool:
    lo = r.down[w] & mask
    hi = r.up[w] & mask
    return (lo != 0 and lo != mask) or (hi != 0 and hi != mask)


def _is_module_mask(r: Reachability, mask: int) -> bool:
    if mask & (mask - 1) == 0:
        return True
    outside = ((1 << r.n) - 1) & ~mask
    return not any(_distinguishes(r, w, mask) for w in iter_bits(outside))


def is_module(r: Reachability, s: Iterable[int]) -> bool:
    mask = set_to_bits(s)
    if mask == 0:
        raise ValueError("is_module needs a non-empty vertex set")
    return _is_module_mask(r, mask)


def _minimal_module_mask(r: Reachability, mask: int, within: int) -> int:
    # distinguishers of a subset of a module lie inside the module
    changed = True
    while changed:
        changed = False
        for w in iter_bits(within & ~mask):
            if _distinguishes(r, w, mask):
                mask |= 1 << w
                changed = True
    return mask


def minimal_module(r: Reachability, u: int, v: int) -> frozenset[int]:
    """Inclusion-minimal module containing both ``u`` and ``v``."""
    if u == v:
        raise ValueError("minimal_module needs two distinct vertices")
    full = (1 << r.n) - 1
    return bits_to_set(_minimal_module_mask(r, (1 << u) | (1 << v), full))


@dataclass(frozen=True)
class MdNode:
    members: frozenset[int]
    kind: str
    children: tuple["MdNode", ...] = ()

    @property
    def is_leaf(self) -> bool:
        return self.kind == LEAF

    def walk(self) -> Iterator["MdNode"]:
        """Pre-order traversal."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "members": sorted(self.members),
            "children": [c.to_dict() for c in self.children],
        }


@dataclass(frozen=True)
class MdTree:
    root: MdNode
    index: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if not self.index:
            self.index.update({node.members: node for node in self.root.walk()})

    def nodes(self) -> Iterator[MdNode]:
        return self.root.walk()

    def internal_nodes(self) -> list[MdNode]:
        return [node for node in self.nodes() if not node.is_leaf]

    def postorder(self) -> list[MdNode]:
        return list(reversed(list(self.nodes())))

    def node(self, members: Iterable[int]) -> MdNode:
        return self.index[frozenset(members)]

    @property
    def k(self) -> int:
        return k_parameter(self)

    def to_json(self, **kw) -> str:
        return json.dumps(self.root.to_dict(), **kw)

    @classmethod
    def from_dict(cls, data: dict) -> "MdTree":
        def build(d):
            return MdNode(frozenset(d["members"]), d["kind"], tuple(build(c) for c in d["children"]))

        return cls(build(data))


def k_parameter(t: MdTree) -> int:
    """Maximum child count over internal nodes (0 for a single leaf)."""
    return max((len(node.children) for node in t.nodes()), default=0)


def _components(mask: int, adjacency) -> list[int]:
    comps = []
    rest = mask
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            v = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            new = adjacency(v) & mask & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        rest &= ~comp
    return comps


def _prime_classes(r: Reachability, mask: int) -> list[int]:
    verts = list(iter_bits(mask))
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in combinations(verts, 2):
        if find(u) == find(v):
            continue
        if _minimal_module_mask(r, (1 << u) | (1 << v), mask) != mask:
            parent[find(u)] = find(v)
    classes: dict[int, int] = {}
    for v in verts:
        classes[find(v)] = classes.get(find(v), 0) | (1 << v)
    return list(classes.values())


def md_tree(g: Dag, r: Reachability | None = None) -> MdTree:
    """Path-based modular decomposition tree of ``g``."""
    if g.n < 1:
        raise GraphError("md_tree needs at least one vertex")
    if r is None:
        r = transitive_closure(g)
    topo_rank = {v: i for i, v in enumerate(g.topological_order())}

    def lowest(mask: int) -> int:
        return (mask & -mask).bit_length() - 1

    def build(mask: int) -> MdNode:
        if mask & (mask - 1) == 0:
            return MdNode(bits_to_set(mask), LEAF)
        comps = _components(mask, lambda v: r.down[v] | r.up[v])
        if len(comps) > 1:
            kind = PARALLEL
            blocks = sorted(comps, key=lowest)
        else:
            comps = _components(mask, r.incomparable_mask)
            if len(comps) > 1:
                kind = SERIES
                blocks = sorted(comps, key=lambda c: topo_rank[lowest(c)])
            else:
                kind = PRIME
                blocks = sorted(_prime_classes(r, mask), key=lowest)
        return MdNode(bits_to_set(mask), kind, tuple(build(b) for b in blocks))

    return MdTree(build((1 << g.n) - 1))


# ---------------------------------------------------------------------------
# quotient graphs


@dataclass(frozen=True)
class QuotientGraph:
    """Super-vertex DAG; vertex ``i`` stands for ``blocks[i]`` with cost ``|blocks[i]|``."""

    dag: Dag
    costs: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.dag.n

    @classmethod
    def unit(cls, g: Dag) -> "QuotientGraph":
        return cls(g, (1,) * g.n, tuple((v,) for v in range(g.n)))


def quotient(
    g: Dag,
    r: Reachability,
    partition: Sequence[Iterable[int]],
    within: Iterable[int] | None = None,
    check: bool = True,
) -> QuotientGraph:
    """Collapse each block of a congruence partition to a super-vertex.

    Blocks keep their given order. ``within`` is the module being
    partitioned (default: all of V). Edges are the transitive reduction of
    the block order.
    """
    blocks = [tuple(sorted(set(b))) for b in partition]
    masks = [set_to_bits(b) for b in blocks]
    target = (1 << g.n) - 1 if within is None else set_to_bits(within)
    if check:
        seen = 0
        for b, m in zip(blocks, masks):
            if not m:
                raise ValueError("empty partition block")
            if seen & m:
                raise ValueError(f"partition blocks overlap at {sorted(bits_to_set(seen & m))}")
            seen |= m
        if seen != target:
            missing = sorted(bits_to_set(target & ~seen))
            extra = sorted(bits_to_set(seen & ~target))
            raise ValueError(f"partition does not cover its module (missing {missing}, extra {extra})")
        for b, m in zip(blocks, masks):
            if not _is_module_mask(r, m):
                raise ValueError(f"block {list(b)} is not a module")
    reps = [b[0] for b in blocks]
    h = len(blocks)
    above = [0] * h
    for i in range(h):
        for j in range(h):
            if i != j and r.reaches(reps[i], reps[j]):
                above[i] |= 1 << j
    edges = []
    for i in range(h):
        implied = 0
        for j in iter_bits(above[i]):
            implied |= above[j]
        for j in iter_bits(above[i] & ~implied):
            edges.append((i, j))
    return QuotientGraph(Dag(h, edges), tuple(len(b) for b in blocks), tuple(blocks))


def node_quotient(g: Dag, r: Reachability, node: MdNode, check: bool = False) -> QuotientGraph:
    return quotient(g, r, [c.members for c in node.children], within=node.members, check=check)


# ---------------------------------------------------------------------------
# exhaustive oracle


def enumerate_all_modules(r: Reachability, bound: int = ORACLE_BOUND) -> tuple[set[frozenset[int]], set[frozenset[int]]]:
    """All modules by subset enumeration, plus the strong ones.

    Returns ``(modules, strong)``. Only meant for small test instances.
    """
    if r.n > bound:
        raise ValueError(f"oracle limited to n <= {bound}, got n={r.n}")
    masks = [m for m in range(1, 1 << r.n) if _is_module_mask(r, m)]
    strong = []
    for a in masks:
        for b in masks:
            both = a & b
            if both and both != a and both != b:
                break
        else:
            strong.append(a)
    return {bits_to_set(m) for m in masks}, {bits_to_set(m) for m in strong}
