"""Cactus digraphs: recognition, block structure and the rooted preorder.

A cactus is strongly connected with every arc on exactly one simple cycle.
Its cycles and connecting points form a bipartite tree (the cactus tree);
rooting that tree at a vertex ``r`` gives each vertex ``v`` a minimal
sub-cactus ``C(v)`` containing ``r`` and ``v``, and ``v <= w`` iff
``C(v)`` is contained in ``C(w)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from typing import Literal

from .digraph import Arc, Digraph, Path, is_balanced, is_strongly_connected, iter_simple_cycles

NotCactusReason = Literal[
    "not-strongly-connected", "arc-in-zero-cycles", "arc-in-two-cycles", "unbalanced"
]

# Tree nodes: ("cycle", index) or ("point", vertex id).
TreeNode = tuple[str, int]


@dataclass(frozen=True)
class NotCactus:
    """Negative verdict of :func:`is_cactus`. Falsy, so ``if is_cactus(g):`` reads naturally."""

    reason: NotCactusReason
    arc: Arc | None = None
    cycles: tuple[Path, ...] = ()

    def __bool__(self) -> bool:
        return False

    def describe(self, g: Digraph) -> str:
        if self.reason == "not-strongly-connected":
            return "not strongly connected"
        if self.reason == "unbalanced":
            return "unbalanced (some indegree differs from outdegree)"
        assert self.arc is not None
        arc = f"({g.label(self.arc[0])},{g.label(self.arc[1])})"
        if self.reason == "arc-in-zero-cycles":
            return f"arc {arc} lies on no simple cycle"
        cyc = " and ".join("(" + ",".join(c.labels()) + ")" for c in self.cycles)
        return f"arc {arc} is shared by cycles {cyc}"


@dataclass(frozen=True)
class CactusDecomposition:
    graph: Digraph
    cycles: tuple[Path, ...]
    arc_to_cycle: dict[Arc, int] = field(repr=False)
    vertex_cycles: tuple[tuple[int, ...], ...] = field(repr=False)
    connecting_points: frozenset[int]

    @property
    def tree(self) -> dict[TreeNode, list[TreeNode]]:
        """Bipartite cactus tree: each cycle joined to its connecting points."""
        adj: dict[TreeNode, list[TreeNode]] = {("cycle", i): [] for i in range(len(self.cycles))}
        for c in sorted(self.connecting_points):
            adj[("point", c)] = [("cycle", i) for i in self.vertex_cycles[c]]
            for i in self.vertex_cycles[c]:
                adj[("cycle", i)].append(("point", c))
        return adj

    def cycle_vertices(self, i: int) -> tuple[int, ...]:
        return self.cycles[i].vertices[:-1]


def is_cactus(g: Digraph, *, witness: bool = True) -> CactusDecomposition | NotCactus:
    """Decompose ``g`` as a cactus or explain why it is not one.

    Cycles are enumerated lazily with a per-arc owner table, so the scan
    stops at the first arc covered twice. With ``witness=False`` an
    unbalanced graph is rejected before any cycle is enumerated.
    """
    if not is_strongly_connected(g):
        return NotCactus("not-strongly-connected")
    if not witness and not is_balanced(g):
        return NotCactus("unbalanced")
    owner: dict[Arc, int] = {}
    cycles: list[tuple[int, ...]] = []
    for cyc in iter_simple_cycles(g):
        idx = len(cycles)
        cycles.append(cyc)
        for arc in zip(cyc, cyc[1:]):
            if arc in owner:
                return NotCactus(
                    "arc-in-two-cycles", arc, (Path(g, cycles[owner[arc]]), Path(g, cyc))
                )
            owner[arc] = idx
    for arc in g.sorted_arcs:
        if arc not in owner:
            return NotCactus("arc-in-zero-cycles", arc)

    vertex_cycles: list[list[int]] = [[] for _ in g.vertices]
    for i, cyc in enumerate(cycles):
        for v in cyc[:-1]:
            vertex_cycles[v].append(i)
    points = frozenset(v for v in g.vertices if len(vertex_cycles[v]) >= 2)
    return CactusDecomposition(
        graph=g,
        cycles=tuple(Path(g, c) for c in cycles),
        arc_to_cycle=owner,
        vertex_cycles=tuple(tuple(vc) for vc in vertex_cycles),
        connecting_points=points,
    )


def _naive_cycles(g: Digraph) -> list[tuple[int, ...]]:
    # Plain backtracking from each minimal vertex; independent of Johnson's algorithm.
    out = []

    def extend(path: list[int]) -> None:
        s = path[0]
        for w in g.succ[path[-1]]:
            if w == s:
                out.append((*path, s))
            elif w > s and w not in path:
                path.append(w)
                extend(path)
                path.pop()

    for s in g.vertices:
        extend([s])
    return out


BRUTE_FORCE_MAX_VERTICES = 8


def brute_force_is_cactus(g: Digraph) -> bool:
    """Strongly connected and no two distinct simple cycles share two vertices."""
    if g.n > BRUTE_FORCE_MAX_VERTICES:
        raise ValueError(f"brute force is limited to {BRUTE_FORCE_MAX_VERTICES} vertices")
    if not is_strongly_connected(g):
        return False
    vsets = [set(c[:-1]) for c in _naive_cycles(g)]
    return all(len(a & b) <= 1 for a, b in combinations(vsets, 2))


class PreorderRelation(enum.Enum):
    LESS = "<"
    GREATER = ">"
    EQUIVALENT = "~"
    INCOMPARABLE = "||"

    def flipped(self) -> PreorderRelation:
        if self is PreorderRelation.LESS:
            return PreorderRelation.GREATER
        if self is PreorderRelation.GREATER:
            return PreorderRelation.LESS
        return self


class RootedPreorder:
    """The preorder of a cactus rooted at ``root``.

    ``C(v)`` is the set of cycles on the cactus-tree path from the root's
    node to ``v``'s node; the empty set stands for ``C(root) = {root}``.
    """

    def __init__(self, host: CactusDecomposition, root: int) -> None:
        g = host.graph
        if not 0 <= root < g.n:
            raise KeyError(f"unknown vertex {root}")
        self.host = host
        self.root = root
        self.anchor: list[TreeNode | None] = [self._node_of(v) for v in g.vertices]
        self.parent: dict[TreeNode, TreeNode | None] = {}
        self.depth: dict[TreeNode, int] = {}
        self._tin: dict[TreeNode, int] = {}
        self._tout: dict[TreeNode, int] = {}
        root_node = self.anchor[root]
        if root_node is not None:
            self._walk_tree(root_node)
        self._subcactus = [self._path_cycles(v) for v in g.vertices]
        # Deepest cycle of C(v), or None when C(v) is empty.
        self._deepest: list[TreeNode | None] = []
        for v in g.vertices:
            node = None if v == root else self.anchor[v]
            if node is not None and node[0] == "point":
                node = self.parent[node]
            self._deepest.append(node)

    def _node_of(self, v: int) -> TreeNode | None:
        h = self.host
        if v in h.connecting_points:
            return ("point", v)
        if h.vertex_cycles[v]:
            return ("cycle", h.vertex_cycles[v][0])
        return None  # single-vertex cactus

    def _walk_tree(self, root_node: TreeNode) -> None:
        adj = self.host.tree
        self.parent[root_node] = None
        self.depth[root_node] = 0
        clock = 0
        self._tin[root_node] = clock
        stack = [(root_node, iter(adj[root_node]))]
        while stack:
            node, it = stack[-1]
            for nxt in it:
                if nxt != self.parent[node]:
                    self.parent[nxt] = node
                    self.depth[nxt] = self.depth[node] + 1
                    clock += 1
                    self._tin[nxt] = clock
                    stack.append((nxt, iter(adj[nxt])))
                    break
            else:
                stack.pop()
                clock += 1
                self._tout[node] = clock

    def _path_cycles(self, v: int) -> frozenset[int]:
        if v == self.root:
            return frozenset()
        out = set()
        node = self.anchor[v]
        while node is not None:
            if node[0] == "cycle":
                out.add(node[1])
            node = self.parent[node]
        return frozenset(out)

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.host.graph.n:
            raise KeyError(f"unknown vertex {v}")

    def _is_ancestor(self, a: TreeNode, b: TreeNode) -> bool:
        return self._tin[a] <= self._tin[b] and self._tout[b] <= self._tout[a]

    def minimal_subcactus(self, v: int) -> frozenset[int]:
        """Cycle indices of ``C(v)``; empty for the root."""
        self._check_vertex(v)
        return self._subcactus[v]

    def subcactus_vertices(self, v: int) -> frozenset[int]:
        cycles = self.minimal_subcactus(v)
        if not cycles:
            return frozenset({self.root})
        return frozenset(u for i in cycles for u in self.host.cycle_vertices(i))

    def contains(self, v: int, w: int) -> bool:
        """``C(v) <= C(w)``, answered by tree ancestry."""
        dv = self._deepest[v]
        if dv is None:
            return True
        aw = None if w == self.root else self.anchor[w]
        return aw is not None and self._is_ancestor(dv, aw)

    def compare(self, v: int, w: int) -> PreorderRelation:
        self._check_vertex(v)
        self._check_vertex(w)
        le, ge = self.contains(v, w), self.contains(w, v)
        if le and ge:
            return PreorderRelation.EQUIVALENT
        if le:
            return PreorderRelation.LESS
        if ge:
            return PreorderRelation.GREATER
        return PreorderRelation.INCOMPARABLE

    def cycle_minimum_point(self, index: int, *, check: bool = False) -> int:
        """The root if the cycle contains it, else its connecting point toward the root."""
        if not 0 <= index < len(self.host.cycles):
            raise IndexError(f"no cycle {index}")
        node = ("cycle", index)
        if self.root in self.host.cycle_vertices(index):
            vs = self.root
        else:
            parent = self.parent[node]
            assert parent is not None and parent[0] == "point"
            vs = parent[1]
        if check:
            for v in self.host.cycle_vertices(index):
                if v != vs and self.compare(vs, v) is not PreorderRelation.LESS:
                    raise AssertionError(f"minimum point {vs} is not below {v}")
        return vs


def check_cycle_minimum_claim(p: RootedPreorder, index: int) -> tuple[bool, str]:
    """The minimum point is strictly below every other cycle vertex, which are pairwise equivalent."""
    vs = p.cycle_minimum_point(index)
    rest = [v for v in p.host.cycle_vertices(index) if v != vs]
    for v in rest:
        rel = p.compare(vs, v)
        if rel is not PreorderRelation.LESS:
            return False, f"minimum point {vs} vs {v}: {rel.value}"
    for v, w in combinations(rest, 2):
        rel = p.compare(v, w)
        if rel is not PreorderRelation.EQUIVALENT:
            return False, f"non-minimum vertices {v}, {w}: {rel.value}"
    return True, "ok"


def check_connecting_point_claim(p: RootedPreorder, c: int) -> tuple[bool, str]:
    """Exactly one in- and one out-neighbour of ``c`` lie in ``C(c)``; they are
    below ``c`` and every other neighbour is strictly above it."""
    g = p.host.graph
    if c == p.root:
        raise ValueError("the root is excluded")
    if c not in p.host.connecting_points:
        raise ValueError(f"{g.label(c)} is not a connecting point")
    inside = p.subcactus_vertices(c)
    le = (PreorderRelation.LESS, PreorderRelation.EQUIVALENT)
    for kind, nbrs in (("in", g.pred[c]), ("out", g.succ[c])):
        own = [u for u in nbrs if u in inside]
        if len(own) != 1:
            return False, f"{len(own)} {kind}-neighbours of {c} lie in C({c})"
        if p.compare(own[0], c) not in le:
            return False, f"{kind}-neighbour {own[0]} inside C({c}) is not below {c}"
        for u in nbrs:
            if u != own[0] and p.compare(c, u) is not PreorderRelation.LESS:
                return False, f"{kind}-neighbour {u} is not strictly above {c}"
    return True, "ok"


def verify_single_dipped(p: RootedPreorder, path: Path) -> tuple[bool, int | None]:
    """Whether the path descends then ascends; returns the smallest dip index."""
    if path.graph != p.host.graph:
        raise ValueError("path does not belong to the host cactus")
    if not path.is_simple:
        raise ValueError("path is not simple")
    vs = path.vertices
    rels = [p.compare(a, b) for a, b in zip(vs, vs[1:])]
    down = (PreorderRelation.GREATER, PreorderRelation.EQUIVALENT)
    up = (PreorderRelation.LESS, PreorderRelation.EQUIVALENT)
    last_down = 0
    while last_down < len(rels) and rels[last_down] in down:
        last_down += 1
    first_up = len(rels)
    while first_up > 0 and rels[first_up - 1] in up:
        first_up -= 1
    if first_up <= last_down:
        return True, first_up
    return False, None
