"""Finite loop-free digraphs, paths, reachability and simple-cycle enumeration.

Vertices are dense integer ids ``0..n-1``; labels are an optional display
table. Every algorithm works on ids.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from functools import cached_property

Arc = tuple[int, int]


@dataclass(frozen=True)
class Digraph:
    """A digraph ``(V, A)`` with ``V = range(n)`` and ``A`` a set of arcs."""

    n: int
    arcs: frozenset[Arc]
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("a digraph needs at least one vertex")
        object.__setattr__(self, "arcs", frozenset((int(x), int(y)) for x, y in self.arcs))
        for x, y in self.arcs:
            if not (0 <= x < self.n and 0 <= y < self.n):
                raise ValueError(f"arc ({x}, {y}) has an endpoint outside 0..{self.n - 1}")
            if x == y:
                raise ValueError(f"loop at vertex {x}")
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != self.n:
                raise ValueError("label table length differs from vertex count")
            if len(set(labels)) != self.n:
                raise ValueError("vertex labels must be unique")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_labeled_arcs(
        cls, arcs: Iterable[tuple[str, str]], vertices: Iterable[str] = ()
    ) -> Digraph:
        """Build from label pairs; ids follow first appearance (``vertices`` first)."""
        index: dict[str, int] = {}
        for v in vertices:
            index.setdefault(v, len(index))
        id_arcs = []
        for x, y in arcs:
            id_arcs.append((index.setdefault(x, len(index)), index.setdefault(y, len(index))))
        return cls(len(index), frozenset(id_arcs), tuple(index))

    @property
    def vertices(self) -> range:
        return range(self.n)

    @cached_property
    def succ(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for x, y in self.arcs:
            out[x].append(y)
        return tuple(tuple(sorted(s)) for s in out)

    @cached_property
    def pred(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for x, y in self.arcs:
            inc[y].append(x)
        return tuple(tuple(sorted(s)) for s in inc)

    @cached_property
    def sorted_arcs(self) -> tuple[Arc, ...]:
        return tuple(sorted(self.arcs))

    def has_arc(self, x: int, y: int) -> bool:
        return (x, y) in self.arcs

    def label(self, v: int) -> str:
        if not 0 <= v < self.n:
            raise KeyError(v)
        return self.labels[v] if self.labels is not None else str(v)

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {self.label(v): v for v in range(self.n)}

    def index(self, label: str) -> int:
        """Vertex id for a label (or for a decimal id when unlabeled)."""
        try:
            return self._label_index[label]
        except KeyError:
            raise KeyError(f"unknown vertex {label!r}") from None

    def indegree(self, v: int) -> int:
        return len(self.pred[v])

    def outdegree(self, v: int) -> int:
        return len(self.succ[v])

    def __repr__(self) -> str:
        arcs = ", ".join(f"{self.label(x)}->{self.label(y)}" for x, y in self.sorted_arcs)
        return f"Digraph(n={self.n}, arcs=[{arcs}])"


@dataclass(frozen=True)
class Path:
    """A vertex sequence whose consecutive pairs are arcs of ``graph``."""

    graph: Digraph = field(compare=False, repr=False)
    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        vs = tuple(self.vertices)
        object.__setattr__(self, "vertices", vs)
        if not vs:
            raise ValueError("a path has at least one vertex")
        for v in vs:
            if not 0 <= v < self.graph.n:
                raise ValueError(f"vertex {v} is not in the graph")
        for x, y in zip(vs, vs[1:]):
            if (x, y) not in self.graph.arcs:
                raise ValueError(f"({x}, {y}) is not an arc")

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    @property
    def preterminal(self) -> int:
        if self.length < 1:
            raise ValueError("a length-0 path has no preterminal vertex")
        return self.vertices[-2]

    @property
    def arcs(self) -> tuple[Arc, ...]:
        return tuple(zip(self.vertices, self.vertices[1:]))

    @property
    def is_cycle(self) -> bool:
        return self.length >= 1 and self.start == self.end

    @property
    def is_simple(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices)

    @property
    def is_simple_cycle(self) -> bool:
        body = self.vertices[:-1]
        return self.is_cycle and len(set(body)) == len(body)

    def labels(self) -> tuple[str, ...]:
        return tuple(self.graph.label(v) for v in self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)


def degrees(g: Digraph) -> dict[int, tuple[int, int]]:
    """Map each vertex to ``(indegree, outdegree)``."""
    return {v: (len(g.pred[v]), len(g.succ[v])) for v in g.vertices}


def is_balanced(g: Digraph) -> bool:
    return all(len(g.pred[v]) == len(g.succ[v]) for v in g.vertices)


def strongly_connected_components(g: Digraph) -> list[frozenset[int]]:
    """Tarjan's algorithm, iterative; components in reverse topological order."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    comps: list[frozenset[int]] = []
    counter = 0
    for root in g.vertices:
        if root in index:
            continue
        work = [(root, iter(g.succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(g.succ[w])))
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        comp.append(w)
                        if w == v:
                            break
                    comps.append(frozenset(comp))
    return comps


def is_strongly_connected(g: Digraph) -> bool:
    comps = strongly_connected_components(g)
    return len(comps) == 1 and len(comps[0]) == g.n


def reachable_from(g: Digraph, start: int, forbidden: Iterable[int] = ()) -> set[int]:
    """Vertices reachable from ``start`` by paths that avoid ``forbidden``."""
    blocked = set(forbidden)
    if start in blocked:
        raise ValueError("start vertex is forbidden")
    seen = {start}
    todo = [start]
    while todo:
        v = todo.pop()
        for w in g.succ[v]:
            if w not in seen and w not in blocked:
                seen.add(w)
                todo.append(w)
    return seen


def shortest_path(
    g: Digraph, start: int, goal: int, forbidden: Iterable[int] = ()
) -> tuple[int, ...] | None:
    """BFS path avoiding ``forbidden``; neighbours are scanned in id order."""
    blocked = set(forbidden)
    if start in blocked or goal in blocked:
        return None
    parent = {start: start}
    frontier = [start]
    while frontier and goal not in parent:
        nxt = []
        for v in frontier:
            for w in g.succ[v]:
                if w not in parent and w not in blocked:
                    parent[w] = v
                    nxt.append(w)
        frontier = nxt
    if goal not in parent:
        return None
    out = [goal]
    while out[-1] != start:
        out.append(parent[out[-1]])
    return tuple(reversed(out))


def _component_of(g: Digraph, s: int, allowed: Sequence[bool]) -> set[int]:
    # Strong component of s inside the subgraph induced by ``allowed``.
    fwd = {s}
    todo = [s]
    while todo:
        v = todo.pop()
        for w in g.succ[v]:
            if allowed[w] and w not in fwd:
                fwd.add(w)
                todo.append(w)
    bwd = {s}
    todo = [s]
    while todo:
        v = todo.pop()
        for w in g.pred[v]:
            if allowed[w] and w not in bwd:
                bwd.add(w)
                todo.append(w)
    return fwd & bwd


def iter_simple_cycles(g: Digraph) -> Iterator[tuple[int, ...]]:
    """Johnson's algorithm.

    Yields closed vertex tuples ``(v0, ..., v0)`` with ``v0`` the minimal id
    of the cycle. Each simple cycle appears exactly once.
    """
    allowed = [True] * g.n
    for s in g.vertices:
        comp = _component_of(g, s, allowed)
        allowed[s] = False
        if len(comp) < 2:
            continue
        nbrs = {v: tuple(w for w in g.succ[v] if w in comp) for v in comp}
        blocked = {s}
        blocker: dict[int, set[int]] = defaultdict(set)
        path = [s]
        closed = [False]
        stack = [iter(nbrs[s])]
        while stack:
            for w in stack[-1]:
                if w == s:
                    yield (*path, s)
                    closed[-1] = True
                elif w not in blocked:
                    path.append(w)
                    closed.append(False)
                    stack.append(iter(nbrs[w]))
                    blocked.add(w)
                    break
            else:
                stack.pop()
                v = path.pop()
                if closed.pop():
                    if closed:
                        closed[-1] = True
                    todo = [v]
                    while todo:
                        u = todo.pop()
                        if u in blocked:
                            blocked.discard(u)
                            todo.extend(blocker[u])
                            blocker[u].clear()
                else:
                    for w in nbrs[v]:
                        blocker[w].add(v)


def enumerate_simple_cycles(g: Digraph, max_cycles: int) -> tuple[list[Path], bool]:
    """At most ``max_cycles`` simple cycles and whether more exist."""
    if max_cycles < 1:
        raise ValueError("max_cycles must be at least 1")
    out: list[Path] = []
    for cyc in iter_simple_cycles(g):
        if len(out) == max_cycles:
            return out, True
        out.append(Path(g, cyc))
    return out, False


def iter_simple_paths(g: Digraph, source: int, target: int) -> Iterator[tuple[int, ...]]:
    """Depth-first enumeration of simple paths, neighbours in id order."""
    path = [source]
    on_path = {source}
    stack = [iter(g.succ[source])]
    while stack:
        for w in stack[-1]:
            if w == target:
                yield (*path, target)
            elif w not in on_path:
                path.append(w)
                on_path.add(w)
                stack.append(iter(g.succ[w]))
                break
        else:
            stack.pop()
            on_path.discard(path.pop())


def enumerate_simple_paths(
    g: Digraph, source: int, target: int, max_paths: int
) -> tuple[list[Path], bool]:
    """At most ``max_paths`` simple paths ``source -> target`` and a truncation flag."""
    if source == target:
        raise ValueError("simple paths need distinct endpoints; use cycle enumeration")
    if max_paths < 1:
        raise ValueError("max_paths must be at least 1")
    out: list[Path] = []
    for p in iter_simple_paths(g, source, target):
        if len(out) == max_paths:
            return out, True
        out.append(Path(g, p))
    return out, False
