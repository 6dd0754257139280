"""Bounded exhaustive search over the expansions of a digraph.

An expansion of ``G`` is fixed, up to relabeling copies inside each fiber,
by a fiber size ``k_v >= 1`` per vertex and, for every arc ``(x, y)`` of
``G`` and every copy ``(y, j)``, the choice of the one copy ``(x, i)`` that
feeds it. Every such choice function is an expansion and every expansion
arises this way, so the search is a backtracking walk over those choices.

Two pruning families are available:

* symmetry pruning names copies in the order a breadth-first sweep over
  in-arcs first reaches them, so relabelings of a fiber are mostly skipped;
* cactus pruning keeps only partial graphs that could still grow into a
  cactus: every copy's outdegree stays at most its (forced) indegree, no
  arc ever sits on two simple cycles, and fiber vectors whose arc counts
  cannot balance are skipped outright.
"""

from __future__ import annotations

import enum
import logging
from collections import Counter
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from itertools import product
from typing import Any

from .cactus import is_cactus
from .dbcp import find_dbcp
from .digraph import Digraph, is_strongly_connected
from .morphism import Morphism, verify_expansion

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchConfig:
    fiber_bound: int = 4
    max_total_vertices: int | None = None  # None: 3 * |V|
    node_budget: int = 50_000_000
    symmetry_pruning: bool = True
    cactus_pruning: bool = True

    def __post_init__(self) -> None:
        if self.fiber_bound < 1:
            raise ValueError("fiber_bound must be at least 1")
        if self.node_budget < 1:
            raise ValueError("node_budget must be at least 1")

    def total_cap(self, g: Digraph) -> int:
        cap = 3 * g.n if self.max_total_vertices is None else self.max_total_vertices
        if cap < g.n:
            raise ValueError("max_total_vertices is smaller than the vertex count")
        return cap


@dataclass
class SearchStats:
    fiber_vectors: int = 0
    candidates: int = 0
    cactus_checks: int = 0
    nodes: int = 0
    prunes: Counter = field(default_factory=Counter)
    budget_exceeded: bool = False

    def to_dict(self) -> dict[str, Any]:
        return {
            "fiber_vectors": self.fiber_vectors,
            "candidates": self.candidates,
            "cactus_checks": self.cactus_checks,
            "nodes": self.nodes,
            "prunes": dict(sorted(self.prunes.items())),
            "budget_exceeded": self.budget_exceeded,
        }


class SearchStatus(enum.Enum):
    FOUND = "found"
    EXHAUSTED_BOUNDS = "exhausted-bounds"
    BUDGET_EXCEEDED = "budget-exceeded"


@dataclass
class SearchOutcome:
    status: SearchStatus
    stats: SearchStats
    expansion: Morphism | None = None
    # Only set by the non-strongly-connected fast path: nonexistence is proven.
    proven_impossible: bool = False

    @property
    def found(self) -> bool:
        return self.status is SearchStatus.FOUND

    def verdict(self) -> str:
        if self.found:
            return "cactus expansion found"
        if self.proven_impossible:
            return "no cactus expansion exists (target is not strongly connected)"
        if self.status is SearchStatus.BUDGET_EXCEEDED:
            return "node budget exceeded (inconclusive)"
        return "no cactus expansion within bounds (inconclusive)"


class _BudgetExceeded(Exception):
    pass


def fiber_vectors(g: Digraph, cfg: SearchConfig) -> list[tuple[int, ...]]:
    """All fiber-size vectors within bounds, by total size then lexicographically."""
    cap = cfg.total_cap(g)
    vecs = [
        k for k in product(range(1, cfg.fiber_bound + 1), repeat=g.n) if sum(k) <= cap
    ]
    vecs.sort(key=lambda k: (sum(k), k))
    return vecs


def can_balance(g: Digraph, k: Sequence[int]) -> bool:
    """Whether the fiber sizes allow every copy to have outdegree = indegree.

    Copies of ``x`` jointly emit one arc per copy of each out-neighbour and
    each has indegree ``indeg(x)``.
    """
    return all(sum(k[y] for y in g.succ[x]) == k[x] * g.indegree(x) for x in g.vertices)


def _expansion_count(g: Digraph, k: Sequence[int]) -> int:
    out = 1
    for x, y in g.arcs:
        out *= k[x] ** k[y]
    return out


class _Builder:
    """Backtracking over lift choices for one fiber vector."""

    def __init__(
        self,
        g: Digraph,
        k: Sequence[int],
        cfg: SearchConfig,
        stats: SearchStats,
        cactus_pruning: bool,
    ) -> None:
        self.g = g
        self.k = tuple(k)
        self.cfg = cfg
        self.stats = stats
        self.cactus_pruning = cactus_pruning
        self.offset = [0] * g.n
        for v in range(1, g.n):
            self.offset[v] = self.offset[v - 1] + self.k[v - 1]
        self.size = sum(self.k)
        self.succ: list[list[int]] = [[] for _ in range(self.size)]
        self.outdeg = [0] * self.size
        self.cap = [g.indegree(v) for v in g.vertices]
        self.on_cycle: set[tuple[int, int]] = set()
        self.arcs: list[tuple[int, int]] = []

    def _paths(self, src: int, dst: int, limit: int) -> list[list[int]]:
        found: list[list[int]] = []
        path = [src]
        on_path = {src}
        stack = [iter(self.succ[src])]
        while stack:
            for w in stack[-1]:
                if w == dst:
                    found.append([*path, dst])
                    if len(found) >= limit:
                        return found
                elif w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    stack.append(iter(self.succ[w]))
                    break
            else:
                stack.pop()
                on_path.discard(path.pop())
        return found

    def _push(self, x: int, u: int, v: int) -> list[tuple[int, int]] | None:
        """Add source arc ``u -> v`` (``u`` a copy of ``x``); ``None`` if pruned.

        Returns the arcs newly marked as lying on a cycle, for undo.
        """
        self.stats.nodes += 1
        if self.stats.nodes > self.cfg.node_budget:
            raise _BudgetExceeded
        marked: list[tuple[int, int]] = []
        if self.cactus_pruning:
            if self.outdeg[u] >= self.cap[x]:
                self.stats.prunes["balance"] += 1
                return None
            back = self._paths(v, u, 2)
            if len(back) >= 2:
                self.stats.prunes["shared-arc"] += 1
                return None
            if back:
                ring = list(zip(back[0], back[0][1:]))
                if any(a in self.on_cycle for a in ring):
                    self.stats.prunes["shared-arc"] += 1
                    return None
                marked = [*ring, (u, v)]
                self.on_cycle.update(marked)
        self.succ[u].append(v)
        self.outdeg[u] += 1
        self.arcs.append((u, v))
        return marked

    def _pop(self, u: int, marked: list[tuple[int, int]]) -> None:
        self.succ[u].pop()
        self.outdeg[u] -= 1
        self.arcs.pop()
        self.on_cycle.difference_update(marked)

    def leaves(self) -> Iterator[list[tuple[int, int]]]:
        if self.cfg.symmetry_pruning:
            return self._sweep()
        return self._plain()

    def _plain(self) -> Iterator[list[tuple[int, int]]]:
        g, k, off = self.g, self.k, self.offset
        slots = [(x, y, j) for x, y in g.sorted_arcs for j in range(k[y])]

        def rec(idx: int) -> Iterator[list[tuple[int, int]]]:
            if idx == len(slots):
                yield self.arcs
                return
            x, y, j = slots[idx]
            v = off[y] + j
            for i in range(k[x]):
                u = off[x] + i
                marked = self._push(x, u, v)
                if marked is None:
                    continue
                yield from rec(idx + 1)
                self._pop(u, marked)

        return rec(0)

    def _sweep(self) -> Iterator[list[tuple[int, int]]]:
        # Copies are numbered in order of discovery; a copy is discovered when
        # some already-queued copy picks it as the tail of an in-arc, or when
        # the queue runs dry and a fresh copy of the lowest unfinished fiber
        # starts a new sweep.
        g, k, off = self.g, self.k, self.offset
        found = [0] * g.n
        queue: list[tuple[int, int]] = []

        def rec(qpos: int, slot: int) -> Iterator[list[tuple[int, int]]]:
            if qpos == len(queue):
                fresh = next((v for v in g.vertices if found[v] < k[v]), None)
                if fresh is None:
                    yield self.arcs
                    return
                queue.append((fresh, found[fresh]))
                found[fresh] += 1
                yield from rec(qpos, 0)
                found[fresh] -= 1
                queue.pop()
                return
            y, j = queue[qpos]
            preds = g.pred[y]
            if slot == len(preds):
                yield from rec(qpos + 1, 0)
                return
            x = preds[slot]
            v = off[y] + j
            top = found[x] + 1 if found[x] < k[x] else found[x]
            for i in range(top):
                u = off[x] + i
                marked = self._push(x, u, v)
                if marked is None:
                    continue
                new = i == found[x]
                if new:
                    found[x] += 1
                    queue.append((x, i))
                yield from rec(qpos, slot + 1)
                if new:
                    queue.pop()
                    found[x] -= 1
                self._pop(u, marked)

        return rec(0, 0)

    def source_graph(self, arcs: Iterable[tuple[int, int]]) -> tuple[Digraph, tuple[int, ...]]:
        g, k = self.g, self.k
        labels = []
        vmap = []
        for v in g.vertices:
            for i in range(k[v]):
                labels.append(g.label(v) if k[v] == 1 else f"{g.label(v)}_{i + 1}")
                vmap.append(v)
        return Digraph(self.size, frozenset(arcs), tuple(labels)), tuple(vmap)

    def strongly_connected(self) -> bool:
        seen = {0}
        todo = [0]
        while todo:
            for w in self.succ[todo.pop()]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        if len(seen) < self.size:
            return False
        pred: list[list[int]] = [[] for _ in range(self.size)]
        for u, v in self.arcs:
            pred[v].append(u)
        seen = {0}
        todo = [0]
        while todo:
            for w in pred[todo.pop()]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == self.size


def enumerate_expansions(
    g: Digraph,
    cfg: SearchConfig,
    stats: SearchStats | None = None,
    vectors: Iterable[Sequence[int]] | None = None,
) -> Iterator[Morphism]:
    """Stream expansions of ``g`` within the bounds of ``cfg``.

    Each yielded morphism's ``source`` is the expanded digraph. Only
    ``cfg.symmetry_pruning`` applies here; cactus pruning belongs to
    :func:`find_cactus_expansion`. If the node budget trips, the stream ends
    early and ``stats.budget_exceeded`` is set.
    """
    stats = SearchStats() if stats is None else stats
    for k in fiber_vectors(g, cfg) if vectors is None else vectors:
        if len(k) != g.n or min(k) < 1:
            raise ValueError(f"bad fiber vector {tuple(k)}")
        stats.fiber_vectors += 1
        builder = _Builder(g, k, cfg, stats, cactus_pruning=False)
        try:
            for arcs in builder.leaves():
                stats.candidates += 1
                source, vmap = builder.source_graph(arcs)
                yield Morphism(source, g, vmap)
        except _BudgetExceeded:
            stats.budget_exceeded = True
            return


def _certify(m: Morphism) -> None:
    report = verify_expansion(m)
    if not report.is_expansion:
        raise RuntimeError(f"search produced a non-expansion: {report}")
    if not is_cactus(m.source):
        raise RuntimeError("search produced a non-cactus source graph")


def find_cactus_expansion(g: Digraph, cfg: SearchConfig) -> SearchOutcome:
    """First cactus expansion in search order, or why none was produced."""
    stats = SearchStats()
    if not is_strongly_connected(g):
        return SearchOutcome(SearchStatus.EXHAUSTED_BOUNDS, stats, proven_impossible=True)
    for k in fiber_vectors(g, cfg):
        if cfg.cactus_pruning and not can_balance(g, k):
            stats.prunes["fiber-balance"] += 1
            continue
        stats.fiber_vectors += 1
        builder = _Builder(g, k, cfg, stats, cactus_pruning=cfg.cactus_pruning)
        try:
            for arcs in builder.leaves():
                stats.candidates += 1
                if cfg.cactus_pruning:
                    # Balanced, and no arc on two cycles: cactus iff strongly connected.
                    if not builder.strongly_connected():
                        continue
                    source, vmap = builder.source_graph(arcs)
                else:
                    source, vmap = builder.source_graph(arcs)
                    stats.cactus_checks += 1
                    if not is_cactus(source, witness=False):
                        continue
                m = Morphism(source, g, vmap)
                stats.cactus_checks += 1
                _certify(m)
                return SearchOutcome(SearchStatus.FOUND, stats, expansion=m)
        except _BudgetExceeded:
            stats.budget_exceeded = True
            return SearchOutcome(SearchStatus.BUDGET_EXCEEDED, stats)
    return SearchOutcome(SearchStatus.EXHAUSTED_BOUNDS, stats)


@dataclass(frozen=True)
class CorpusRow:
    graph_id: str
    has_dbcp: bool
    strongly_connected: bool
    outcome: SearchOutcome

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "graph": self.graph_id,
            "has_dbcp": self.has_dbcp,
            "strongly_connected": self.strongly_connected,
            "status": self.outcome.status.value,
            "proven_impossible": self.outcome.proven_impossible,
            "verdict": self.outcome.verdict(),
        }
        if self.outcome.expansion is not None:
            out["expansion_vertices"] = self.outcome.expansion.source.n
        return out


@dataclass
class CorpusReport:
    rows: list[CorpusRow] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return not self.violations


def validate_theorem_on_corpus(
    corpus: Iterable[Digraph], cfg: SearchConfig, names: Sequence[str] | None = None
) -> CorpusReport:
    """Run dbcp detection and the cactus-expansion search on every graph.

    A graph with a dbcp, or one that is not strongly connected, must never
    yield a cactus expansion; any such row is recorded as a violation.
    """
    report = CorpusReport()
    for idx, g in enumerate(corpus):
        gid = names[idx] if names is not None else str(idx)
        has_dbcp = find_dbcp(g) is not None
        sc = is_strongly_connected(g)
        outcome = find_cactus_expansion(g, cfg)
        row = CorpusRow(gid, has_dbcp, sc, outcome)
        report.rows.append(row)
        if outcome.found and has_dbcp:
            msg = f"graph {gid}: has a dbcp but a cactus expansion was found"
            log.error("THEOREM VIOLATION %s", msg)
            report.violations.append(msg)
        if outcome.found and not sc:
            msg = f"graph {gid}: not strongly connected but a cactus expansion was found"
            log.error("THEOREM VIOLATION %s", msg)
            report.violations.append(msg)
        if outcome.proven_impossible and sc:
            report.violations.append(f"graph {gid}: impossibility claimed outside the fast path")
    return report
