"""Doubly bidirectionally connected pairs (dbcp).

``(p, q)`` is a dbcp when ``p != q`` and in each direction there are two
simple paths whose preterminal vertices differ. A vertex ``u`` is the
preterminal vertex of some simple path ``p -> q`` exactly when ``(u, q)``
is an arc and ``u`` is reachable from ``p`` without touching ``q``, so
detection reduces to two reachability queries.
"""

from __future__ import annotations

from dataclasses import dataclass

from .digraph import Digraph, Path, iter_simple_paths, reachable_from, shortest_path

BRUTE_FORCE_MAX_VERTICES = 8


@dataclass(frozen=True)
class DbcpWitness:
    p: int
    q: int
    forward: tuple[Path, Path]
    backward: tuple[Path, Path]

    @property
    def pair(self) -> tuple[int, int]:
        return self.p, self.q

    def validate(self, g: Digraph) -> None:
        """Re-check every invariant against ``g``; raises ``ValueError``."""
        if self.p == self.q:
            raise ValueError("dbcp endpoints coincide")
        for paths, (a, b) in ((self.forward, (self.p, self.q)), (self.backward, (self.q, self.p))):
            for path in paths:
                Path(g, path.vertices)
                if not path.is_simple:
                    raise ValueError(f"witness path {path.vertices} is not simple")
                if path.start != a or path.end != b:
                    raise ValueError(f"witness path {path.vertices} has wrong endpoints")
            if paths[0].preterminal == paths[1].preterminal:
                raise ValueError("witness paths share their preterminal vertex")

    def to_dict(self, g: Digraph) -> dict:
        return {
            "pair": [g.label(self.p), g.label(self.q)],
            "forward": [list(path.labels()) for path in self.forward],
            "backward": [list(path.labels()) for path in self.backward],
        }


def preterminal_candidates(g: Digraph, p: int, q: int) -> set[int]:
    """Vertices that end up as preterminal vertex of some simple path ``p -> q``."""
    if p == q:
        raise ValueError("p and q must differ")
    reach = reachable_from(g, p, {q})
    return {u for u in g.pred[q] if u in reach}


def _two_paths(g: Digraph, p: int, q: int, cands: set[int]) -> tuple[Path, Path]:
    paths = []
    for u in sorted(cands)[:2]:
        head = shortest_path(g, p, u, {q})
        assert head is not None
        paths.append(Path(g, (*head, q)))
    return paths[0], paths[1]


def is_dbcp(g: Digraph, p: int, q: int) -> DbcpWitness | None:
    fwd = preterminal_candidates(g, p, q)
    if len(fwd) < 2:
        return None
    bwd = preterminal_candidates(g, q, p)
    if len(bwd) < 2:
        return None
    return DbcpWitness(p, q, _two_paths(g, p, q, fwd), _two_paths(g, q, p, bwd))


def brute_force_is_dbcp(g: Digraph, p: int, q: int) -> bool:
    """The definition verbatim: enumerate every simple path both ways."""
    if g.n > BRUTE_FORCE_MAX_VERTICES:
        raise ValueError(f"brute force is limited to {BRUTE_FORCE_MAX_VERTICES} vertices")
    if p == q:
        return False
    forward = {path[-2] for path in iter_simple_paths(g, p, q)}
    backward = {path[-2] for path in iter_simple_paths(g, q, p)}
    return len(forward) >= 2 and len(backward) >= 2


def find_dbcp(g: Digraph) -> DbcpWitness | None:
    """First dbcp in id-lexicographic pair order, or ``None``."""
    heavy = [v for v in g.vertices if g.indegree(v) >= 2]
    for p in heavy:
        for q in heavy:
            if p != q:
                w = is_dbcp(g, p, q)
                if w is not None:
                    return w
    return None
