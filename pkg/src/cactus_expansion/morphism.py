"""Digraph morphisms and the expansion axioms."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from typing import Any

from .digraph import Arc, Digraph


class MorphismError(ValueError):
    """A vertex map that does not send every source arc onto a target arc."""

    def __init__(self, arc: Arc, message: str | None = None) -> None:
        self.arc = arc
        super().__init__(message or f"source arc {arc} has no image arc")


@dataclass(frozen=True)
class Morphism:
    """A vertex map ``source -> target``; the arc map is induced from it.

    ``vertex_map`` may be given as a sequence indexed by source id or a
    mapping from source id to target id; it is stored as a tuple.
    """

    source: Digraph
    target: Digraph
    vertex_map: tuple[int, ...]

    def __post_init__(self) -> None:
        vm: Any = self.vertex_map
        if isinstance(vm, Mapping):
            missing = [v for v in self.source.vertices if v not in vm]
            if missing:
                raise ValueError(f"vertex map is not total: no image for {missing[0]}")
            vm = [vm[v] for v in self.source.vertices]
        elif isinstance(vm, Sequence):
            if len(vm) != self.source.n:
                raise ValueError("vertex map is not total on source vertices")
        else:
            raise TypeError("vertex_map must be a sequence or a mapping")
        vm = tuple(int(t) for t in vm)
        for t in vm:
            if not 0 <= t < self.target.n:
                raise ValueError(f"image {t} is not a target vertex")
        object.__setattr__(self, "vertex_map", vm)

    def __call__(self, v: int) -> int:
        return self.vertex_map[v]

    def arc_image(self, arc: Arc) -> Arc:
        return self.vertex_map[arc[0]], self.vertex_map[arc[1]]

    def fiber(self, v: int) -> list[int]:
        return [s for s, t in enumerate(self.vertex_map) if t == v]

    def labeled_map(self) -> dict[str, str]:
        return {
            self.source.label(s): self.target.label(t) for s, t in enumerate(self.vertex_map)
        }


@dataclass(frozen=True)
class LiftFailure:
    target_arc: Arc
    source_vertex: int
    lifts: int


@dataclass(frozen=True)
class ExpansionReport:
    vertex_surjective: bool
    arc_surjective: bool
    unique_lift: bool
    unhit_vertex: int | None = None
    unhit_arc: Arc | None = None
    lift_failure: LiftFailure | None = None

    @property
    def is_expansion(self) -> bool:
        return self.vertex_surjective and self.arc_surjective and self.unique_lift

    def to_dict(self, m: Morphism) -> dict[str, Any]:
        tgt, src = m.target, m.source
        out: dict[str, Any] = {
            "is_expansion": self.is_expansion,
            "vertex_surjective": self.vertex_surjective,
            "arc_surjective": self.arc_surjective,
            "unique_lift": self.unique_lift,
        }
        if self.unhit_vertex is not None:
            out["unhit_vertex"] = tgt.label(self.unhit_vertex)
        if self.unhit_arc is not None:
            out["unhit_arc"] = [tgt.label(v) for v in self.unhit_arc]
        if self.lift_failure is not None:
            lf = self.lift_failure
            out["lift_failure"] = {
                "target_arc": [tgt.label(v) for v in lf.target_arc],
                "source_vertex": src.label(lf.source_vertex),
                "lifts": lf.lifts,
            }
        return out


def verify_morphism(m: Morphism) -> tuple[bool, Arc | None]:
    """Check compatibility; on failure return the first offending source arc."""
    for arc in m.source.sorted_arcs:
        if m.arc_image(arc) not in m.target.arcs:
            return False, arc
    return True, None


def verify_expansion(m: Morphism) -> ExpansionReport:
    """Check the three expansion axioms independently, each with a witness.

    Raises :class:`MorphismError` if ``m`` is not a morphism at all.
    """
    ok, bad = verify_morphism(m)
    if not ok:
        assert bad is not None
        raise MorphismError(bad)
    src, tgt, phi = m.source, m.target, m.vertex_map

    hit = set(phi)
    unhit_vertex = next((v for v in tgt.vertices if v not in hit), None)

    arc_images = {m.arc_image(a) for a in src.arcs}
    unhit_arc = next((a for a in tgt.sorted_arcs if a not in arc_images), None)

    fibers: list[list[int]] = [[] for _ in tgt.vertices]
    for s, t in enumerate(phi):
        fibers[t].append(s)
    lift_failure = None
    for x, y in tgt.sorted_arcs:
        for y_copy in fibers[y]:
            lifts = sum(1 for x_copy in src.pred[y_copy] if phi[x_copy] == x)
            if lifts != 1:
                lift_failure = LiftFailure((x, y), y_copy, lifts)
                break
        if lift_failure is not None:
            break

    return ExpansionReport(
        vertex_surjective=unhit_vertex is None,
        arc_surjective=unhit_arc is None,
        unique_lift=lift_failure is None,
        unhit_vertex=unhit_vertex,
        unhit_arc=unhit_arc,
        lift_failure=lift_failure,
    )


def check_indegree_preservation(m: Morphism) -> tuple[bool, int | None]:
    """Whether every source vertex has the indegree of its image.

    Holds for every expansion; a non-expansion yields the first differing
    source vertex.
    """
    for v in m.source.vertices:
        if m.source.indegree(v) != m.target.indegree(m.vertex_map[v]):
            return False, v
    return True, None
