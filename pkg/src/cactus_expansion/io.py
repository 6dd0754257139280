"""Edge-list and JSON graph formats, morphism documents, DOT export.

Edge-list text::

    # comment
    vertex lonely        # declares a vertex (needed only for isolated ones)
    a b                  # arc a -> b

JSON (detected by a leading ``{``)::

    {"vertices": ["a", "b"], "arcs": [["a", "b"], ["b", "a"]]}

A morphism document is JSON with ``source`` and ``target`` (an inline graph
document or a path relative to the document) and ``vertex_map`` from
source labels to target labels. Only the vertex map is stored; the arc map
is induced.
"""

from __future__ import annotations

import colorsys
import json
from pathlib import Path as FsPath
from typing import Any

from .cactus import CactusDecomposition
from .digraph import Digraph
from .morphism import Morphism, verify_morphism


class GraphParseError(ValueError):
    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _build(vertices: list[str], arcs: list[tuple[str, str, int | None]]) -> Digraph:
    index: dict[str, int] = {}
    for v in vertices:
        index.setdefault(v, len(index))
    seen: set[tuple[str, str]] = set()
    id_arcs = []
    for x, y, line in arcs:
        if x == y:
            raise GraphParseError(f"loop at {x!r}", line)
        if (x, y) in seen:
            raise GraphParseError(f"duplicate arc {x} {y}", line)
        seen.add((x, y))
        id_arcs.append((index.setdefault(x, len(index)), index.setdefault(y, len(index))))
    if not index:
        raise GraphParseError("empty graph")
    return Digraph(len(index), frozenset(id_arcs), tuple(index))


def _parse_json_graph(doc: Any) -> Digraph:
    if not isinstance(doc, dict) or "arcs" not in doc:
        raise GraphParseError("JSON graph needs an 'arcs' list")
    vertices = doc.get("vertices", [])
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise GraphParseError("'vertices' must be a list of strings")
    if len(set(vertices)) != len(vertices):
        raise GraphParseError("duplicate vertex label")
    declared = set(vertices)
    arcs = []
    for i, arc in enumerate(doc["arcs"]):
        if not (isinstance(arc, list) and len(arc) == 2 and all(isinstance(s, str) for s in arc)):
            raise GraphParseError(f"arc #{i} is not a pair of labels")
        if vertices and not set(arc) <= declared:
            raise GraphParseError(f"arc #{i} references an undeclared vertex")
        arcs.append((arc[0], arc[1], None))
    return _build(list(vertices), arcs)


def parse_graph(text: str) -> Digraph:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
        return _parse_json_graph(doc)
    vertices: list[str] = []
    arcs: list[tuple[str, str, int | None]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        words = raw.split("#", 1)[0].split()
        if not words:
            continue
        if words[0] == "vertex":
            if len(words) != 2:
                raise GraphParseError("expected 'vertex <label>'", lineno)
            if words[1] in vertices:
                raise GraphParseError(f"vertex {words[1]!r} declared twice", lineno)
            vertices.append(words[1])
        elif len(words) == 2:
            arcs.append((words[0], words[1], lineno))
        else:
            raise GraphParseError(f"malformed line {raw.strip()!r}", lineno)
    return _build(vertices, arcs)


def serialize_graph(g: Digraph) -> str:
    """Edge-list text; every vertex is declared so ids survive a round trip."""
    for v in g.vertices:
        s = g.label(v)
        if not s or s == "vertex" or "#" in s or len(s.split()) != 1:
            raise ValueError(f"label {s!r} cannot be written as edge-list text; use JSON")
    lines = [f"vertex {g.label(v)}" for v in g.vertices]
    lines += [f"{g.label(x)} {g.label(y)}" for x, y in g.sorted_arcs]
    return "\n".join(lines) + "\n"


def graph_document(g: Digraph) -> dict[str, Any]:
    return {
        "vertices": [g.label(v) for v in g.vertices],
        "arcs": [[g.label(x), g.label(y)] for x, y in g.sorted_arcs],
    }


def graph_to_json(g: Digraph) -> str:
    return json.dumps(graph_document(g))


def load_graph(path: str | FsPath) -> Digraph:
    return parse_graph(FsPath(path).read_text(encoding="utf-8"))


def morphism_document(m: Morphism) -> dict[str, Any]:
    return {
        "source": graph_document(m.source),
        "target": graph_document(m.target),
        "vertex_map": m.labeled_map(),
    }


def parse_morphism(text: str, base_dir: str | FsPath = ".") -> Morphism:
    """Load a morphism document; rejects partial or incompatible vertex maps."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(doc, dict):
        raise GraphParseError("morphism document must be a JSON object")

    def side(key: str) -> Digraph:
        ref = doc.get(key)
        if isinstance(ref, str):
            return load_graph(FsPath(base_dir) / ref)
        if isinstance(ref, dict):
            return _parse_json_graph(ref)
        raise GraphParseError(f"missing '{key}' graph")

    source, target = side("source"), side("target")
    raw_map = doc.get("vertex_map")
    if not isinstance(raw_map, dict):
        raise GraphParseError("missing 'vertex_map' object")
    vmap = {}
    for s_label, t_label in raw_map.items():
        try:
            vmap[source.index(s_label)] = target.index(t_label)
        except KeyError as exc:
            raise GraphParseError(f"vertex map: {exc.args[0]}") from None
    try:
        m = Morphism(source, target, vmap)
    except ValueError as exc:
        raise GraphParseError(str(exc)) from None
    ok, bad = verify_morphism(m)
    if not ok:
        assert bad is not None
        x, y = source.label(bad[0]), source.label(bad[1])
        raise GraphParseError(f"vertex map is not a morphism: image of arc {x} {y} is missing")
    return m


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _cycle_color(i: int) -> str:
    hue = (i * 0.618033988749895) % 1.0
    r, g, b = colorsys.hsv_to_rgb(hue, 0.75, 0.85)
    return f"#{round(r * 255):02x}{round(g * 255):02x}{round(b * 255):02x}"


def export_dot(g: Digraph, decomposition: CactusDecomposition | None = None) -> str:
    if decomposition is not None and decomposition.graph != g:
        raise ValueError("decomposition belongs to a different graph")
    out = ["digraph G {"]
    for v in g.vertices:
        attrs = ""
        if decomposition is not None and v in decomposition.connecting_points:
            attrs = " [shape=doublecircle]"
        out.append(f"  {_dot_id(g.label(v))}{attrs};")
    for x, y in g.sorted_arcs:
        attrs = ""
        if decomposition is not None:
            i = decomposition.arc_to_cycle[(x, y)]
            attrs = f' [color="{_cycle_color(i)}", cycle={i}]'
        out.append(f"  {_dot_id(g.label(x))} -> {_dot_id(g.label(y))}{attrs};")
    out.append("}")
    return "\n".join(out) + "\n"
