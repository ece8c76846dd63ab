"""JSON documents for plots, punctors, natural transformations and diagrams.

Plot document::

    {
      "objects": ["A", "B"],
      "arrows": [{"id": "f", "src": "A", "tgt": "B"}],
      "comp": [["f", "g", "h"]],
      "classes": {"M": ["f"]}
    }

``comp`` lists triples (f, g, h) meaning f⋄g = h. ``classes`` is optional.
Emitted documents are canonical: keys sorted, objects and arrows sorted by
id, triples sorted, two-space indentation and a trailing newline.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, Optional

from .core import Plot, PlotError, make_plot, validate
from .punctors import Punctor


class DocumentSyntaxError(PlotError):
    def __init__(self, msg: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"{msg} (line {line}, column {column})")


class SemanticError(PlotError):
    pass


@dataclass(frozen=True)
class PlotDocument:
    plot: Plot
    classes: Mapping[str, tuple[str, ...]] = field(default_factory=dict)


def canonical(P: Plot) -> Plot:
    """Same plot with objects, arrows and composition entries sorted by id."""
    return make_plot(
        sorted(P.objects),
        sorted(P.arrows, key=lambda a: a.id),
        {k: P.comp[k] for k in sorted(P.comp)},
    )


def load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentSyntaxError(e.msg, e.lineno, e.colno) from None


def dump_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def plot_from_data(data: Any) -> PlotDocument:
    if not isinstance(data, dict):
        raise SemanticError("a plot document must be a JSON object")
    unknown = set(data) - {"objects", "arrows", "comp", "classes"}
    if unknown:
        raise SemanticError(f"unknown keys {sorted(unknown)}")
    try:
        objects = [_str(o) for o in data.get("objects", [])]
        arrows = [(_str(a["id"]), _str(a["src"]), _str(a["tgt"])) for a in data.get("arrows", [])]
        comp = []
        for t in data.get("comp", []):
            if not isinstance(t, list) or len(t) != 3:
                raise SemanticError(f"composition entry {t!r} is not a triple")
            comp.append(tuple(_str(x) for x in t))
    except (KeyError, TypeError) as e:
        raise SemanticError(f"malformed plot document: {e}") from None
    P = canonical(validate({"objects": objects, "arrows": arrows, "comp": comp}))
    classes = {}
    for name, members in (data.get("classes") or {}).items():
        members = tuple(sorted(_str(m) for m in members))
        for m in members:
            if not P.has_arrow(m):
                raise SemanticError(f"class {name!r} names unknown arrow {m!r}")
        classes[name] = members
    return PlotDocument(P, classes)


def _str(x: Any) -> str:
    if not isinstance(x, str):
        raise SemanticError(f"identifier {x!r} is not a string")
    return x


def parse_plot(text: str) -> PlotDocument:
    return plot_from_data(load_json(text))


def plot_to_data(P: Plot, classes: Optional[Mapping[str, Any]] = None) -> dict:
    P = canonical(P)
    data: dict[str, Any] = {
        "objects": list(P.objects),
        "arrows": [{"id": a.id, "src": a.src, "tgt": a.tgt} for a in P.arrows],
        "comp": [list(t) for t in P.comp_triples()],
    }
    if classes:
        data["classes"] = {k: sorted(v) for k, v in classes.items()}
    return data


def emit_plot(P: Plot | PlotDocument, classes: Optional[Mapping[str, Any]] = None) -> str:
    if isinstance(P, PlotDocument):
        P, classes = P.plot, P.classes
    return dump_json(plot_to_data(P, classes))


def locate(path: str | Path) -> Path:
    """The path itself, or the same path with ``.json`` appended when only that exists."""
    path = Path(path)
    if not path.exists() and path.suffix != ".json":
        alt = path.with_name(path.name + ".json")
        if alt.exists():
            return alt
    return path


def read_plot(path: str | Path) -> PlotDocument:
    return parse_plot(locate(path).read_text(encoding="utf-8"))


def _resolve(base: Path, ref: Any) -> PlotDocument:
    if isinstance(ref, dict):
        return plot_from_data(ref)
    if isinstance(ref, str):
        return read_plot(base / ref)
    raise SemanticError(f"expected a plot document or a relative path, got {ref!r}")


def punctor_from_data(data: Any, base: Path) -> Punctor:
    """``{"source": ..., "target": ..., "obj_map": {...}, "arrow_map": {...}}``;
    source and target are inline plot documents or paths relative to ``base``."""
    if not isinstance(data, dict):
        raise SemanticError("a punctor document must be a JSON object")
    try:
        P = _resolve(base, data["source"]).plot
        Q = _resolve(base, data["target"]).plot
        return Punctor(P, Q, dict(data.get("obj_map", {})), dict(data.get("arrow_map", {})))
    except KeyError as e:
        raise SemanticError(f"missing key {e}") from None


def read_punctor(path: str | Path) -> Punctor:
    path = locate(path)
    return punctor_from_data(load_json(path.read_text(encoding="utf-8")), path.parent)


def punctor_to_data(F: Punctor, source_ref: Any = None, target_ref: Any = None) -> dict:
    return {
        "source": source_ref if source_ref is not None else plot_to_data(F.source),
        "target": target_ref if target_ref is not None else plot_to_data(F.target),
        "obj_map": dict(sorted(F.obj_map.items())),
        "arrow_map": dict(sorted(F.arrow_map.items())),
    }


def read_nt(path: str | Path):
    """``{"from": punctor, "to": punctor, "components": {...}}`` with punctors
    given inline or as paths relative to the file."""
    from .constructions import NaturalTransformation

    path = locate(path)
    data = load_json(path.read_text(encoding="utf-8"))
    try:
        F = _punctor_ref(data["from"], path.parent)
        G = _punctor_ref(data["to"], path.parent)
        return NaturalTransformation(F, G, dict(data["components"]))
    except (KeyError, TypeError) as e:
        raise SemanticError(f"malformed transformation document: {e}") from None


def _punctor_ref(ref: Any, base: Path) -> Punctor:
    if isinstance(ref, str):
        return read_punctor(base / ref)
    return punctor_from_data(ref, base)


def read_diagram(path: str | Path, into: Plot):
    """``{"shape": plot, "obj_map": {...}, "arrow_map": {...}, "cone": {"apex": A, "legs": {...}}}``.

    The shape is an inline plot document or a relative path; ``cone`` is optional.
    """
    from .connections import Cone, Diagram

    path = locate(path)
    data = load_json(path.read_text(encoding="utf-8"))
    try:
        shape = _resolve(path.parent, data["shape"]).plot
        F = Punctor(shape, into, dict(data.get("obj_map", {})), dict(data.get("arrow_map", {})))
        D = Diagram(shape, F)
        cone = None
        if data.get("cone") is not None:
            cone = Cone(data["cone"]["apex"], dict(data["cone"].get("legs", {})))
        return D, cone
    except (KeyError, TypeError) as e:
        raise SemanticError(f"malformed diagram document: {e}") from None
