"""JSON documents and the bundled example corpus."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any, Optional, Union

from .equivariant import EquivariantQuiver
from .errors import ParseError, SpeciesForgeError
from .groups import FiniteGroup
from .ring import FusionRing
from .species import Arrow, Species, Vertex
from .unfold import OrdinaryQuiver
from .zplus import ZPlusModule

KINDS = ("fusion_ring", "group", "zplus_module", "species", "equivariant_quiver", "quiver")


def bundled_names() -> list[str]:
    data = resources.files("species_forge") / "data"
    return sorted(p.name[:-5] for p in data.iterdir() if p.name.endswith(".json"))


def bundled_text(name: str) -> str:
    name = name[:-5] if name.endswith(".json") else name
    path = resources.files("species_forge") / "data" / f"{name}.json"
    if not path.is_file():
        raise FileNotFoundError(f"no bundled document named {name!r}")
    return path.read_text(encoding="utf-8")


def _read(ref: Union[str, Path], base: Optional[Path]) -> tuple[dict, str, Optional[Path]]:
    """Load JSON from a path (relative to ``base``) or a bundled document name."""
    path = Path(ref)
    if base is not None and not path.is_absolute():
        candidate = base / path
        if candidate.exists():
            path = candidate
    if path.exists():
        text, where, base_dir = path.read_text(encoding="utf-8"), str(path), path.parent
    else:
        try:
            text = bundled_text(str(ref))
        except FileNotFoundError:
            raise ParseError(f"{ref}: no such file or bundled document") from None
        where, base_dir = f"bundled:{ref}", None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{where}: invalid JSON ({exc})") from None
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: top level must be an object")
    return doc, where, base_dir


def load(ref: Union[str, Path], expect: Optional[str] = None):
    """Parse a document file (or bundled name) into its domain object."""
    doc, where, base = _read(ref, None)
    return from_document(doc, where=where, base=base, expect=expect)


def from_document(doc: dict, where: str = "<document>", base: Optional[Path] = None,
                  expect: Optional[str] = None):
    kind = doc.get("kind")
    if kind not in KINDS:
        raise ParseError(f"{where}: unknown kind {kind!r} (expected one of {', '.join(KINDS)})")
    if expect is not None and kind != expect:
        raise ParseError(f"{where}: expected a {expect} document, found {kind!r}")
    try:
        return _BUILDERS[kind](doc, where, base)
    except SpeciesForgeError as exc:
        if isinstance(exc, ParseError):
            raise
        raise type(exc)(f"{where}: {exc}") from None
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{where}: malformed {kind} document ({type(exc).__name__}: {exc})") from None


def _sub(value: Any, where: str, base: Optional[Path], expect: str):
    if isinstance(value, dict):
        return from_document(value, where=f"{where}#{expect}", base=base, expect=expect)
    if isinstance(value, str):
        doc, w, b = _read(value, base)
        return from_document(doc, where=w, base=b, expect=expect)
    raise ParseError(f"{where}: {expect} must be an inline object or a file path")


def _ring(doc, where, base):
    return FusionRing(labels=doc["labels"], unit=doc["unit"], dual=doc["dual"], N=doc["N"])


def _group(doc, where, base):
    return FiniteGroup(elements=doc["elements"], unit=doc["unit"], mult=doc["mult"])


def _module(doc, where, base):
    ring = _sub(doc["ring"], where, base, "fusion_ring")
    return ZPlusModule(ring, doc["labels"], doc["action"])


def _species(doc, where, base):
    ring = _sub(doc["ring"], where, base, "fusion_ring")
    vertices = []
    for v in doc["vertices"]:
        da = v["division_algebra"]
        vertices.append(Vertex(v["label"], tuple(da["class"]), da.get("tag")))
    arrows = tuple(Arrow(a["from"], a["to"], tuple(a["class"])) for a in doc.get("arrows", []))
    return Species(ring, tuple(vertices), arrows)


def _equivariant(doc, where, base):
    group = _sub(doc["group"], where, base, "group")
    q = doc["quiver"]
    return EquivariantQuiver(group, tuple(q["vertices"]), tuple((a["from"], a["to"]) for a in q["arrows"]),
                             tuple(map(tuple, doc["vertex_action"])), tuple(map(tuple, doc["arrow_action"])))


def _quiver(doc, where, base):
    return OrdinaryQuiver(tuple(doc["vertices"]),
                          tuple((a["from"], a["to"], a.get("mult", 1)) for a in doc["arrows"]))


_BUILDERS = {
    "fusion_ring": _ring,
    "group": _group,
    "zplus_module": _module,
    "species": _species,
    "equivariant_quiver": _equivariant,
    "quiver": _quiver,
}


def dumps(obj: Any) -> str:
    """Canonical JSON: sorted keys, floats at 12 significant digits."""
    return json.dumps(_normalise(obj), sort_keys=True, ensure_ascii=False) + "\n"


def _normalise(obj):
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {str(k): _normalise(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_normalise(v) for v in obj]
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        return _normalise(obj.item())
    return obj
