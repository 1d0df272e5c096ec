"""Species and quivers over a fusion ring, and the grading of their path algebras.

Vertices carry the class of a division algebra, arrows carry the class of
the bimodule placed on them. Tensor products over a nontrivial division
algebra are only tracked through Frobenius-Perron dimensions, since the
underlying object of ``E (x)_D F`` is not determined by classes alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Optional, Sequence

import numpy as np

from . import guards
from .errors import DanglingReferenceError, DivergenceError, ShapeError
from .graphs import DirectedGraph, find_cycle
from .ring import Element, FusionRing, Violation, add, basis_fpdims, fpdim, multiply


@dataclass(frozen=True)
class Vertex:
    label: str
    cls: Element
    tag: Optional[str] = None


@dataclass(frozen=True)
class Arrow:
    source: int
    target: int
    cls: Element


@dataclass(frozen=True)
class Species:
    ring: FusionRing
    vertices: tuple[Vertex, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        r = self.ring.rank
        vs = tuple(Vertex(str(v.label), tuple(int(c) for c in v.cls), v.tag) for v in self.vertices)
        arrows = tuple(Arrow(int(a.source), int(a.target), tuple(int(c) for c in a.cls)) for a in self.arrows)
        for n, v in enumerate(vs):
            if len(v.cls) != r:
                raise ShapeError(f"vertices[{n}].division_algebra.class has length {len(v.cls)}, ring rank is {r}")
        for n, a in enumerate(arrows):
            for end in (a.source, a.target):
                if not 0 <= end < len(vs):
                    raise DanglingReferenceError(f"arrows[{n}] refers to missing vertex {end}")
            if len(a.cls) != r:
                raise ShapeError(f"arrows[{n}].class has length {len(a.cls)}, ring rank is {r}")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "arrows", arrows)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def arrow_map(self) -> dict[tuple[int, int], Element]:
        return {(a.source, a.target): a.cls for a in self.arrows}

    def adjacency(self) -> np.ndarray:
        """0/1 matrix with a 1 at ``[i, j]`` whenever there is an arrow ``i -> j``."""
        adj = np.zeros((self.n, self.n), dtype=object)
        for a in self.arrows:
            adj[a.source, a.target] = 1
        return adj

    @property
    def is_quiver(self) -> bool:
        unit = self.ring.basis(self.ring.unit)
        return all(v.cls == unit for v in self.vertices)

    def to_document(self) -> dict:
        vertices = []
        for v in self.vertices:
            da = {"class": list(v.cls)}
            if v.tag is not None:
                da["tag"] = v.tag
            vertices.append({"label": v.label, "division_algebra": da})
        return {"kind": "species", "ring": self.ring.to_document(), "vertices": vertices,
                "arrows": [{"from": a.source, "to": a.target, "class": list(a.cls)} for a in self.arrows]}


@dataclass(frozen=True)
class SpeciesReport:
    violations: list[Violation]
    is_quiver: bool
    # True when some arrow class involves a simple that is not self-dual, in
    # which case storing E versus its dual makes an observable difference
    dual_sensitive: bool

    @property
    def valid(self) -> bool:
        return not self.violations


def validate_species(s: Species) -> SpeciesReport:
    ring = s.ring
    out = []
    seen = {}
    for n, a in enumerate(s.arrows):
        key = (a.source, a.target)
        if key in seen:
            out.append(Violation("single arrow per vertex pair", key,
                                 f"arrows[{seen[key]}] and arrows[{n}] share endpoints"))
        seen.setdefault(key, n)
        if not any(a.cls):
            out.append(Violation("nonzero arrow class", (n,), "arrow class is zero; omit the arrow instead"))
        if any(c < 0 for c in a.cls):
            out.append(Violation("nonnegativity", (n,), f"arrow class {a.cls}"))
    for n, v in enumerate(s.vertices):
        if any(c < 0 for c in v.cls):
            out.append(Violation("nonnegativity", (n,), f"vertex class {v.cls}"))
        if v.cls[ring.unit] < 1:
            out.append(Violation("division algebra contains unit", (n,),
                                 f"vertex {v.label!r} class {ring.format(v.cls)} lacks the unit"))
    dual_sensitive = any(c and ring.dual[k] != k for a in s.arrows for k, c in enumerate(a.cls))
    return SpeciesReport(out, s.is_quiver, dual_sensitive)


def underlying_graph(s: Species) -> DirectedGraph:
    return DirectedGraph(tuple(v.label for v in s.vertices),
                         tuple((a.source, a.target) for a in s.arrows))


def is_acyclic(s: Species) -> tuple[bool, Optional[list[int]]]:
    """``(True, None)`` or ``(False, cycle)`` with the cycle as a closed vertex walk."""
    cycle = find_cycle(s.n, [(a.source, a.target) for a in s.arrows])
    return cycle is None, cycle


@dataclass(frozen=True)
class PathEntry:
    path: tuple[int, ...]
    fpdim: float
    cls: Optional[Element] = None  # exact class when it is determined


@dataclass(frozen=True)
class GradedComponent:
    degree: int
    entries: tuple[PathEntry, ...] = field(default_factory=tuple)

    @property
    def fpdim(self) -> float:
        return float(sum(e.fpdim for e in self.entries))

    def is_empty(self) -> bool:
        return not self.entries


def path_count(s: Species, k: int) -> int:
    """Number of directed paths of length ``k`` (sum of entries of ``adj**k``)."""
    if k == 0:
        return s.n
    adj = s.adjacency()
    power = np.identity(s.n, dtype=object)
    for _ in range(k):
        power = power.dot(adj)
    return int(sum(power.ravel())) if s.n else 0


def iter_paths(s: Species, k: int):
    """Paths of length ``k`` as vertex tuples, in lexicographic order."""
    succ = [[] for _ in range(s.n)]
    for a in s.arrows:
        succ[a.source].append(a.target)
    for lst in succ:
        lst.sort()

    def walk(path):
        if len(path) == k + 1:
            yield tuple(path)
            return
        for w in succ[path[-1]]:
            path.append(w)
            yield from walk(path)
            path.pop()

    for v in range(s.n):
        yield from walk([v])


def graded_component(s: Species, k: int, max_paths: Optional[int] = guards.MAX_PATHS) -> GradedComponent:
    """Degree ``k`` part of the path algebra, one entry per path of length ``k``.

    The path ``i_0 -> ... -> i_k`` contributes
    ``E_{i_{k-1} i_k} (x) ... (x) E_{i_0 i_1}`` (tensor over the intermediate
    vertex algebras). For a quiver this is an ordinary product in the ring and
    its class is recorded exactly; in general only its FP dimension
    ``prod FPdim(E) / prod FPdim(D_intermediate)`` is.
    """
    if k < 0:
        raise ValueError("degree must be nonnegative")
    ring = s.ring
    if k == 0:
        return GradedComponent(0, tuple(PathEntry((v,), fpdim(ring, s.vertices[v].cls), s.vertices[v].cls)
                                        for v in range(s.n)))
    guards.check(path_count(s, k), max_paths, f"number of paths of length {k}")
    arrows = s.arrow_map()
    dims = basis_fpdims(ring)
    arrow_dim = {key: float(np.dot(dims, c)) for key, c in arrows.items()}
    vertex_dim = [float(np.dot(dims, v.cls)) for v in s.vertices]
    exact = s.is_quiver or k == 1
    entries = []
    for path in iter_paths(s, k):
        num = 1.0
        for e in zip(path, path[1:]):
            num *= arrow_dim[e]
        den = 1.0
        for v in path[1:-1]:
            den *= vertex_dim[v]
        cls = None
        if exact:
            cls = arrows[(path[0], path[1])]
            for e in zip(path[1:], path[2:]):
                cls = multiply(ring, arrows[e], cls)
        entries.append(PathEntry(path, num / den, cls))
    return GradedComponent(k, tuple(entries))


@dataclass(frozen=True)
class TotalClass:
    """Whole path algebra, summed over all degrees. ``cls`` is None unless the
    species is a quiver."""

    cls: Optional[Element]
    fpdim: float
    graded_fpdims: tuple[float, ...]
    graded_classes: Optional[tuple[Element, ...]] = None


def total_class(s: Species, max_paths: Optional[int] = guards.MAX_PATHS) -> TotalClass:
    acyclic, cycle = is_acyclic(s)
    if not acyclic:
        raise DivergenceError(
            f"species has the cycle {cycle}; its path algebra is infinite (not a compact object)")
    ring = s.ring
    comps = [graded_component(s, k, max_paths) for k in range(s.n + 1)]
    graded_fp = tuple(c.fpdim for c in comps)
    if s.is_quiver:
        graded_cls = tuple(add(ring, *(e.cls for e in c.entries)) for c in comps)
        total = add(ring, *graded_cls)
        return TotalClass(total, fpdim(ring, total), graded_fp, graded_cls)
    return TotalClass(None, float(sum(graded_fp)), graded_fp)


def connected_components(s: Species) -> list[Species]:
    """Weakly connected pieces, ordered by their smallest vertex index."""
    parent = list(range(s.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in s.arrows:
        ra, rb = find(a.source), find(a.target)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for v in range(s.n):
        groups.setdefault(find(v), []).append(v)
    out = []
    for members in sorted(groups.values()):
        pos = {v: i for i, v in enumerate(members)}
        arrows = tuple(Arrow(pos[a.source], pos[a.target], a.cls) for a in s.arrows if a.source in pos)
        out.append(Species(s.ring, tuple(s.vertices[v] for v in members), arrows))
    return out


@dataclass(frozen=True)
class HereditaryReport:
    acyclic: bool
    verdict: str
    cycle: Optional[list[int]] = None


def hereditary_report(s: Species) -> HereditaryReport:
    acyclic, cycle = is_acyclic(s)
    if acyclic:
        return HereditaryReport(True, "hereditary (path algebra, no quotient needed)")
    labels = " -> ".join(s.vertices[v].label for v in cycle)
    return HereditaryReport(
        False,
        f"not hereditary as a finite algebra: cycle {labels} makes the path algebra infinite; "
        "a finite quotient needs an admissible ideal, which must contain every long enough path",
        cycle,
    )


def species_equivalent(a: Species, b: Species, compare_tags: bool = False) -> Optional[list[int]]:
    """Vertex bijection ``f`` matching vertex and arrow classes of ``a`` onto ``b``.

    Brute force over permutations; intended for the handful of vertices that
    appear in worked examples.
    """
    if a.ring != b.ring or a.n != b.n or len(a.arrows) != len(b.arrows):
        return None
    guards.check(a.n, 9, "vertices for species comparison")
    am, bm = a.arrow_map(), b.arrow_map()
    for perm in permutations(range(a.n)):
        if any(a.vertices[i].cls != b.vertices[perm[i]].cls for i in range(a.n)):
            continue
        if compare_tags and any(a.vertices[i].tag != b.vertices[perm[i]].tag for i in range(a.n)):
            continue
        if all(bm.get((perm[s], perm[t])) == c for (s, t), c in am.items()):
            return list(perm)
    return None


def disjoint_union(*parts: Species) -> Species:
    ring = parts[0].ring
    vertices, arrows = [], []
    for p in parts:
        off = len(vertices)
        vertices.extend(p.vertices)
        arrows.extend(Arrow(a.source + off, a.target + off, a.cls) for a in p.arrows)
    return Species(ring, tuple(vertices), tuple(arrows))


def quiver(ring: FusionRing, labels: Sequence[str], arrows: Sequence[tuple[int, int, Element]]) -> Species:
    """Shorthand for a species whose vertex algebras are all trivial."""
    unit = ring.basis(ring.unit)
    return Species(ring, tuple(Vertex(lab, unit) for lab in labels),
                   tuple(Arrow(s, t, c) for s, t, c in arrows))
