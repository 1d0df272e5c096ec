"""Finite groups acting on quivers.

A group ``G`` acting on a quiver ``Q`` makes ``rep(Q)`` a module category over
G-graded vector spaces, with ``k_g`` sending the simple ``S_v`` to
``S_{g.v}``. Internal End and Ext of simples are G-graded objects computed by
counting: the ``k_g`` component of ``Ext(S_u, S_v)`` is the number of arrows
``g.u -> v``, and that of ``End(S_v)`` is 1 exactly when ``g`` fixes ``v``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

import numpy as np

from .errors import CertificateError, DataError, ShapeError, UnsupportedError
from .graphs import DirectedGraph
from .groups import FiniteGroup
from .ring import Element, FusionRing, Violation, group_ring
from .species import Arrow, Species, Vertex
from .zplus import ZPlusModule

GradedObject = Element
"""Multiplicity of each ``k_g``, indexed like the group elements."""


@dataclass(frozen=True)
class EquivariantQuiver:
    """``vertex_action[g][v]`` is ``g.v``; ``arrow_action[g][a]`` is ``g.a``."""

    group: FiniteGroup
    vertices: tuple[str, ...]
    arrows: tuple[tuple[int, int], ...]
    vertex_action: tuple[tuple[int, ...], ...]
    arrow_action: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(self, "arrows", tuple((int(s), int(t)) for s, t in self.arrows))
        object.__setattr__(self, "vertex_action", tuple(tuple(int(x) for x in p) for p in self.vertex_action))
        object.__setattr__(self, "arrow_action", tuple(tuple(int(x) for x in p) for p in self.arrow_action))
        n, na, order = len(self.vertices), len(self.arrows), self.group.order
        for k, (s, t) in enumerate(self.arrows):
            if not (0 <= s < n and 0 <= t < n):
                raise ShapeError(f"quiver.arrows[{k}] references a missing vertex")
        if len(self.vertex_action) != order or any(len(p) != n for p in self.vertex_action):
            raise ShapeError(f"vertex_action: expected {order} permutations of length {n}")
        if len(self.arrow_action) != order or any(len(p) != na for p in self.arrow_action):
            raise ShapeError(f"arrow_action: expected {order} permutations of length {na}")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex_index(self, name) -> int:
        """Vertex index from a name; falls back to reading an integer index."""
        if isinstance(name, (int, np.integer)):
            if not 0 <= name < self.n:
                raise IndexError(f"vertex index {name} out of range")
            return int(name)
        if str(name) in self.vertices:
            return self.vertices.index(str(name))
        try:
            return self.vertex_index(int(name))
        except ValueError:
            raise KeyError(f"unknown vertex {name!r}") from None

    def multiplicities(self) -> list[list[int]]:
        """``m[s][t]`` = number of arrows ``s -> t``."""
        m = [[0] * self.n for _ in range(self.n)]
        for s, t in self.arrows:
            m[s][t] += 1
        return m

    def ring(self) -> FusionRing:
        return group_ring(self.group)

    def to_document(self) -> dict:
        return {"kind": "equivariant_quiver", "group": self.group.to_document(),
                "quiver": {"vertices": list(self.vertices),
                           "arrows": [{"from": s, "to": t} for s, t in self.arrows]},
                "vertex_action": [list(p) for p in self.vertex_action],
                "arrow_action": [list(p) for p in self.arrow_action]}


def validate_equivariant(eq: EquivariantQuiver) -> list[Violation]:
    G = eq.group
    out = []
    for name, action, size in (("vertex", eq.vertex_action, eq.n), ("arrow", eq.arrow_action, len(eq.arrows))):
        for g, p in enumerate(action):
            if sorted(p) != list(range(size)):
                out.append(Violation(f"{name} action is a permutation", (g,), f"{list(p)} is not a permutation"))
        if out:
            continue
        for x in range(size):
            if action[G.unit][x] != x:
                out.append(Violation(f"{name} action of unit", (G.unit, x), f"unit moves {x} to {action[G.unit][x]}"))
        for g, h in product(range(G.order), repeat=2):
            gh = G.mult[g][h]
            for x in range(size):
                if action[gh][x] != action[g][action[h][x]]:
                    out.append(Violation(f"{name} action is a homomorphism", (g, h, x),
                                         f"(gh).{x} = {action[gh][x]} but g.(h.{x}) = {action[g][action[h][x]]}"))
    if out:
        return out
    for g in range(G.order):
        for a, (s, t) in enumerate(eq.arrows):
            b = eq.arrow_action[g][a]
            want = (eq.vertex_action[g][s], eq.vertex_action[g][t])
            if eq.arrows[b] != want:
                out.append(Violation("arrow/vertex compatibility", (g, a),
                                     f"g maps arrow {s}->{t} to arrow {eq.arrows[b][0]}->{eq.arrows[b][1]}, "
                                     f"expected {want[0]}->{want[1]}"))
    return out


@dataclass(frozen=True)
class Orbit:
    representative: int
    members: tuple[int, ...]


def orbits(eq: EquivariantQuiver) -> list[Orbit]:
    """Vertex orbits, each represented by its smallest vertex, sorted."""
    seen = set()
    out = []
    for v in range(eq.n):
        if v in seen:
            continue
        members = tuple(sorted({p[v] for p in eq.vertex_action}))
        seen.update(members)
        out.append(Orbit(members[0], members))
    return out


def stabilizer(eq: EquivariantQuiver, v: int) -> tuple[int, ...]:
    return tuple(g for g in range(eq.group.order) if eq.vertex_action[g][v] == v)


def internal_end(eq: EquivariantQuiver, v) -> tuple[GradedObject, tuple[int, ...]]:
    """Graded class of ``End(S_v)`` together with the stabilizer of ``v``."""
    v = eq.vertex_index(v)
    stab = stabilizer(eq, v)
    cls = tuple(int(g in stab) for g in range(eq.group.order))
    return cls, stab


def internal_ext(eq: EquivariantQuiver, u, v) -> GradedObject:
    u, v = eq.vertex_index(u), eq.vertex_index(v)
    m = eq.multiplicities()
    return tuple(m[eq.vertex_action[g][u]][v] for g in range(eq.group.order))


# The left dual of a graded object over a group ring inverts the grading.
# species_of and pointed unfolding both go through these two helpers.

def ext_to_arrow_class(group: FiniteGroup, ext: Sequence[int]) -> Element:
    return tuple(ext[group.inverse[g]] for g in range(group.order))


def arrow_class_to_ext(group: FiniteGroup, cls: Sequence[int]) -> Element:
    return tuple(cls[group.inverse[g]] for g in range(group.order))


TRIVIAL_TWISTS = {"trivial", "1", "+1"}


def format_tag(group: FiniteGroup, subgroup: Sequence[int], twist: str = "trivial") -> str:
    names = ",".join(group.elements[h] for h in sorted(subgroup))
    return f"subgroup={{{names}}}; twist={twist}"


def _split_top_level(text: str) -> list[str]:
    """Split on commas outside brackets, so names like ``(0,1)`` survive."""
    parts, depth, start = [], 0, 0
    for k, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:k])
            start = k + 1
    parts.append(text[start:])
    return parts


def parse_tag(group: FiniteGroup, tag: str) -> tuple[tuple[int, ...], str]:
    """Read ``subgroup={...}; twist=...`` back into element indices and a twist marker."""
    m = re.search(r"subgroup\s*=\s*\{([^}]*)\}", tag)
    if not m:
        raise DataError(f"tag {tag!r} does not name a subgroup")
    names = [x.strip() for x in _split_top_level(m.group(1)) if x.strip()]
    try:
        sub = tuple(sorted(group.index(x) for x in names))
    except KeyError as exc:
        raise DataError(f"tag {tag!r}: {exc.args[0]}") from None
    if not group.is_subgroup(sub):
        raise DataError(f"tag {tag!r} does not describe a subgroup")
    t = re.search(r"twist\s*=\s*([^;\s]+)", tag)
    return sub, (t.group(1) if t else "trivial")


def species_of(eq: EquivariantQuiver) -> Species:
    """The species read off from orbit representatives.

    Vertex ``[v]`` carries ``End(S_v)`` (the indicator of the stabilizer) and
    the arrow ``[u] -> [v]`` carries the left dual of ``Ext(S_u, S_v)``.
    """
    G = eq.group
    ring = group_ring(G)
    reps = [o.representative for o in orbits(eq)]
    vertices = []
    for v in reps:
        cls, stab = internal_end(eq, v)
        vertices.append(Vertex(f"[{eq.vertices[v]}]", cls, format_tag(G, stab)))
    arrows = []
    for i, u in enumerate(reps):
        for j, v in enumerate(reps):
            ext = internal_ext(eq, u, v)
            if any(ext):
                arrows.append(Arrow(i, j, ext_to_arrow_class(G, ext)))
    return Species(ring, tuple(vertices), tuple(arrows))


@dataclass(frozen=True)
class GraphCertificate:
    """Outcome of recomputing every arrow over all pairs of orbit members."""

    pairs_checked: int
    passed: bool


def directed_graph_of(eq: EquivariantQuiver) -> tuple[DirectedGraph, GraphCertificate]:
    orbs = orbits(eq)
    arrows = []
    checked = 0
    for i, oi in enumerate(orbs):
        for j, oj in enumerate(orbs):
            present = any(internal_ext(eq, oi.representative, oj.representative))
            for u, v in product(oi.members, oj.members):
                checked += 1
                if any(internal_ext(eq, u, v)) != present:
                    raise CertificateError(
                        f"internal Ext nonvanishing differs between representatives "
                        f"({eq.vertices[oi.representative]}, {eq.vertices[oj.representative]}) and "
                        f"({eq.vertices[u]}, {eq.vertices[v]}); the action is not compatible")
            if present:
                arrows.append((i, j))
    graph = DirectedGraph(tuple(f"[{eq.vertices[o.representative]}]" for o in orbs), tuple(arrows))
    return graph, GraphCertificate(checked, True)


def grothendieck_module(eq: EquivariantQuiver) -> ZPlusModule:
    """Simples of ``rep(Q)`` as a Z+-module over the group ring (permutation action)."""
    G = eq.group
    A = np.zeros((G.order, eq.n, eq.n), dtype=np.int64)
    for g in range(G.order):
        for b in range(eq.n):
            A[g, eq.vertex_action[g][b], b] = 1
    return ZPlusModule(group_ring(G), eq.vertices, A)


def arrow_count_identity(eq: EquivariantQuiver) -> tuple[int, int]:
    """``(recovered, actual)`` arrow counts.

    The number of arrows from orbit ``O_u`` to orbit ``O_v`` equals
    ``|O_u| |O_v| sum_g e_g(u, v) / |G|`` for representatives ``u, v``; summing
    over orbit pairs must recover the total arrow count.
    """
    orbs = orbits(eq)
    total = 0
    for oi, oj in product(orbs, repeat=2):
        e = sum(internal_ext(eq, oi.representative, oj.representative))
        num = len(oi.members) * len(oj.members) * e
        if num % eq.group.order:
            raise CertificateError("non-integral orbit arrow count")
        total += num // eq.group.order
    return total, len(eq.arrows)


@dataclass(frozen=True)
class PointedDatum:
    subgroup: tuple[int, ...]
    schur_multiplier_order: int


POINTED_NOTE = ("over an algebraically closed field H^2(Z/n, k*) is trivial, so a cyclic "
                "subgroup admits only the untwisted group algebra up to isomorphism; for "
                "Z/2 the algebras k[x]/(x^2-1) and k[x]/(x^2+1) are identified by x -> ix, "
                "giving two module categories rather than three")


def pointed_module_data(group: FiniteGroup) -> list[PointedDatum]:
    """Subgroups of an abelian group with the order of their Schur multiplier."""
    if not group.is_abelian:
        raise UnsupportedError("pointed module data is only computed for abelian groups")
    return [PointedDatum(h, group.restrict(h).schur_multiplier_order()) for h in group.subgroups]


def induced_quiver(group: FiniteGroup, orbit_subgroups: Sequence[Sequence[int]],
                   arrow_reps: Sequence[tuple[int, int, int, int]],
                   names: Optional[Sequence[str]] = None) -> EquivariantQuiver:
    """Build an equivariant quiver from orbit types and arrow-orbit generators.

    Orbit ``o`` is the coset space ``G/H_o``. Each entry ``(o1, x, o2, y)`` of
    ``arrow_reps`` adds the G-orbit of an arrow from ``x H_{o1}`` to
    ``y H_{o2}``; its copies are indexed by cosets of the common stabilizer.
    """
    G = group
    vertices = []
    where: dict[tuple[int, tuple[int, ...]], int] = {}
    coset_of: list[dict[int, tuple[int, ...]]] = []
    for o, H in enumerate(orbit_subgroups):
        lookup = {}
        for c in G.left_cosets(H):
            where[(o, c)] = len(vertices)
            for a in c:
                lookup[a] = c
            prefix = names[o] if names else str(o)
            vertices.append(prefix if len(c) == G.order else f"{prefix}.{G.elements[c[0]]}")
        coset_of.append(lookup)

    def vertex(o, a):
        return where[(o, coset_of[o][a])]

    vertex_action = [[0] * len(vertices) for _ in range(G.order)]
    for (o, c), v in where.items():
        for g in range(G.order):
            vertex_action[g][v] = vertex(o, G.mult[g][c[0]])

    arrows: list[tuple[int, int]] = []
    arrow_action: list[list[int]] = [[] for _ in range(G.order)]
    for o1, x, o2, y in arrow_reps:
        s0, t0 = vertex(o1, x), vertex(o2, y)
        K = [g for g in range(G.order) if vertex_action[g][s0] == s0 and vertex_action[g][t0] == t0]
        copies = G.left_cosets(K)
        base = len(arrows)
        index = {}
        for n, c in enumerate(copies):
            for a in c:
                index[a] = base + n
            arrows.append((vertex_action[c[0]][s0], vertex_action[c[0]][t0]))
        for g in range(G.order):
            arrow_action[g].extend(index[G.mult[g][c[0]]] for c in copies)
    return EquivariantQuiver(G, tuple(vertices), tuple(arrows), tuple(map(tuple, vertex_action)),
                             tuple(map(tuple, arrow_action)))
