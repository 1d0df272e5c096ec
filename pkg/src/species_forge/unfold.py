"""Unfolding species over a fusion ring into ordinary quivers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import guards
from .equivariant import (TRIVIAL_TWISTS, EquivariantQuiver, arrow_class_to_ext, parse_tag,
                          species_of, validate_equivariant)
from .errors import CertificateError, DataError, PreconditionError, RoundTripError
from .graphs import dot_quote, find_cycle, find_isomorphism
from .groups import FiniteGroup
from .ring import multiply
from .species import Species


@dataclass(frozen=True)
class OrdinaryQuiver:
    """Vertices plus arrows ``(source, target, multiplicity)``, sorted, multiplicities >= 1."""

    vertices: tuple[str, ...]
    arrows: tuple[tuple[int, int, int], ...] = field(default_factory=tuple)

    def __post_init__(self):
        n = len(self.vertices)
        merged: dict[tuple[int, int], int] = {}
        for s, t, m in self.arrows:
            if not (0 <= s < n and 0 <= t < n):
                raise IndexError(f"arrow ({s}, {t}) references a missing vertex")
            if m < 0:
                raise ValueError("arrow multiplicities must be nonnegative")
            if m:
                merged[(int(s), int(t))] = merged.get((int(s), int(t)), 0) + int(m)
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(self, "arrows", tuple((s, t, m) for (s, t), m in sorted(merged.items())))

    @classmethod
    def from_matrix(cls, vertices, matrix) -> OrdinaryQuiver:
        n = len(vertices)
        return cls(tuple(vertices), tuple((s, t, matrix[s][t]) for s in range(n) for t in range(n)
                                          if matrix[s][t]))

    def matrix(self) -> list[list[int]]:
        n = len(self.vertices)
        m = [[0] * n for _ in range(n)]
        for s, t, k in self.arrows:
            m[s][t] = k
        return m

    @property
    def arrow_count(self) -> int:
        return sum(k for _, _, k in self.arrows)

    def is_acyclic(self) -> bool:
        return find_cycle(len(self.vertices), [(s, t) for s, t, _ in self.arrows]) is None

    def undirected_edges(self) -> list[tuple[int, int]]:
        return sorted({(min(s, t), max(s, t)) for s, t, _ in self.arrows})

    def is_connected(self) -> bool:
        n = len(self.vertices)
        if n == 0:
            return True
        adj = {v: set() for v in range(n)}
        for s, t, _ in self.arrows:
            adj[s].add(t)
            adj[t].add(s)
        seen, stack = {0}, [0]
        while stack:
            for w in adj[stack.pop()] - seen:
                seen.add(w)
                stack.append(w)
        return len(seen) == n

    def is_path_graph(self) -> bool:
        """Underlying undirected simple graph is a path through every vertex, each
        edge carrying a single arrow."""
        n = len(self.vertices)
        if any(k != 1 for _, _, k in self.arrows) or any(s == t for s, t, _ in self.arrows):
            return False
        edges = self.undirected_edges()
        if len(edges) != n - 1 or len(edges) != len(self.arrows):
            return False
        degree = [0] * n
        for s, t in edges:
            degree[s] += 1
            degree[t] += 1
        return self.is_connected() and (n == 1 or sorted(degree) == [1, 1] + [2] * (n - 2))

    def to_dot(self, name: str = "Q") -> str:
        lines = [f"digraph {dot_quote(name)} {{"]
        lines += [f"  {dot_quote(v)};" for v in self.vertices]
        for s, t, m in self.arrows:
            lines.append(f"  {dot_quote(self.vertices[s])} -> {dot_quote(self.vertices[t])} [label=\"{m}\"];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_document(self) -> dict:
        return {"kind": "quiver", "vertices": list(self.vertices),
                "arrows": [{"from": s, "to": t, "mult": m} for s, t, m in self.arrows]}


def unfold_quiver_species(s: Species) -> OrdinaryQuiver:
    """Ordinary quiver on pairs ``(vertex, simple)``.

    The number of arrows ``(i, X) -> (j, Y)`` is the multiplicity of ``Y`` in
    ``E_ij * X``.
    """
    if not s.is_quiver:
        raise PreconditionError("unfold_quiver_species needs every vertex algebra to be the unit; "
                                "use pointed_unfold for species over a group ring")
    ring = s.ring
    r = ring.rank
    names = [f"({v.label}, {x})" for v in s.vertices for x in ring.labels]
    arrows = []
    for a in s.arrows:
        for x in range(r):
            out = multiply(ring, a.cls, ring.basis(x))
            for y, m in enumerate(out):
                if m:
                    arrows.append((a.source * r + x, a.target * r + y, m))
    return OrdinaryQuiver(tuple(names), tuple(arrows))


def _group_of(s: Species) -> FiniteGroup:
    """Recover the group from a group ring (every product is a single basis element)."""
    ring = s.ring
    mult = []
    for g in range(ring.rank):
        row = []
        for h in range(ring.rank):
            out = ring.N[g, h]
            if out.sum() != 1:
                raise PreconditionError("pointed_unfold needs a group ring (pointed fusion ring)")
            row.append(int(out.argmax()))
        mult.append(row)
    names = [lab[1:] if lab.startswith("k") else lab for lab in ring.labels]
    return FiniteGroup(names, ring.unit, mult)


def pointed_unfold(s: Species) -> OrdinaryQuiver:
    """Ordinary quiver on pairs ``(vertex, coset of its subgroup)``.

    Vertex ``i`` must carry the indicator class of a subgroup ``H_i`` (named by
    its tag, or inferred from the class when untagged) with trivial twist. The
    number of arrows ``a.u_i -> b.u_j`` is the ``k_{b^-1 a}`` component of the
    internal Ext recovered from ``E_ij``; this must be constant on cosets.
    """
    G = _group_of(s)
    subgroups = []
    for n, v in enumerate(s.vertices):
        if v.tag is not None:
            H, twist = parse_tag(G, v.tag)
            if twist not in TRIVIAL_TWISTS:
                raise DataError(f"vertex {v.label!r} has twist {twist!r}; only trivial twists can be unfolded")
        else:
            H = tuple(g for g in range(G.order) if v.cls[g])
            if not G.is_subgroup(H):
                raise DataError(f"vertex {v.label!r}: class {s.ring.format(v.cls)} is not a subgroup indicator")
        indicator = tuple(int(g in H) for g in range(G.order))
        if tuple(v.cls) != indicator:
            raise DataError(f"vertex {v.label!r}: class {s.ring.format(v.cls)} does not match the "
                            f"indicator of its subgroup {s.ring.format(indicator)}")
        subgroups.append(H)

    cosets = [G.left_cosets(H) for H in subgroups]
    names, index = [], {}
    for i, v in enumerate(s.vertices):
        for c in cosets[i]:
            index[(i, c)] = len(names)
            names.append(f"({v.label}, {{{','.join(G.elements[g] for g in c)}}})")
    arrows = []
    for a in s.arrows:
        ext = arrow_class_to_ext(G, a.cls)
        i, j = a.source, a.target
        for ci in cosets[i]:
            for cj in cosets[j]:
                counts = {ext[G.mult[G.inverse[y]][x]] for x in ci for y in cj}
                if len(counts) != 1:
                    raise CertificateError(
                        f"arrow {s.vertices[i].label} -> {s.vertices[j].label}: class "
                        f"{s.ring.format(a.cls)} is not invariant under the vertex stabilizers")
                m = counts.pop()
                if m:
                    arrows.append((index[(i, ci)], index[(j, cj)], m))
    return OrdinaryQuiver(tuple(names), tuple(arrows))


@dataclass(frozen=True)
class RoundTripReport:
    species: Species
    unfolded: OrdinaryQuiver
    original: OrdinaryQuiver
    witness: list[int]  # witness[v] = unfolded vertex matched with original vertex v


def round_trip(eq: EquivariantQuiver, max_vertices: Optional[int] = guards.MAX_ISO_VERTICES) -> RoundTripReport:
    """Extract the species, unfold it again and match it with the original quiver."""
    problems = validate_equivariant(eq)
    if problems:
        raise PreconditionError(f"invalid equivariant quiver: {problems[0]}")
    sp = species_of(eq)
    unfolded = pointed_unfold(sp)
    original = OrdinaryQuiver.from_matrix(eq.vertices, eq.multiplicities())
    witness = find_isomorphism(original.matrix(), unfolded.matrix(), max_vertices)
    if witness is None:
        raise RoundTripError("unfolded species is not isomorphic to the original quiver",
                             expected=original, obtained=unfolded)
    return RoundTripReport(sp, unfolded, original, witness)
