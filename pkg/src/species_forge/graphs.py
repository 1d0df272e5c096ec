"""Small directed-graph utilities: cycle search, DOT output, quiver isomorphism."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import guards


def dot_quote(name: str) -> str:
    return '"' + str(name).replace("\\", "\\\\").replace('"', '\\"') + '"'


def find_cycle(n: int, edges: Iterable[tuple[int, int]]) -> Optional[list[int]]:
    """Return a directed cycle as a closed vertex walk ``[v0, ..., v0]``, or None.

    Iterative three-colour DFS; vertices and successors are visited in
    ascending order so the witness is deterministic.
    """
    succ: list[list[int]] = [[] for _ in range(n)]
    for s, t in edges:
        succ[s].append(t)
    for lst in succ:
        lst.sort()
    colour = [0] * n  # 0 new, 1 on stack, 2 done
    parent = [-1] * n
    for root in range(n):
        if colour[root]:
            continue
        stack = [(root, 0)]
        colour[root] = 1
        while stack:
            v, i = stack[-1]
            if i < len(succ[v]):
                stack[-1] = (v, i + 1)
                w = succ[v][i]
                if colour[w] == 1:
                    cycle = [v]
                    while cycle[-1] != w:
                        cycle.append(parent[cycle[-1]])
                    cycle.reverse()
                    return cycle + [w]
                if colour[w] == 0:
                    colour[w] = 1
                    parent[w] = v
                    stack.append((w, 0))
            else:
                colour[v] = 2
                stack.pop()
    return None


@dataclass(frozen=True)
class DirectedGraph:
    vertices: tuple[str, ...]
    arrows: tuple[tuple[int, int], ...]

    def __post_init__(self):
        n = len(self.vertices)
        arrows = tuple(sorted({(int(s), int(t)) for s, t in self.arrows}))
        if len(arrows) != len(self.arrows):
            raise ValueError("parallel arrows are not allowed in a DirectedGraph")
        for s, t in arrows:
            if not (0 <= s < n and 0 <= t < n):
                raise IndexError(f"arrow ({s}, {t}) references a missing vertex")
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(self, "arrows", arrows)

    def find_cycle(self) -> Optional[list[int]]:
        return find_cycle(len(self.vertices), self.arrows)

    def is_acyclic(self) -> bool:
        return self.find_cycle() is None

    def to_dot(self, name: str = "G") -> str:
        lines = [f"digraph {dot_quote(name)} {{"]
        lines += [f"  {dot_quote(v)};" for v in self.vertices]
        for s, t in self.arrows:
            lines.append(f"  {dot_quote(self.vertices[s])} -> {dot_quote(self.vertices[t])};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices), "arrows": [list(a) for a in self.arrows]}


def find_isomorphism(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]],
                     max_vertices: Optional[int] = guards.MAX_ISO_VERTICES) -> Optional[list[int]]:
    """Exact isomorphism search between multiplicity matrices.

    ``a[s][t]`` counts arrows ``s -> t``. Returns ``f`` with
    ``b[f[s]][f[t]] == a[s][t]`` for all ``s, t``, or None.
    """
    n = len(a)
    if len(b) != n:
        return None
    guards.check(n, max_vertices, "quiver vertices for isomorphism search")

    def signature(m, v):
        return (sum(m[v]), sum(row[v] for row in m), m[v][v],
                tuple(sorted(m[v])), tuple(sorted(row[v] for row in m)))

    sig_a = [signature(a, v) for v in range(n)]
    sig_b = [signature(b, v) for v in range(n)]
    if sorted(sig_a) != sorted(sig_b):
        return None
    # most constrained first: rarest signatures, then by connectivity to placed vertices
    order = sorted(range(n), key=lambda v: (sum(s == sig_a[v] for s in sig_a), v))
    mapping: list[int] = [-1] * n
    used = [False] * n

    def extend(k):
        if k == n:
            return True
        v = order[k]
        for w in range(n):
            if used[w] or sig_b[w] != sig_a[v]:
                continue
            ok = True
            for u in order[:k]:
                fu = mapping[u]
                if a[v][u] != b[w][fu] or a[u][v] != b[fu][w]:
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used[w] = True
                if extend(k + 1):
                    return True
                used[w] = False
                mapping[v] = -1
        return False

    return list(mapping) if extend(0) else None
