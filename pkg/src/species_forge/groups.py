"""Finite groups given by multiplication tables."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

from .errors import GroupAxiomError


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group presented by its Cayley table.

    ``mult[a][b]`` is the index of the product ``a * b``. The axioms are
    checked exhaustively on construction.
    """

    elements: tuple[str, ...]
    unit: int
    mult: tuple[tuple[int, ...], ...]
    inverse: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(str(e) for e in self.elements))
        object.__setattr__(self, "mult", tuple(tuple(int(x) for x in row) for row in self.mult))
        n = len(self.elements)
        if n == 0:
            raise GroupAxiomError("a group needs at least one element")
        if len(self.mult) != n or any(len(row) != n for row in self.mult):
            raise GroupAxiomError(f"multiplication table must be {n}x{n}")
        if not 0 <= self.unit < n:
            raise GroupAxiomError(f"unit index {self.unit} out of range")
        if any(not 0 <= x < n for row in self.mult for x in row):
            raise GroupAxiomError("multiplication table entry out of range")
        m = self.mult
        for a in range(n):
            if m[self.unit][a] != a or m[a][self.unit] != a:
                raise GroupAxiomError(f"unit axiom fails at element {self.elements[a]!r}")
        for a, b, c in product(range(n), repeat=3):
            if m[m[a][b]][c] != m[a][m[b][c]]:
                raise GroupAxiomError(
                    f"associativity fails at ({self.elements[a]}, {self.elements[b]}, {self.elements[c]})")
        inv = []
        for a in range(n):
            right = [b for b in range(n) if m[a][b] == self.unit]
            if len(right) != 1 or m[right[0]][a] != self.unit:
                raise GroupAxiomError(f"element {self.elements[a]!r} has no two-sided inverse")
            inv.append(right[0])
        object.__setattr__(self, "inverse", tuple(inv))

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, name) -> int:
        """Element index from a name (or an int index passed through)."""
        if isinstance(name, int):
            if not 0 <= name < self.order:
                raise IndexError(f"group element index {name} out of range")
            return name
        try:
            return self.elements.index(str(name))
        except ValueError:
            raise KeyError(f"unknown group element {name!r}") from None

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def power(self, a: int, k: int) -> int:
        x = self.unit
        for _ in range(k):
            x = self.mult[x][a]
        return x

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.unit:
            x = self.mult[x][a]
            k += 1
        return k

    @cached_property
    def is_abelian(self) -> bool:
        n = self.order
        return all(self.mult[a][b] == self.mult[b][a] for a in range(n) for b in range(a + 1, n))

    def generated(self, gens) -> frozenset[int]:
        """Subgroup generated by ``gens``."""
        sub = {self.unit}
        frontier = [self.unit]
        gens = list(gens)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mult[x][g]
                if y not in sub:
                    sub.add(y)
                    frontier.append(y)
        return frozenset(sub)

    @cached_property
    def subgroups(self) -> tuple[tuple[int, ...], ...]:
        """All subgroups, sorted by order and then by element indices."""
        found = {frozenset([self.unit])}
        queue = [frozenset([self.unit])]
        while queue:
            h = queue.pop()
            for g in range(self.order):
                if g in h:
                    continue
                k = self.generated(set(h) | {g})
                if k not in found:
                    found.add(k)
                    queue.append(k)
        return tuple(sorted((tuple(sorted(h)) for h in found), key=lambda h: (len(h), h)))

    def is_subgroup(self, subset) -> bool:
        s = set(subset)
        if self.unit not in s:
            return False
        return all(self.mult[a][self.inverse[b]] in s for a in s for b in s)

    def left_cosets(self, subgroup) -> list[tuple[int, ...]]:
        """Left cosets ``aH`` ordered by their smallest element."""
        seen = set()
        cosets = []
        for a in range(self.order):
            if a in seen:
                continue
            c = tuple(sorted(self.mult[a][h] for h in subgroup))
            seen.update(c)
            cosets.append(c)
        return cosets

    def restrict(self, subgroup) -> FiniteGroup:
        """The subgroup as a group in its own right (elements re-indexed)."""
        sub = sorted(subgroup)
        pos = {g: i for i, g in enumerate(sub)}
        return FiniteGroup(
            elements=[self.elements[g] for g in sub],
            unit=pos[self.unit],
            mult=[[pos[self.mult[a][b]] for b in sub] for a in sub],
        )

    def elementary_divisors(self) -> list[int]:
        """Prime-power orders ``p^a`` of the cyclic factors (abelian groups only)."""
        if not self.is_abelian:
            raise ValueError("elementary divisors are only defined for abelian groups")
        divisors = []
        for p in _prime_factors(self.order):
            # log_p #{x : x^(p^k) = e} = sum_i min(a_i, k)
            logs = [0]
            k = 1
            while True:
                count = sum(1 for x in range(self.order) if self.power(x, p**k) == self.unit)
                logs.append(round(math.log(count, p)))
                if logs[-1] == logs[-2]:
                    break
                k += 1
            # number of factors with exponent >= k
            at_least = [logs[k] - logs[k - 1] for k in range(1, len(logs))]
            for k in range(len(at_least)):
                exactly = at_least[k] - (at_least[k + 1] if k + 1 < len(at_least) else 0)
                divisors.extend([p ** (k + 1)] * exactly)
        return sorted(divisors)

    def invariant_factors(self) -> list[int]:
        """Invariant factors ``d_1 | d_2 | ...`` (abelian groups only)."""
        by_prime: dict[int, list[int]] = {}
        for q in self.elementary_divisors():
            by_prime.setdefault(_prime_factors(q)[0], []).append(q)
        length = max((len(v) for v in by_prime.values()), default=0)
        factors = [1] * length
        for qs in by_prime.values():
            qs = sorted(qs, reverse=True)
            for i, q in enumerate(qs):
                factors[length - 1 - i] *= q
        return factors

    def schur_multiplier_order(self) -> int:
        """Order of H^2(G, k*) for a finite abelian group over an algebraically closed field.

        Product of gcd(d_i, d_j) over pairs i < j of invariant factors.
        """
        d = self.invariant_factors()
        out = 1
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                out *= math.gcd(d[i], d[j])
        return out

    def to_document(self) -> dict:
        return {"kind": "group", "elements": list(self.elements), "unit": self.unit,
                "mult": [list(row) for row in self.mult]}


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(elements=[str(i) for i in range(n)], unit=0,
                       mult=[[(a + b) % n for b in range(n)] for a in range(n)])


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    pairs = list(product(range(g.order), range(h.order)))
    pos = {p: i for i, p in enumerate(pairs)}
    return FiniteGroup(
        elements=[f"({g.elements[a]},{h.elements[b]})" for a, b in pairs],
        unit=pos[(g.unit, h.unit)],
        mult=[[pos[(g.mult[a][c], h.mult[b][d])] for c, d in pairs] for a, b in pairs],
    )


def symmetric_group(n: int) -> FiniteGroup:
    from itertools import permutations

    perms = list(permutations(range(n)))
    pos = {p: i for i, p in enumerate(perms)}
    return FiniteGroup(
        elements=["".join(map(str, p)) for p in perms],
        unit=pos[tuple(range(n))],
        # (p * q)(x) = p(q(x))
        mult=[[pos[tuple(p[q[x]] for x in range(n))] for q in perms] for p in perms],
    )
