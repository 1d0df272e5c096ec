"""Z+-modules over fusion rings.

A module of rank ``m`` is a tuple of nonnegative integer ``m x m`` matrices
``A_i``, one per ring basis element, with ``(A_i)[a, b]`` the multiplicity of
module basis ``a`` in ``b_i . e_b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Optional, Sequence

import numpy as np

from . import guards
from .errors import ShapeError
from .ring import FusionRing, Violation


@dataclass(frozen=True, eq=False)
class ZPlusModule:
    ring: FusionRing
    labels: tuple[str, ...]
    action: np.ndarray  # shape (ring.rank, m, m)

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        m = len(labels)
        try:
            action = np.array(self.action, dtype=np.int64)
        except (ValueError, TypeError) as exc:
            raise ShapeError(f"action: not a rectangular integer array ({exc})") from None
        if m == 0 and action.size == 0:
            action = action.reshape(self.ring.rank, 0, 0)
        want = (self.ring.rank, m, m)
        if action.shape != want:
            raise ShapeError(f"action: expected shape {want}, got {action.shape}")
        action.setflags(write=False)
        object.__setattr__(self, "action", action)

    @property
    def rank(self) -> int:
        return len(self.labels)

    def __eq__(self, other):
        if not isinstance(other, ZPlusModule):
            return NotImplemented
        return (self.ring == other.ring and self.labels == other.labels
                and np.array_equal(self.action, other.action))

    def __hash__(self):
        return hash((self.ring, self.labels, self.action.tobytes()))

    def restrict(self, indices: Sequence[int]) -> ZPlusModule:
        """Submodule spanned by a union of equivalence classes."""
        idx = list(indices)
        return ZPlusModule(self.ring, tuple(self.labels[i] for i in idx),
                           self.action[:, idx][:, :, idx])

    def permuted(self, perm: Sequence[int]) -> ZPlusModule:
        """Relabel so that new basis ``perm[a]`` is old basis ``a``."""
        inv = np.argsort(perm)
        labels = tuple(self.labels[i] for i in inv)
        return ZPlusModule(self.ring, labels, self.action[:, inv][:, :, inv])

    def to_document(self) -> dict:
        return {"kind": "zplus_module", "ring": self.ring.to_document(),
                "labels": list(self.labels), "action": self.action.tolist()}


def direct_sum(*modules: ZPlusModule) -> ZPlusModule:
    ring = modules[0].ring
    m = sum(x.rank for x in modules)
    action = np.zeros((ring.rank, m, m), dtype=np.int64)
    labels = []
    off = 0
    for n, x in enumerate(modules):
        action[:, off:off + x.rank, off:off + x.rank] = x.action
        labels.extend(f"{lab}.{n}" for lab in x.labels)
        off += x.rank
    return ZPlusModule(ring, tuple(labels), action)


def validate_module(mod: ZPlusModule) -> list[Violation]:
    ring = mod.ring
    A = mod.action
    m = mod.rank
    out = []
    if (A < 0).any():
        for i, a, b in zip(*np.nonzero(A < 0)):
            out.append(Violation("nonnegativity", (int(i), int(a), int(b)), f"entry {A[i, a, b]}"))
    eye = np.eye(m, dtype=np.int64)
    if not np.array_equal(A[ring.unit], eye):
        for a, b in zip(*np.nonzero(A[ring.unit] != eye)):
            out.append(Violation("unit acts as identity", (int(a), int(b)),
                                 f"A_unit[{a}][{b}] = {A[ring.unit][a, b]}"))
    for i, j in product(range(ring.rank), repeat=2):
        lhs = A[i] @ A[j]
        rhs = np.einsum("k,kab->ab", ring.N[i, j], A)
        for a, b in zip(*np.nonzero(lhs != rhs)):
            out.append(Violation("associativity", (i, j, int(a), int(b)),
                                 f"(A_{i} A_{j})[{a}][{b}] = {lhs[a, b]} != {rhs[a, b]}"))
    for i in range(ring.rank):
        d = ring.dual[i]
        diff = A[d] != A[i].T
        for a, b in zip(*np.nonzero(diff)):
            out.append(Violation("duality compatibility", (i, int(a), int(b)),
                                 f"A_{d}[{a}][{b}] = {A[d][a, b]} != A_{i}[{b}][{a}] = {A[i][b, a]}"))
    return out


def regular_module(ring: FusionRing) -> ZPlusModule:
    # (A_i)[a, b] = multiplicity of b_a in b_i b_b = N[i, b, a]
    return ZPlusModule(ring, ring.labels, np.transpose(ring.N, (0, 2, 1)))


def equivalence_classes(mod: ZPlusModule) -> list[tuple[int, ...]]:
    """Connected components of the support graph of the action, sorted."""
    m = mod.rank
    support = mod.action.any(axis=0)
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in zip(*np.nonzero(support)):
        ra, rb = find(int(a)), find(int(b))
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    classes: dict[int, list[int]] = {}
    for a in range(m):
        classes.setdefault(find(a), []).append(a)
    return sorted(tuple(c) for c in classes.values())


@dataclass(frozen=True)
class RegularWitness:
    """``image[i]`` is the module basis index matched with ring basis ``i``;
    ``base`` is the module basis playing the role of the unit."""

    base: int
    image: tuple[int, ...]


def is_regular_iso(mod: ZPlusModule) -> Optional[RegularWitness]:
    """Find a relabeling identifying ``mod`` with the regular module, if any."""
    ring = mod.ring
    r = ring.rank
    if mod.rank != r:
        return None
    A = mod.action
    target = np.transpose(ring.N, (0, 2, 1))
    # a basis element carrying the unit's label is the natural first guess
    unit_label = ring.labels[ring.unit]
    candidates = sorted(range(r), key=lambda b: (mod.labels[b] != unit_label, b))
    for b in candidates:
        image = []
        for i in range(r):
            col = A[i][:, b]
            hits = np.nonzero(col)[0]
            if len(hits) != 1 or col[hits[0]] != 1:
                break
            image.append(int(hits[0]))
        else:
            if len(set(image)) != r:
                continue
            # relabel module basis image[k] -> k and compare with the regular action
            perm = np.array(image)
            if np.array_equal(A[:, perm][:, :, perm], target):
                return RegularWitness(base=b, image=tuple(image))
    return None


@dataclass(frozen=True)
class FreeSummand:
    indices: tuple[int, ...]
    witness: RegularWitness  # in global module indices


def decompose_free(mod: ZPlusModule) -> Optional[list[FreeSummand]]:
    """Split into equivalence classes; succeed iff each class is regular."""
    out = []
    for cls in equivalence_classes(mod):
        w = is_regular_iso(mod.restrict(cls))
        if w is None:
            return None
        out.append(FreeSummand(cls, RegularWitness(cls[w.base], tuple(cls[k] for k in w.image))))
    return out


# --- enumeration -----------------------------------------------------------

ENUMERATION_NOTE = ("modules are listed up to relabeling of the module basis only; "
                    "no quotient by automorphisms of the fusion ring is taken")


def enumerate_irreducible(ring: FusionRing, max_rank: int, max_entry: int) -> list[ZPlusModule]:
    """All irreducible Z+-modules of rank <= ``max_rank`` whose action matrices
    have entries <= ``max_entry``, one per isomorphism class.

    Exhaustive backtracking over the action entries with interval pruning on
    the associativity equations. Results are ordered by rank and then by the
    canonical (lexicographically minimal) form of their action.
    """
    guards.check(max_rank, guards.ENUM_MAX_RANK, "max_rank")
    guards.check(max_entry, guards.ENUM_MAX_ENTRY, "max_entry")
    out = []
    for m in range(1, max_rank + 1):
        forms = set()
        for action in _solutions(ring, m, max_entry):
            mod = ZPlusModule(ring, tuple(f"m{a}" for a in range(m)), action)
            if len(equivalence_classes(mod)) != 1:
                continue
            forms.add(_canonical_form(action))
        for form in sorted(forms):
            action = np.array(form, dtype=np.int64).reshape(ring.rank, m, m)
            out.append(ZPlusModule(ring, tuple(f"m{a}" for a in range(m)), action))
    return out


def _canonical_form(action: np.ndarray) -> tuple[int, ...]:
    m = action.shape[1]
    best = None
    for perm in permutations(range(m)):
        p = list(perm)
        form = tuple(action[:, p][:, :, p].ravel().tolist())
        if best is None or form < best:
            best = form
    return best


def _solutions(ring: FusionRing, m: int, emax: int):
    """Yield every action array of rank ``m`` satisfying the module axioms."""
    r = ring.rank
    u = ring.unit
    # slot (i, a, b) -> ("c", value) or ("v", var)
    slots: dict[tuple[int, int, int], tuple[str, int]] = {}
    nvars = 0
    order = sorted(product(range(m), repeat=2), key=lambda ab: (max(ab), ab))
    var_of: list[tuple[int, int, int]] = []
    for a, b in order:
        for i in range(r):
            if i == u:
                slots[(i, a, b)] = ("c", int(a == b))
                continue
            if (i, a, b) in slots:
                continue
            slots[(i, a, b)] = ("v", nvars)
            slots[(ring.dual[i], b, a)] = ("v", nvars)
            var_of.append((i, a, b))
            nvars += 1

    # A_i A_j = sum_k N[i,j,k] A_k ; unit rows/columns hold automatically
    live = [i for i in range(r) if i != u]
    equations = []
    for i, j in product(live, repeat=2):
        for a, b in product(range(m), repeat=2):
            lhs = [(slots[(i, a, c)], slots[(j, c, b)]) for c in range(m)]
            rhs = [(int(ring.N[i, j, k]), slots[(k, a, b)]) for k in range(r) if ring.N[i, j, k]]
            equations.append((lhs, rhs))
    touching: list[list[int]] = [[] for _ in range(nvars)]
    for e, (lhs, rhs) in enumerate(equations):
        vs = set()
        for s, t in lhs:
            for kind, v in (s, t):
                if kind == "v":
                    vs.add(v)
        for _, (kind, v) in rhs:
            if kind == "v":
                vs.add(v)
        for v in vs:
            touching[v].append(e)

    values: list[Optional[int]] = [None] * nvars

    def bounds(slot):
        kind, v = slot
        if kind == "c":
            return v, v
        x = values[v]
        return (0, emax) if x is None else (x, x)

    def feasible(e):
        lhs, rhs = equations[e]
        llo = lhi = 0
        for s, t in lhs:
            slo, shi = bounds(s)
            tlo, thi = bounds(t)
            llo += slo * tlo
            lhi += shi * thi
        rlo = rhi = 0
        for n, s in rhs:
            slo, shi = bounds(s)
            rlo += n * slo
            rhi += n * shi
        return llo <= rhi and rlo <= lhi

    def build():
        A = np.zeros((r, m, m), dtype=np.int64)
        for (i, a, b), (kind, v) in slots.items():
            A[i, a, b] = v if kind == "c" else values[v]
        return A

    def search(k):
        if k == nvars:
            yield build()
            return
        for x in range(emax + 1):
            values[k] = x
            if all(feasible(e) for e in touching[k]):
                yield from search(k + 1)
        values[k] = None

    if nvars == 0:
        A = build()
        mod = ZPlusModule(ring, tuple(f"m{a}" for a in range(m)), A)
        if not validate_module(mod):
            yield A
        return
    yield from search(0)
