"""Fusion rings: structure constants, products, duals and Frobenius-Perron dimensions."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from .errors import ShapeError
from .groups import FiniteGroup

Element = tuple[int, ...]
"""A ring element: nonnegative multiplicity of each basis class."""


@dataclass(frozen=True)
class Violation:
    """One failed axiom. ``where`` holds the offending indices."""

    axiom: str
    where: tuple
    detail: str

    def __str__(self):
        return f"{self.axiom} at {self.where}: {self.detail}"

    def to_dict(self) -> dict:
        return {"axiom": self.axiom, "where": list(self.where), "detail": self.detail}


@dataclass(frozen=True, eq=False)
class FusionRing:
    """Based ring with nonnegative integer structure constants.

    ``N[i, j, k]`` is the multiplicity of basis ``k`` in ``b_i * b_j``.
    Construction only checks shapes; use :func:`validate_ring` for the axioms.
    """

    labels: tuple[str, ...]
    unit: int
    dual: tuple[int, ...]
    N: np.ndarray

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        r = len(labels)
        try:
            N = np.array(self.N, dtype=np.int64)
        except (ValueError, TypeError) as exc:
            raise ShapeError(f"N: not a rectangular integer array ({exc})") from None
        if N.shape != (r, r, r):
            raise ShapeError(f"N: expected shape {(r, r, r)} for rank {r}, got {N.shape}")
        N.setflags(write=False)
        object.__setattr__(self, "N", N)
        dual = tuple(int(x) for x in self.dual)
        if len(dual) != r:
            raise ShapeError(f"dual: expected length {r}, got {len(dual)}")
        if any(not 0 <= d < r for d in dual):
            raise ShapeError("dual: entries must be basis indices")
        object.__setattr__(self, "dual", dual)
        if not 0 <= int(self.unit) < r:
            raise ShapeError(f"unit: index {self.unit} out of range for rank {r}")
        object.__setattr__(self, "unit", int(self.unit))

    def __eq__(self, other):
        if not isinstance(other, FusionRing):
            return NotImplemented
        return (self.labels == other.labels and self.unit == other.unit
                and self.dual == other.dual and np.array_equal(self.N, other.N))

    def __hash__(self):
        return hash((self.labels, self.unit, self.dual, self.N.tobytes()))

    @property
    def rank(self) -> int:
        return len(self.labels)

    def basis(self, i) -> Element:
        """Basis element by index or label."""
        i = self.index(i)
        return tuple(int(k == i) for k in range(self.rank))

    def zero(self) -> Element:
        return (0,) * self.rank

    def index(self, label) -> int:
        if isinstance(label, (int, np.integer)):
            if not 0 <= label < self.rank:
                raise IndexError(f"basis index {label} out of range")
            return int(label)
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise KeyError(f"unknown basis label {label!r}") from None

    def left_matrix(self, i: int) -> np.ndarray:
        """``M[a, b] = N[i, a, b]``, the matrix of left multiplication by ``b_i``
        in the convention where the image of ``b_a`` is row ``a``."""
        return self.N[i]

    def element(self, coeffs: Sequence[int]) -> Element:
        """Check and normalise a coefficient vector."""
        x = tuple(int(c) for c in coeffs)
        if len(x) != self.rank:
            raise ShapeError(f"element has length {len(x)}, ring rank is {self.rank}")
        if any(c < 0 for c in x):
            raise ValueError(f"element coefficients must be nonnegative, got {x}")
        return x

    def format(self, x: Sequence[int]) -> str:
        """Human form such as ``1 + 2*Phi``; ``0`` for the zero element."""
        terms = []
        for c, lab in zip(x, self.labels):
            if c == 1:
                terms.append(lab)
            elif c:
                terms.append(f"{c}*{lab}")
        return " + ".join(terms) if terms else "0"

    def parse(self, text: str) -> Element:
        """Inverse of :meth:`format`; also accepts a JSON-like list ``[1, 1]``."""
        text = text.strip()
        if text.startswith("["):
            return self.element(int(t) for t in text.strip("[]").split(",") if t.strip())
        if text == "0":
            return self.zero()
        coeffs = [0] * self.rank
        for term in text.split("+"):
            term = term.strip()
            c = 1
            if "*" in term:
                head, term = term.split("*", 1)
                c = int(head)
                term = term.strip()
            coeffs[self.index(term)] += c
        return tuple(coeffs)

    def to_document(self) -> dict:
        return {"kind": "fusion_ring", "labels": list(self.labels), "unit": self.unit,
                "dual": list(self.dual), "N": self.N.tolist()}


def validate_ring(ring: FusionRing) -> list[Violation]:
    """Return every violated fusion-ring axiom; an empty list means valid."""
    N = ring.N
    r = ring.rank
    u = ring.unit
    out = []
    if (N < 0).any():
        for i, j, k in zip(*np.nonzero(N < 0)):
            out.append(Violation("nonnegativity", (int(i), int(j), int(k)), f"N = {N[i, j, k]}"))
    for i, k in product(range(r), repeat=2):
        want = int(i == k)
        if N[u, i, k] != want:
            out.append(Violation("left unit", (i, k), f"N[unit][{i}][{k}] = {N[u, i, k]}, expected {want}"))
        if N[i, u, k] != want:
            out.append(Violation("right unit", (i, k), f"N[{i}][unit][{k}] = {N[i, u, k]}, expected {want}"))
    # (b_i b_j) b_k  vs  b_i (b_j b_k)
    left = np.einsum("ijm,mkl->ijkl", N, N)
    right = np.einsum("jkm,iml->ijkl", N, N)
    for i, j, k, l in zip(*np.nonzero(left != right)):
        idx = (int(i), int(j), int(k), int(l))
        out.append(Violation("associativity", idx, f"{left[idx]} != {right[idx]}"))
    d = ring.dual
    for i in range(r):
        if d[d[i]] != i:
            out.append(Violation("dual involution", (i,), f"dual(dual({i})) = {d[d[i]]}"))
    if d[u] != u:
        out.append(Violation("dual of unit", (u,), f"dual(unit) = {d[u]}"))
    for i, j in product(range(r), repeat=2):
        want = int(j == d[i])
        if N[i, j, u] != want:
            out.append(Violation("duality", (i, j), f"N[{i}][{j}][unit] = {N[i, j, u]}, expected {want}"))
    for i, j, k in product(range(r), repeat=3):
        if N[i, j, k] != N[d[j], d[i], d[k]]:
            out.append(Violation("dual symmetry", (i, j, k),
                                 f"N[{i}][{j}][{k}] = {N[i, j, k]} != N[{d[j]}][{d[i]}][{d[k]}] = {N[d[j], d[i], d[k]]}"))
    for i in range(r):
        if not N[i].any():
            out.append(Violation("nonzero action", (i,), f"basis {ring.labels[i]} multiplies everything to 0"))
    return out


def multiply(ring: FusionRing, a: Sequence[int], b: Sequence[int]) -> Element:
    a = ring.element(a)
    b = ring.element(b)
    out = np.einsum("i,j,ijk->k", np.array(a, dtype=object), np.array(b, dtype=object), ring.N.astype(object))
    return tuple(int(c) for c in out)


def add(ring: FusionRing, *xs: Sequence[int]) -> Element:
    total = [0] * ring.rank
    for x in xs:
        for k, c in enumerate(ring.element(x)):
            total[k] += c
    return tuple(total)


def scale(ring: FusionRing, c: int, x: Sequence[int]) -> Element:
    return tuple(c * v for v in ring.element(x))


def dual_element(ring: FusionRing, x: Sequence[int]) -> Element:
    x = ring.element(x)
    out = [0] * ring.rank
    for i, c in enumerate(x):
        out[ring.dual[i]] += c
    return tuple(out)


@lru_cache(maxsize=128)
def basis_fpdims(ring: FusionRing) -> np.ndarray:
    """Frobenius-Perron dimension of every basis element.

    The FP dimension of ``b_i`` is the spectral radius of its nonnegative
    left-multiplication matrix, which is itself an eigenvalue.
    """
    dims = np.array([perron_root(ring.N[i]) for i in range(ring.rank)])
    dims.setflags(write=False)
    return dims


def perron_root(matrix) -> float:
    """Perron-Frobenius root (spectral radius) of a square nonnegative matrix."""
    m = np.asarray(matrix, dtype=float)
    if m.size == 0:
        return 0.0
    eig = np.linalg.eigvals(m)
    rho = float(np.max(np.abs(eig)))
    # the spectral radius of a nonnegative matrix is a real eigenvalue; take
    # the real eigenvalue closest to it to shed rounding in the modulus
    real = eig[np.abs(eig.imag) <= 1e-9 * max(1.0, rho)].real
    if real.size:
        rho = float(real[np.argmin(np.abs(real - rho))])
    return rho


def fpdim(ring: FusionRing, x: Sequence[int]) -> float:
    x = ring.element(x)
    return float(np.dot(basis_fpdims(ring), np.array(x, dtype=float)))


def group_ring(group: FiniteGroup) -> FusionRing:
    """Integral group ring as a pointed fusion ring: ``b_g b_h = b_{gh}``."""
    n = group.order
    N = np.zeros((n, n, n), dtype=np.int64)
    for g in range(n):
        for h in range(n):
            N[g, h, group.mult[g][h]] = 1
    return FusionRing(labels=tuple(f"k{e}" for e in group.elements), unit=group.unit,
                      dual=group.inverse, N=N)


def trivial_ring(label: str = "1") -> FusionRing:
    """Fusion ring of ``vect``: rank one, ``1 * 1 = 1``."""
    return FusionRing(labels=(label,), unit=0, dual=(0,), N=[[[1]]])


def fibonacci_ring() -> FusionRing:
    """``Phi * Phi = 1 + Phi``."""
    N = np.zeros((2, 2, 2), dtype=np.int64)
    N[0, 0, 0] = 1
    N[0, 1, 1] = N[1, 0, 1] = 1
    N[1, 1, 0] = N[1, 1, 1] = 1
    return FusionRing(labels=("1", "Phi"), unit=0, dual=(0, 1), N=N)
