"""The derivation ``D_t``, the divergence ``delta`` and the number operator.

On the grid, ``D_k J_n(f) = n J_{n-1}(f(k, .))`` where ``f(k, .)`` is the first-argument
slice of :func:`antisym.slice_first`; at coefficient level this is
``(-1)^{#(T < k)} c_{T + k} / sqrt(width)``. The divergence is the exact adjoint of ``D``
for the pairing ``<u, v> = width * sum_k <u_k, v_k>``.

Domain questions are vacuous in finite dimension: every element lies in the domain
of both operators, so only the algebraic identities are implemented and tested.
"""
from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from . import _combinatorics as comb
from .antisym import AntiTensor, all_slices
from .chaos import CliffordElement, adjoint, l2_inner, multiply
from .errors import DegreeMismatchError
from .grid import TimeGrid, check_same_grid


class ProcessElement:
    """A slot-indexed family ``(u_1, ..., u_d)`` of Clifford elements."""

    __slots__ = ("grid", "components")

    def __init__(self, grid: TimeGrid, components: Sequence[CliffordElement]):
        comps = tuple(components)
        if len(comps) != grid.slots:
            raise ValueError(f"expected {grid.slots} components, got {len(comps)}")
        for c in comps:
            check_same_grid(grid, c.grid)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "components", comps)

    def __setattr__(self, name, value):
        raise AttributeError("ProcessElement is immutable")

    @classmethod
    def zero(cls, grid: TimeGrid) -> "ProcessElement":
        return cls(grid, [CliffordElement.zero(grid)] * grid.slots)

    @classmethod
    def from_slots(cls, grid: TimeGrid, parts: dict[int, CliffordElement]) -> "ProcessElement":
        """Build from ``{slot: element}`` with 1-based slots; missing slots are zero."""
        grid.slot_set(parts)
        zero = CliffordElement.zero(grid)
        return cls(grid, [parts.get(k, zero) for k in range(1, grid.slots + 1)])

    @classmethod
    def elementary(cls, h: AntiTensor, F: CliffordElement) -> "ProcessElement":
        """``h (x) F``: slot ``k`` carries the pointwise value ``h(k) = c_k / sqrt(width)`` times ``F``."""
        if h.degree != 1:
            raise DegreeMismatchError("h must be a degree-1 tensor")
        grid = check_same_grid(h.grid, F.grid)
        vals = h.coeffs / math.sqrt(grid.width)
        return cls(grid, [F.scale(v) for v in vals])

    def __getitem__(self, slot: int) -> CliffordElement:
        """1-based slot access."""
        if not 1 <= slot <= self.grid.slots:
            raise IndexError(slot)
        return self.components[slot - 1]

    def map(self, fn) -> "ProcessElement":
        return ProcessElement(self.grid, [fn(c) for c in self.components])

    def __add__(self, other: "ProcessElement"):
        check_same_grid(self.grid, other.grid)
        return ProcessElement(self.grid, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: "ProcessElement"):
        check_same_grid(self.grid, other.grid)
        return ProcessElement(self.grid, [a - b for a, b in zip(self.components, other.components)])

    def scale(self, c: complex) -> "ProcessElement":
        return self.map(lambda x: x.scale(c))

    def norm(self) -> float:
        return math.sqrt(self.grid.width * sum(c.norm() ** 2 for c in self.components))

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(c.is_zero(tol) for c in self.components)


def process_inner(u: ProcessElement, v: ProcessElement) -> complex:
    """``width * sum_k <u_k, v_k>_{L^2(C)}``."""
    check_same_grid(u.grid, v.grid)
    return u.grid.width * sum(l2_inner(a, b) for a, b in zip(u.components, v.components))


def derivative(F: CliffordElement) -> ProcessElement:
    grid = F.grid
    d = grid.slots
    per_slot: list[dict[int, AntiTensor]] = [{} for _ in range(d)]
    for n, f in F.levels.items():
        if n == 0:
            continue
        table = n * all_slices(f)
        for k in range(d):
            per_slot[k][n - 1] = AntiTensor(grid, n - 1, table[k])
    return ProcessElement(grid, [CliffordElement(grid, lv) for lv in per_slot])


def derivative_at(F: CliffordElement, slot: int) -> CliffordElement:
    return derivative(F)[slot]


def divergence(u: ProcessElement) -> CliffordElement:
    """``delta(u) = sum_n J_{n+1}(hat w_n)`` with ``w_n(k, .)`` the level-n part of ``u_k``."""
    grid = u.grid
    d = grid.slots
    root = math.sqrt(grid.width)
    degrees = sorted({n for c in u.components for n in c.levels})
    out = {}
    for n in degrees:
        if n + 1 > d:
            continue
        A = np.stack([c.level(n).coeffs for c in u.components])  # (d, C(d, n))
        src, ks, dst, sign = comb.slice_table(d, n + 1)
        coeffs = np.zeros(comb.size(d, n + 1), dtype=complex)
        np.add.at(coeffs, src, sign * A[ks, dst])
        out[n + 1] = AntiTensor(grid, n + 1, root * coeffs)
    return CliffordElement(grid, out)


def number_operator(F: CliffordElement) -> CliffordElement:
    """``R = delta o D``: multiplies chaos level ``n`` by ``n``."""
    return CliffordElement(F.grid, {n: t * n for n, t in F.levels.items()})


def inv_number(F: CliffordElement, tol: float = 1e-12) -> CliffordElement:
    """Inverse of ``R`` on centred elements."""
    m0 = F.level(0).coeffs[0] if F.levels.get(0) is not None else 0.0
    if abs(m0) > tol * (1 + F.norm()):
        raise ValueError(f"inv_number needs m(F) = 0, got {m0}")
    return CliffordElement(F.grid, {n: t / n for n, t in F.levels.items() if n > 0})


def carre_norm(F: CliffordElement) -> CliffordElement:
    """``||D.F||^2 = width * sum_k (D_k F)^* (D_k F)``."""
    return process_square(derivative(F))


def process_square(u: ProcessElement, v: ProcessElement | None = None) -> CliffordElement:
    """``width * sum_k u_k^* v_k`` as a Clifford element (``v`` defaults to ``u``)."""
    v = u if v is None else v
    check_same_grid(u.grid, v.grid)
    acc = CliffordElement.zero(u.grid)
    for a, b in zip(u.components, v.components):
        acc = acc + multiply(adjoint(a), b)
    return acc.scale(u.grid.width)
