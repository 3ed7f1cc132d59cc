"""Clifford algebra elements as finite chaos expansions ``F = sum_n J_n(f_n)``.

Products follow the multiplication formula for multiple integrals,

    J_p(f) J_q(g) = sum_{r=0}^{min(p,q)} r! C(p,r) C(q,r) J_{p+q-2r}(f ^_r g),

with ``^_r`` the antisymmetrized contraction of :func:`antisym.contract`.
The vacuum state ``m`` reads off the degree-0 coefficient.
"""
from __future__ import annotations

import math
from typing import Iterable, Mapping

import numpy as np

from . import _combinatorics as comb
from .antisym import AntiTensor, contract, conj, reverse
from .errors import DegreeMismatchError
from .grid import TimeGrid, check_same_grid


class CliffordElement:
    """Immutable finite chaos expansion on a fixed grid."""

    __slots__ = ("grid", "levels")

    def __init__(self, grid: TimeGrid, levels: Mapping[int, AntiTensor] | Iterable[AntiTensor] = ()):
        items = levels.items() if isinstance(levels, Mapping) else ((t.degree, t) for t in levels)
        out: dict[int, AntiTensor] = {}
        for n, t in items:
            check_same_grid(grid, t.grid)
            if t.degree != n:
                raise DegreeMismatchError(f"level {n} holds a degree-{t.degree} tensor")
            if n > grid.slots:
                continue
            out[n] = out[n] + t if n in out else t
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "levels", dict(sorted(out.items())))

    def __setattr__(self, name, value):
        raise AttributeError("CliffordElement is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, grid: TimeGrid) -> "CliffordElement":
        return cls(grid)

    @classmethod
    def constant(cls, grid: TimeGrid, value: complex = 1.0) -> "CliffordElement":
        return cls(grid, [AntiTensor.scalar(grid, value)])

    @classmethod
    def J(cls, f: AntiTensor) -> "CliffordElement":
        """The multiple integral ``J_n(f)``."""
        return cls(f.grid, [f])

    @classmethod
    def psi(cls, z: AntiTensor) -> "CliffordElement":
        """The field ``Psi(z) = J_1(z)``."""
        if z.degree != 1:
            raise DegreeMismatchError("fields take a degree-1 tensor")
        return cls(z.grid, [z])

    @classmethod
    def field(cls, grid: TimeGrid, slot: int) -> "CliffordElement":
        """``Psi(e_k)``."""
        return cls.psi(AntiTensor.basis(grid, slot))

    # -- views --------------------------------------------------------------

    def level(self, n: int) -> AntiTensor:
        t = self.levels.get(n)
        return t if t is not None else AntiTensor.zero(self.grid, n)

    @property
    def degrees(self) -> list[int]:
        return list(self.levels)

    def max_degree(self, tol: float = 0.0) -> int:
        live = [n for n, t in self.levels.items() if not t.is_zero(tol)]
        return max(live, default=0)

    def norm(self) -> float:
        """``||F||_{L^2(C)}``, by Parseval across chaos levels."""
        return math.sqrt(sum(t.norm_sq() for t in self.levels.values()))

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(t.is_zero(tol) for t in self.levels.values())

    # -- arithmetic ---------------------------------------------------------

    def _combine(self, other: "CliffordElement", sign: float) -> "CliffordElement":
        grid = check_same_grid(self.grid, other.grid)
        out = dict(self.levels)
        for n, t in other.levels.items():
            out[n] = out[n] + sign * t if n in out else sign * t
        return CliffordElement(grid, out)

    def __add__(self, other):
        if isinstance(other, CliffordElement):
            return self._combine(other, 1.0)
        if np.isscalar(other):
            return self._combine(CliffordElement.constant(self.grid, other), 1.0)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, CliffordElement):
            return self._combine(other, -1.0)
        if np.isscalar(other):
            return self._combine(CliffordElement.constant(self.grid, other), -1.0)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return self.scale(-1.0)

    def scale(self, c: complex) -> "CliffordElement":
        return CliffordElement(self.grid, {n: t * c for n, t in self.levels.items()})

    def __mul__(self, other):
        if isinstance(other, CliffordElement):
            return multiply(self, other)
        if np.isscalar(other):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if np.isscalar(other):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, c):
        return self.scale(1.0 / complex(c))

    def __repr__(self):
        parts = [f"J_{n}{dict(t.entries(1e-15))}" for n, t in self.levels.items() if not t.is_zero()]
        return f"CliffordElement({' + '.join(parts) or '0'})"


def allclose(F: CliffordElement, G: CliffordElement, atol: float = 1e-12) -> bool:
    return (F - G).norm() <= atol


def product_weight(p: int, q: int, r: int) -> float:
    return math.factorial(r) * math.comb(p, r) * math.comb(q, r)


def multiply(F: CliffordElement, G: CliffordElement) -> CliffordElement:
    grid = check_same_grid(F.grid, G.grid)
    d = grid.slots
    acc: dict[int, np.ndarray] = {}
    for p, f in F.levels.items():
        for q, g in G.levels.items():
            for r in range(min(p, q) + 1):
                n = p + q - 2 * r
                if n > d:
                    continue
                h = contract(f, g, r)
                if n in acc:
                    acc[n] = acc[n] + product_weight(p, q, r) * h.coeffs
                else:
                    acc[n] = product_weight(p, q, r) * h.coeffs
    return CliffordElement(grid, {n: AntiTensor(grid, n, c) for n, c in acc.items()})


def power(F: CliffordElement, k: int) -> CliffordElement:
    out = CliffordElement.constant(F.grid, 1.0)
    for _ in range(k):
        out = multiply(out, F)
    return out


def adjoint(F: CliffordElement) -> CliffordElement:
    """``J_n(f)^* = J_n(conj(reverse(f)))`` level by level."""
    return CliffordElement(F.grid, {n: conj(reverse(t)) for n, t in F.levels.items()})


def is_self_adjoint(F: CliffordElement, tol: float = 1e-12) -> bool:
    return (adjoint(F) - F).norm() <= tol * (1 + F.norm())


def state_m(F: CliffordElement) -> complex:
    """Vacuum expectation ``m(F) = <Omega, F Omega>``."""
    return complex(F.level(0).coeffs[0])


def l2_inner(F: CliffordElement, G: CliffordElement) -> complex:
    """``m(F^* G) = sum_n <f_n, g_n>``."""
    check_same_grid(F.grid, G.grid)
    return complex(sum(np.vdot(t.coeffs, G.levels[n].coeffs) for n, t in F.levels.items() if n in G.levels))


def beta(F: CliffordElement) -> CliffordElement:
    """Grading automorphism: ``(-1)^n`` on chaos level ``n``."""
    return CliffordElement(F.grid, {n: t if n % 2 == 0 else -t for n, t in F.levels.items()})


def cond_expect(F: CliffordElement, slots: Iterable[int]) -> CliffordElement:
    """``m(F | C_A)``: keep the coefficients whose index set lies inside ``A``."""
    grid = F.grid
    mask = grid.mask(slots)
    out = {}
    for n, t in F.levels.items():
        keep = (comb.masks(grid.slots, n) & ~mask) == 0
        out[n] = AntiTensor(grid, n, np.where(keep, t.coeffs, 0))
    return CliffordElement(grid, out)


def support_mask(F: CliffordElement, tol: float = 0.0) -> int:
    """Union of the index sets carrying a coefficient above ``tol``."""
    m = 0
    for n, t in F.levels.items():
        live = comb.masks(F.grid.slots, n)[np.abs(t.coeffs) > tol]
        for x in live:
            m |= int(x)
    return m
