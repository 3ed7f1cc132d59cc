"""Adapted processes, the left Ito-Clifford integral and the Clark-Ocone representation.

A process is adapted when ``u_k`` only involves slots strictly before ``k``; the
increment ``dPsi_k = sqrt(width) Psi(e_k)`` multiplies ``u_k`` from the left.
"""
from __future__ import annotations

import math

from .chaos import CliffordElement, cond_expect, multiply, state_m, support_mask
from .errors import NotAdaptedError
from .malliavin import ProcessElement, derivative


def check_adapted(u: ProcessElement, tol: float = 0.0) -> bool:
    for k, comp in enumerate(u.components, start=1):
        past = (1 << (k - 1)) - 1
        if support_mask(comp, tol) & ~past:
            return False
    return True


def increment(grid, slot: int) -> CliffordElement:
    """``Psi_{t_k} - Psi_{t_{k-1}} = sqrt(width) Psi(e_k)``."""
    return CliffordElement.field(grid, slot).scale(math.sqrt(grid.width))


def ito_integral(u: ProcessElement, tol: float = 1e-13) -> CliffordElement:
    """``sum_k dPsi_k u_k`` for an adapted ``u``."""
    if not check_adapted(u, tol):
        raise NotAdaptedError("integrand is not adapted (u_k must only involve slots < k)")
    grid = u.grid
    acc = CliffordElement.zero(grid)
    for k, comp in enumerate(u.components, start=1):
        if comp.levels:
            acc = acc + multiply(increment(grid, k), comp)
    return acc


def martingale_projection(F: CliffordElement, k: int) -> CliffordElement:
    """``m(F | C_{t_k})`` for ``0 <= k <= d``."""
    if not 0 <= k <= F.grid.slots:
        raise ValueError(f"time index {k} outside 0..{F.grid.slots}")
    return cond_expect(F, range(1, k + 1))


def clark_ocone(F: CliffordElement) -> tuple[complex, ProcessElement]:
    """Return ``(m(F), u)`` with ``u_k = m(D_k F | C_{t_{k-1}})`` so that ``F = m(F) + int dPsi u``."""
    DF = derivative(F)
    u = [cond_expect(c, range(1, k)) for k, c in enumerate(DF.components, start=1)]
    return state_m(F), ProcessElement(F.grid, u)


def reconstruct(mean: complex, u: ProcessElement) -> CliffordElement:
    return ito_integral(u) + CliffordElement.constant(u.grid, mean)
