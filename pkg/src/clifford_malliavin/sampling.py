"""Seeded random tensors and elements for property checks.

Coefficients are drawn i.i.d. uniform on ``[-1, 1]`` (real and imaginary parts).
"""
from __future__ import annotations

import numpy as np

from . import _combinatorics as comb
from .antisym import AntiTensor
from .chaos import CliffordElement, adjoint
from .grid import TimeGrid
from .malliavin import ProcessElement


def random_tensor(grid: TimeGrid, n: int, rng: np.random.Generator, complex_: bool = True, unit: bool = False) -> AntiTensor:
    size = comb.size(grid.slots, n)
    c = rng.uniform(-1, 1, size)
    if complex_:
        c = c + 1j * rng.uniform(-1, 1, size)
    f = AntiTensor(grid, n, c)
    if unit and size:
        f = f / np.sqrt(f.norm_sq())
    return f


def random_element(
    grid: TimeGrid,
    max_degree: int,
    rng: np.random.Generator,
    min_degree: int = 0,
    complex_: bool = True,
) -> CliffordElement:
    top = min(max_degree, grid.slots)
    return CliffordElement(grid, [random_tensor(grid, n, rng, complex_) for n in range(min_degree, top + 1)])


def random_self_adjoint(grid: TimeGrid, max_degree: int, rng: np.random.Generator, centred: bool = False) -> CliffordElement:
    G = random_element(grid, max_degree, rng, min_degree=1 if centred else 0)
    return (G + adjoint(G)).scale(0.5)


def self_adjoint_kernel(grid: TimeGrid, q: int, rng: np.random.Generator, unit: bool = False) -> AntiTensor:
    """Random ``f`` of degree ``q`` with ``J_q(f)`` self-adjoint.

    The kernel is real for ``q = 0, 1 mod 4`` and purely imaginary otherwise, since
    reversal acts by ``(-1)^{q(q-1)/2}``.
    """
    f = random_tensor(grid, q, rng, complex_=False, unit=unit)
    return f if (q * (q - 1) // 2) % 2 == 0 else f * 1j


def random_process(grid: TimeGrid, max_degree: int, rng: np.random.Generator) -> ProcessElement:
    return ProcessElement(grid, [random_element(grid, max_degree, rng) for _ in range(grid.slots)])


def random_adapted(grid: TimeGrid, max_degree: int, rng: np.random.Generator) -> ProcessElement:
    """Random process whose slot-``k`` component only involves slots ``< k``."""
    comps = []
    for k in range(1, grid.slots + 1):
        F = random_element(grid, max_degree, rng)
        past = (1 << (k - 1)) - 1
        levels = {}
        for n, t in F.levels.items():
            keep = (comb.masks(grid.slots, n) & ~past) == 0
            levels[n] = AntiTensor(grid, n, np.where(keep, t.coeffs, 0))
        comps.append(CliffordElement(grid, levels))
    return ProcessElement(grid, comps)
