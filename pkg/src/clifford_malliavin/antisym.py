"""Antisymmetric functions of n time variables on a :class:`TimeGrid`.

An :class:`AntiTensor` of degree ``n`` stores wedge-basis coefficients ``c_S`` for
strictly increasing slot tuples ``S``, w.r.t. ``e_{S_1} ^ ... ^ e_{S_n}`` where the wedge
carries the ``1/n!`` normalisation. The pointwise dictionary is::

    f(t_1, ..., t_n) = sgn(sigma) * c_S / (n! * width**(n/2))

when the slots of ``(t_1, ..., t_n)`` are a permutation ``sigma`` of ``S``, and zero on
repeated slots. With this dictionary ``<f, f>_{Lambda_n} = n! int |f|^2 = sum_S |c_S|^2``.

:class:`DenseAntiFn` holds the full ``d**n`` array of pointwise values; it is the
reference semantics for :func:`contract` and is only practical for small ``d`` and ``n``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from . import _combinatorics as comb
from .errors import DegreeMismatchError
from .grid import TimeGrid, check_same_grid


def _scatter(index: np.ndarray, values: np.ndarray, size: int) -> np.ndarray:
    values = np.asarray(values, dtype=complex)
    out = np.bincount(index, weights=values.real, minlength=size).astype(complex)
    out += 1j * np.bincount(index, weights=values.imag, minlength=size)
    return out


class AntiTensor:
    """Degree-n antisymmetric coefficient tensor (immutable)."""

    __slots__ = ("grid", "degree", "coeffs")

    def __init__(self, grid: TimeGrid, degree: int, coeffs=None):
        if degree < 0:
            raise ValueError("degree must be non-negative")
        n = comb.size(grid.slots, degree)
        if coeffs is None:
            arr = np.zeros(n, dtype=complex)
        else:
            arr = np.array(coeffs, dtype=complex).reshape(-1)
            if arr.shape != (n,):
                raise ValueError(f"expected {n} coefficients for degree {degree} on {grid.slots} slots, got {arr.size}")
        arr.flags.writeable = False
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "degree", int(degree))
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, name, value):
        raise AttributeError("AntiTensor is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, grid: TimeGrid, degree: int) -> "AntiTensor":
        return cls(grid, degree)

    @classmethod
    def scalar(cls, grid: TimeGrid, value: complex) -> "AntiTensor":
        return cls(grid, 0, [value])

    @classmethod
    def from_entries(cls, grid: TimeGrid, degree: int, entries: Mapping[tuple, complex]) -> "AntiTensor":
        """Build from ``{(i_1 < ... < i_n): c}`` with 1-based slots."""
        coeffs = np.zeros(comb.size(grid.slots, degree), dtype=complex)
        for idx, value in entries.items():
            idx = tuple(int(i) for i in idx)
            if len(idx) != degree:
                raise DegreeMismatchError(f"index {idx} does not have length {degree}")
            if any(b <= a for a, b in zip(idx, idx[1:])):
                raise ValueError(f"index {idx} is not strictly increasing")
            if idx and not (1 <= idx[0] and idx[-1] <= grid.slots):
                raise ValueError(f"index {idx} outside 1..{grid.slots}")
            pos = comb.index_of(grid.slots, degree, comb.mask_of(i - 1 for i in idx))
            coeffs[pos] += value
        return cls(grid, degree, coeffs)

    @classmethod
    def basis(cls, grid: TimeGrid, *slots: int) -> "AntiTensor":
        """``e_{k_1} ^ ... ^ e_{k_n}`` for 1-based slots in any order; repeats give zero."""
        n = len(slots)
        if len(set(slots)) < n or n > grid.slots:
            return cls.zero(grid, n)
        order = sorted(range(n), key=lambda i: slots[i])
        sign = comb._perm_sign(order)
        return cls.from_entries(grid, n, {tuple(sorted(slots)): float(sign)})

    # -- views --------------------------------------------------------------

    def entries(self, tol: float = 0.0) -> dict[tuple[int, ...], complex]:
        """Nonzero coefficients keyed by 1-based increasing tuples."""
        rows = comb.combo_array(self.grid.slots, self.degree)
        return {
            tuple(int(i) + 1 for i in row): complex(c)
            for row, c in zip(rows, self.coeffs)
            if abs(c) > tol
        }

    def coefficient(self, *slots: int) -> complex:
        return AntiTensor.basis(self.grid, *slots).coeffs.conj() @ self.coeffs if len(slots) == self.degree else 0j

    def norm_sq(self) -> float:
        """``<f, f>_{Lambda_n}``."""
        return float(np.sum(np.abs(self.coeffs) ** 2))

    def is_zero(self, tol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self.coeffs) <= tol))

    def is_real(self, tol: float = 1e-12) -> bool:
        return bool(np.all(np.abs(self.coeffs.imag) <= tol))

    def to_dense(self) -> "DenseAntiFn":
        return to_dense(self)

    # -- arithmetic ---------------------------------------------------------

    def _same(self, other: "AntiTensor"):
        check_same_grid(self.grid, other.grid)
        if self.degree != other.degree:
            raise DegreeMismatchError(f"degree {self.degree} vs {other.degree}")

    def __add__(self, other):
        if not isinstance(other, AntiTensor):
            return NotImplemented
        self._same(other)
        return AntiTensor(self.grid, self.degree, self.coeffs + other.coeffs)

    def __sub__(self, other):
        if not isinstance(other, AntiTensor):
            return NotImplemented
        self._same(other)
        return AntiTensor(self.grid, self.degree, self.coeffs - other.coeffs)

    def __neg__(self):
        return AntiTensor(self.grid, self.degree, -self.coeffs)

    def __mul__(self, scalar):
        if isinstance(scalar, AntiTensor):
            return NotImplemented
        return AntiTensor(self.grid, self.degree, self.coeffs * complex(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return AntiTensor(self.grid, self.degree, self.coeffs / complex(scalar))

    def __repr__(self):
        body = ", ".join(f"{k}: {v:.6g}" for k, v in self.entries(1e-15).items())
        return f"AntiTensor(degree={self.degree}, slots={self.grid.slots}, {{{body}}})"


def allclose(a: AntiTensor, b: AntiTensor, atol: float = 1e-12) -> bool:
    a._same(b)
    return bool(np.max(np.abs(a.coeffs - b.coeffs), initial=0.0) <= atol)


@dataclass(frozen=True)
class DenseAntiFn:
    """Pointwise values on the full ``d**n`` grid of slot tuples.

    Built from an :class:`AntiTensor` it is antisymmetric and vanishes on repeated
    slots; the raw output of ``contract(..., hat=False)`` need not be.
    """

    grid: TimeGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if any(s != self.grid.slots for s in v.shape):
            raise ValueError(f"dense array shape {v.shape} does not match {self.grid.slots} slots")
        object.__setattr__(self, "values", v)

    @property
    def degree(self) -> int:
        return self.values.ndim

    def is_antisymmetric(self, tol: float = 1e-12) -> bool:
        v = self.values
        for i in range(v.ndim - 1):
            if np.max(np.abs(v + np.swapaxes(v, i, i + 1)), initial=0.0) > tol:
                return False
        return True


def to_dense(f: AntiTensor) -> DenseAntiFn:
    d, n = f.grid.slots, f.degree
    values = np.zeros((d,) * n, dtype=complex)
    if n > d or n == 0:
        if n == 0:
            values = np.asarray(f.coeffs[0], dtype=complex)
        return DenseAntiFn(f.grid, values)
    combos = comb.combo_array(d, n)
    perms, signs = comb.permutations(n)
    idx = combos[:, perms]  # (C, n!, n)
    scale = 1.0 / (math.factorial(n) * f.grid.width ** (n / 2))
    values[tuple(idx[..., j] for j in range(n))] = (f.coeffs[:, None] * signs[None, :]) * scale
    return DenseAntiFn(f.grid, values)


def antisymmetrize(g: DenseAntiFn) -> AntiTensor:
    """Antisymmetric part ``1/n! sum_sigma sgn(sigma) g o sigma`` as wedge coefficients."""
    grid = g.grid
    d, n = grid.slots, g.degree
    if n > d:
        return AntiTensor.zero(grid, n)
    if n == 0:
        return AntiTensor.scalar(grid, complex(g.values))
    combos = comb.combo_array(d, n)
    perms, signs = comb.permutations(n)
    idx = combos[:, perms]
    gathered = g.values[tuple(idx[..., j] for j in range(n))]  # (C, n!)
    coeffs = (gathered @ signs) * grid.width ** (n / 2)
    return AntiTensor(grid, n, coeffs)


def reverse(f: AntiTensor) -> AntiTensor:
    """``f(x_n, ..., x_1)``: a sign ``(-1)^{n(n-1)/2}`` for antisymmetric ``f``."""
    n = f.degree
    return f if (n * (n - 1) // 2) % 2 == 0 else -f


def conj(f: AntiTensor) -> AntiTensor:
    return AntiTensor(f.grid, f.degree, f.coeffs.conj())


def inner(f: AntiTensor, g: AntiTensor) -> complex:
    """``<f, g>_{Lambda_n}``, conjugate-linear in ``f``."""
    f._same(g)
    return complex(np.vdot(f.coeffs, g.coeffs))


def plain_l2_norm(f: AntiTensor) -> float:
    """Norm in ``L^2(R_+^n)`` without the ``n!`` of the Fock inner product."""
    return math.sqrt(f.norm_sq() / math.factorial(f.degree))


def slice_first(f: AntiTensor, slot: int) -> AntiTensor:
    """``f(t, .)`` for ``t`` in the given 1-based slot, as a degree ``n-1`` tensor."""
    if f.degree == 0:
        raise DegreeMismatchError("cannot slice a degree-0 tensor")
    return AntiTensor(f.grid, f.degree - 1, all_slices(f)[slot - 1])


def all_slices(f: AntiTensor) -> np.ndarray:
    """Coefficients of ``f(k, .)`` for every slot, shape ``(d, C(d, n-1))``."""
    d, n = f.grid.slots, f.degree
    out = np.zeros((d, comb.size(d, n - 1)), dtype=complex)
    if n == 0 or n > d:
        return out
    src, ks, dst, sign = comb.slice_table(d, n)
    np.add.at(out, (ks, dst), sign * f.coeffs[src])
    return out / (n * math.sqrt(f.grid.width))


def wedge(f: AntiTensor, g: AntiTensor) -> AntiTensor:
    """Antisymmetrization of ``f (x) g``."""
    return contract(f, g, 0)


def contract(f: AntiTensor, g: AntiTensor, r: int, hat: bool = True, method: str = "coeff"):
    """Contraction of the last ``r`` arguments of ``f`` (reversed) with the first ``r`` of ``g``.

    With ``hat=False`` the raw pointwise function of ``p + q - 2r`` variables is returned
    as a :class:`DenseAntiFn`. With ``hat=True`` its antisymmetrization is returned as an
    :class:`AntiTensor`, computed either from a combinatorial coefficient table
    (``method="coeff"``) or by antisymmetrizing the dense contraction (``method="dense"``).
    """
    grid = check_same_grid(f.grid, g.grid)
    p, q = f.degree, g.degree
    if not 0 <= r <= min(p, q):
        raise ValueError(f"contraction order r={r} outside 0..{min(p, q)}")
    if not hat:
        return _contract_pointwise(f, g, r)
    n = p + q - 2 * r
    d = grid.slots
    if n > d:
        return AntiTensor.zero(grid, n)
    if method == "dense":
        return antisymmetrize(_contract_pointwise(f, g, r))
    if method != "coeff":
        raise ValueError(f"unknown contraction method {method!r}")
    table = comb.contraction_table(d, p, q).get(r)
    if table is None:
        return AntiTensor.zero(grid, n)
    ii, jj, out, sign = table
    weight = math.factorial(r) * math.factorial(p - r) * math.factorial(q - r) / (math.factorial(p) * math.factorial(q))
    coeffs = _scatter(out, sign * f.coeffs[ii] * g.coeffs[jj], comb.size(d, n))
    return AntiTensor(grid, n, coeffs * weight)


def _contract_pointwise(f: AntiTensor, g: AntiTensor, r: int) -> DenseAntiFn:
    F = to_dense(f).values
    G = to_dense(g).values
    p = f.degree
    axes_f = [p - 1 - j for j in range(r)]  # s_1 is the last argument of f
    axes_g = list(range(r))
    H = np.tensordot(F, G, axes=(axes_f, axes_g)) * f.grid.width ** r
    return DenseAntiFn(f.grid, H)
