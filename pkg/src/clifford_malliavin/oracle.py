"""Jordan-Wigner matrix representation used as an independent check of the chaos side.

``Psi_k = Z x ... x Z x X x I x ... x I`` (``k-1`` factors of ``Z``) acting on
``(C^2)^{x d}``; site 1 is the most significant qubit and the vacuum is basis vector 0.
Products ``Psi_{S_1} ... Psi_{S_n}`` of distinct fields are signed permutation matrices;
they are read off the dense field matrices once per dimension and cached.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from . import _combinatorics as comb
from .antisym import AntiTensor
from .chaos import CliffordElement
from .errors import DimensionCapError, NotSelfAdjointError
from .grid import TimeGrid

DEFAULT_MAX_DIM = 10

_X = np.array([[0.0, 1.0], [1.0, 0.0]])
_Z = np.array([[1.0, 0.0], [0.0, -1.0]])
_I = np.eye(2)


def max_dim() -> int:
    raw = os.environ.get("CLIFFORD_MAX_DIM")
    return int(raw) if raw else DEFAULT_MAX_DIM


def check_dim(d: int) -> None:
    cap = max_dim()
    if d > cap:
        mib = (2 ** d) ** 2 * 16 / 2 ** 20
        raise DimensionCapError(
            f"matrix representation with d={d} needs 2^{d} x 2^{d} complex matrices "
            f"(~{mib:.0f} MiB each), above the cap d <= {cap}; set CLIFFORD_MAX_DIM to raise it"
        )


@dataclass(frozen=True)
class MatrixRep:
    grid: TimeGrid
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def vacuum(self) -> np.ndarray:
        return vacuum(self.grid)

    def __matmul__(self, other: "MatrixRep") -> "MatrixRep":
        return MatrixRep(self.grid, self.matrix @ other.matrix)

    def __add__(self, other: "MatrixRep") -> "MatrixRep":
        return MatrixRep(self.grid, self.matrix + other.matrix)

    def __sub__(self, other: "MatrixRep") -> "MatrixRep":
        return MatrixRep(self.grid, self.matrix - other.matrix)

    def dagger(self) -> "MatrixRep":
        return MatrixRep(self.grid, self.matrix.conj().T)


def _mat(M) -> np.ndarray:
    return M.matrix if isinstance(M, MatrixRep) else np.asarray(M)


def vacuum(grid: TimeGrid) -> np.ndarray:
    v = np.zeros(2 ** grid.slots, dtype=complex)
    v[0] = 1.0
    return v


@lru_cache(maxsize=None)
def _field_dense(d: int, k: int) -> np.ndarray:
    factors = [_Z] * (k - 1) + [_X] + [_I] * (d - k)
    out = np.array([[1.0]])
    for f in factors:
        out = np.kron(out, f)
    out.flags.writeable = False
    return out


def field_matrix(grid: TimeGrid, slot: int) -> MatrixRep:
    check_dim(grid.slots)
    if not 1 <= slot <= grid.slots:
        raise ValueError(f"slot {slot} outside 1..{grid.slots}")
    return MatrixRep(grid, _field_dense(grid.slots, slot).astype(complex))


@lru_cache(maxsize=4)
def _word_tables(d: int) -> tuple[np.ndarray, np.ndarray]:
    """Signed permutations of all ordered words ``Psi_{S_1} ... Psi_{S_n}``.

    Row ``s`` (a subset bitmask, slot k -> bit k-1) gives ``Psi_S e_x = sign[s, x] e_{perm[s, x]}``.
    """
    N = 2 ** d
    cols = np.arange(N)
    field_perm = []
    field_sign = []
    for k in range(1, d + 1):
        M = _field_dense(d, k)
        rows = np.argmax(np.abs(M), axis=0)
        field_perm.append(rows)
        field_sign.append(M[rows, cols])
    perm = np.empty((N, N), dtype=np.int64)
    sign = np.empty((N, N), dtype=np.float64)
    perm[0] = cols
    sign[0] = 1.0
    # S = {top} u rest with top the largest slot: Psi_S = Psi_rest Psi_top
    for s in range(1, N):
        top = s.bit_length() - 1
        rest = s & ~(1 << top)
        p_top, s_top = field_perm[top], field_sign[top]
        perm[s] = perm[rest][p_top]
        sign[s] = sign[rest][p_top] * s_top
    perm.flags.writeable = False
    sign.flags.writeable = False
    return perm, sign


def to_matrix(F: CliffordElement) -> MatrixRep:
    d = F.grid.slots
    check_dim(d)
    N = 2 ** d
    perm, sign = _word_tables(d)
    flat_idx = []
    weights = []
    for n, t in F.levels.items():
        ms = comb.masks(d, n)
        live = np.nonzero(t.coeffs)[0]
        if live.size == 0:
            continue
        rows = ms[live]
        flat_idx.append((perm[rows] * N + np.arange(N)).ravel())
        weights.append((t.coeffs[live, None] * sign[rows]).ravel())
    if not flat_idx:
        return MatrixRep(F.grid, np.zeros((N, N), dtype=complex))
    idx = np.concatenate(flat_idx)
    w = np.concatenate(weights)
    M = np.bincount(idx, weights=w.real, minlength=N * N) + 1j * np.bincount(idx, weights=w.imag, minlength=N * N)
    return MatrixRep(F.grid, M.reshape(N, N))


def from_matrix(M: MatrixRep | np.ndarray, grid: TimeGrid | None = None) -> CliffordElement:
    """Chaos coefficients ``c_S = <Psi_S Omega, M Omega>``."""
    grid = M.grid if isinstance(M, MatrixRep) else grid
    if grid is None:
        raise ValueError("a grid is required for a bare matrix")
    d = grid.slots
    check_dim(d)
    perm, sign = _word_tables(d)
    col = _mat(M)[:, 0]
    levels = {}
    for n in range(d + 1):
        ms = comb.masks(d, n)
        levels[n] = AntiTensor(grid, n, sign[ms, 0] * col[perm[ms, 0]])
    return CliffordElement(grid, levels)


def state(M) -> complex:
    return complex(_mat(M)[0, 0])


def operator_norm(M) -> float:
    return float(np.linalg.norm(_mat(M), 2))


def _check_hermitian(A: np.ndarray, tol: float) -> None:
    err = np.max(np.abs(A - A.conj().T), initial=0.0)
    if err > tol * (1 + np.max(np.abs(A), initial=0.0)):
        raise NotSelfAdjointError(f"matrix is not self-adjoint (max deviation {err:.3g})")


@dataclass(frozen=True)
class Spectrum:
    """Distinct eigenvalues with spectral weights ``<Omega, P_i Omega>``."""

    values: np.ndarray
    weights: np.ndarray

    def tail(self, a: float, tol: float = 1e-10) -> float:
        """``m(E([a, inf)))``."""
        return float(np.sum(self.weights[self.values >= a - tol]))

    def pairs(self) -> list[tuple[float, float]]:
        return [(float(v), float(w)) for v, w in zip(self.values, self.weights)]


def _eigh(M, tol: float):
    A = _mat(M)
    _check_hermitian(A, tol)
    return np.linalg.eigh((A + A.conj().T) / 2)


def spectral(M, tol: float = 1e-10, group_tol: float = 1e-9) -> Spectrum:
    lam, V = _eigh(M, tol)
    w = np.abs(V[0, :]) ** 2
    vals, wts = [], []
    for x, y in zip(lam, w):
        if vals and abs(x - vals[-1]) <= group_tol * (1 + abs(x)):
            wts[-1] += y
        else:
            vals.append(x)
            wts.append(y)
    return Spectrum(np.array(vals), np.array(wts))


def functional_calculus(M, phi: Callable[[np.ndarray], np.ndarray], tol: float = 1e-10):
    lam, V = _eigh(M, tol)
    out = (V * np.asarray(phi(lam), dtype=complex)) @ V.conj().T
    return MatrixRep(M.grid, out) if isinstance(M, MatrixRep) else out


def expm_hermitian(M, s: complex) -> MatrixRep | np.ndarray:
    """``exp(s M)`` for self-adjoint ``M``."""
    return functional_calculus(M, lambda x: np.exp(s * x))

