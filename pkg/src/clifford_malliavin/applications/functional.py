"""Functions of a single field, the two-point log-Sobolev check and characteristic functions.

A field ``Psi(z)`` has spectrum ``{-||z||, +||z||}`` with equal vacuum weights, so any
function of it is affine:

    phi(Psi(z)) = (phi(+||z||) + phi(-||z||)) / 2 + Psi(z) (phi(+||z||) - phi(-||z||)) / (2 ||z||).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad

from ..antisym import AntiTensor, plain_l2_norm
from ..chaos import CliffordElement, adjoint, state_m
from ..errors import DegreeMismatchError, NotSelfAdjointError
from ..grid import TimeGrid, indicator_vector
from ..malliavin import carre_norm, derivative, inv_number, process_square
from ..oracle import functional_calculus, spectral, to_matrix, vacuum
from ..report import Report


def two_point(values: tuple[complex, complex], z: AntiTensor) -> CliffordElement:
    """``phi(Psi(z))`` from ``values = (phi(+||z||), phi(-||z||))``."""
    if z.degree != 1:
        raise DegreeMismatchError("two_point takes a degree-1 tensor")
    nz = plain_l2_norm(z)
    if nz == 0:
        raise ValueError("z must be nonzero")
    plus, minus = complex(values[0]), complex(values[1])
    a = (plus + minus) / 2
    b = (plus - minus) / (2 * nz)
    return CliffordElement.constant(z.grid, a) + CliffordElement.psi(z).scale(b)


def two_point_fn(phi: Callable[[float], complex], z: AntiTensor) -> CliffordElement:
    nz = plain_l2_norm(z)
    return two_point((phi(nz), phi(-nz)), z)


def unit_grid(slots: int = 4) -> TimeGrid:
    """Grid of ``slots`` equal slots covering ``[0, 1]``."""
    return TimeGrid(slots, 1.0 / slots)


def entropy_integral(a: float, b: float) -> float:
    """``int_0^1 a/(4 sqrt t) log((b + a sqrt t)/(b - a sqrt t)) dt``, after ``u = sqrt t``."""
    if a == 0:
        return 0.0
    if b <= 0:
        raise ValueError("b must be positive when a != 0")

    def integrand(u: float) -> float:
        num = b + a * u
        den = b - a * u
        if num <= 0 or den <= 0:
            # endpoint where one branch of |phi|^2 vanishes; x log x -> 0 keeps it integrable
            num, den = max(num, 1e-300), max(den, 1e-300)
        return a / 2 * math.log(num / den)

    val, _ = quad(integrand, 0.0, 1.0, limit=200, epsabs=1e-14, epsrel=1e-13)
    return val


def _xlogx(x: float) -> float:
    return x * math.log(x) if x > 0 else 0.0


@dataclass
class LogSobolevReport:
    phi_plus: complex
    phi_minus: complex
    a: float
    b: float
    entropy: float
    entropy_spectral: float
    energy: float

    @property
    def bound(self) -> float:
        return 2 * math.log(4) * self.energy

    @property
    def sharp_bound(self) -> float:
        return 2 * self.energy

    def to_report(self, tol: float = 1e-12) -> Report:
        rep = Report(inputs={"phi1": self.phi_plus, "phim1": self.phi_minus})
        rep.quantities.update(
            a=self.a, b=self.b, entropy=self.entropy, entropy_spectral=self.entropy_spectral,
            energy=self.energy, bound_2log4=self.bound, bound_2=self.sharp_bound,
        )
        rep.check_close("entropy: quadrature vs spectral", self.entropy, self.entropy_spectral, 1e-9 * (1 + abs(self.entropy)))
        rep.check_le("entropy <= 2 log 4 ||D phi(Psi_1)||^2", self.entropy, self.bound, tol)
        rep.check_le("entropy <= 2 ||D phi(Psi_1)||^2", self.entropy, self.sharp_bound, tol)
        return rep


def log_sobolev_check(phi_plus: complex, phi_minus: complex, slots: int = 4) -> LogSobolevReport:
    """Entropy of ``|phi(Psi_1)|^2`` against the Malliavin energy, ``Psi_1 = Psi(1_[0,1])``."""
    grid = unit_grid(slots)
    z = indicator_vector(grid, grid.all_slots)
    p, m = abs(phi_plus) ** 2, abs(phi_minus) ** 2
    a, b = (p - m) / 2, (p + m) / 2
    entropy = entropy_integral(a, b)
    # same entropy read off the spectral measure of Psi_1 (weights 1/2 at +-1)
    spec = spectral(to_matrix(CliffordElement.psi(z)))
    vals = {round(v): w for v, w in spec.pairs()}
    mean = vals[1] * p + vals[-1] * m
    entropy_spec = vals[1] * _xlogx(p) + vals[-1] * _xlogx(m) - _xlogx(mean)
    G = two_point((phi_plus, phi_minus), z)
    energy = state_m(carre_norm(G)).real
    return LogSobolevReport(complex(phi_plus), complex(phi_minus), a, b, entropy, entropy_spec, energy)


@dataclass
class CharacteristicReport:
    t: float
    lhs: float
    middle: float
    right: float

    def to_report(self, tol: float = 1e-12) -> Report:
        rep = Report(inputs={"t": self.t})
        rep.quantities.update(lhs=self.lhs, middle=self.middle, right=self.right)
        rep.check_le("||e^{itF} - e^{itPsi(z)}|| <= |t| ||F - Psi(z)||", self.lhs, self.middle, tol * (1 + self.middle))
        return rep


def characteristic_distance(F: CliffordElement, z: AntiTensor, t: float, tol: float = 1e-10) -> CharacteristicReport:
    if (adjoint(F) - F).norm() > tol * (1 + F.norm()):
        raise NotSelfAdjointError("F must be self-adjoint")
    if abs(state_m(F)) > tol * (1 + F.norm()):
        raise ValueError("F must be centred (m(F) = 0)")
    if z.degree != 1 or abs(plain_l2_norm(z) - 1) > tol:
        raise ValueError("z must be a unit degree-1 tensor")
    Pz = CliffordElement.psi(z)
    omega = vacuum(F.grid)
    EF = functional_calculus(to_matrix(F).matrix, lambda x: np.exp(1j * t * x))
    EP = functional_calculus(to_matrix(Pz).matrix, lambda x: np.exp(1j * t * x))
    lhs = float(np.linalg.norm((EF - EP) @ omega))
    middle = abs(t) * (F - Pz).norm()
    pairing = process_square(derivative(F), derivative(inv_number(F, tol)))
    right = abs(t) * abs(1 - state_m(pairing))
    return CharacteristicReport(float(t), lhs, float(middle), float(right))
