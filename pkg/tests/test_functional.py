import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from clifford_malliavin import checks
from clifford_malliavin.antisym import AntiTensor
from clifford_malliavin.applications import (
    characteristic_distance,
    entropy_integral,
    log_sobolev_check,
    two_point,
    two_point_fn,
)
from clifford_malliavin.chaos import CliffordElement
from clifford_malliavin.errors import NotSelfAdjointError
from clifford_malliavin.grid import TimeGrid, indicator_vector
from clifford_malliavin.sampling import random_self_adjoint, random_tensor

seeds = st.integers(0, 2 ** 32 - 1)


def close(F, G, tol=1e-12):
    return (F - G).norm() <= tol


def test_two_point_examples():
    g = TimeGrid(4, 0.5)
    z = indicator_vector(g, {1, 2, 3})
    assert close(two_point_fn(lambda x: x * x, z), CliffordElement.constant(g, 1.5))
    assert close(two_point_fn(lambda x: x, z), CliffordElement.psi(z))
    u = AntiTensor.basis(g, 2)
    step = two_point_fn(lambda x: float(x >= 0), u)
    assert close(step, (CliffordElement.constant(g) + CliffordElement.psi(u)).scale(0.5))
    with pytest.raises(ValueError):
        two_point((1, 2), AntiTensor.zero(g, 1))


@given(seeds)
def test_two_point_matches_functional_calculus(seed):
    assert checks.two_point_calculus(np.random.default_rng(seed), cases=3) < 1e-12


def test_entropy_integral_closed_form():
    assert entropy_integral(0.5, 0.5) == pytest.approx(math.log(2) / 2, abs=1e-12)
    assert entropy_integral(0.0, 3.0) == 0


def test_log_sobolev_examples():
    rep = log_sobolev_check(1.0, 0.0)
    assert rep.entropy == pytest.approx(math.log(2) / 2, abs=1e-8)
    assert rep.energy == pytest.approx(0.25)
    assert rep.bound == pytest.approx(math.log(4) / 2)
    assert rep.sharp_bound == pytest.approx(0.5)
    assert rep.to_report().passed
    flat = log_sobolev_check(2.0, 2.0)
    assert flat.entropy == 0 and flat.bound == 0 and flat.to_report().passed
    zero = log_sobolev_check(0.0, 0.0)
    assert zero.entropy == 0 and zero.bound == 0


@pytest.mark.parametrize("slots", [1, 3, 8])
def test_log_sobolev_independent_of_slots(slots):
    assert log_sobolev_check(1.3, -0.4, slots).energy == pytest.approx(log_sobolev_check(1.3, -0.4).energy)


@given(st.floats(-5, 5), st.floats(-5, 5))
def test_log_sobolev_random(a, b):
    rep = log_sobolev_check(a, b)
    assert rep.entropy == pytest.approx(rep.entropy_spectral, abs=1e-9 * (1 + rep.entropy))
    assert rep.entropy <= rep.bound + 1e-12


def test_characteristic_examples():
    g = TimeGrid(4)
    z = AntiTensor.basis(g, 3)
    F = CliffordElement.J(AntiTensor.basis(g, 1, 2) * 1j)
    rep = characteristic_distance(F, z, 1.0)
    assert rep.lhs <= rep.middle and rep.middle == pytest.approx(math.sqrt(2))
    zero = characteristic_distance(F, z, 0.0)
    assert zero.lhs < 1e-15 and zero.middle == 0 and zero.right == 0
    same = characteristic_distance(CliffordElement.psi(z), z, 2.0)
    assert same.lhs < 1e-12 and same.middle < 1e-12


def test_characteristic_errors():
    g = TimeGrid(3)
    z = AntiTensor.basis(g, 1)
    with pytest.raises(NotSelfAdjointError):
        characteristic_distance(CliffordElement.J(AntiTensor.basis(g, 1, 2)), z, 1)
    with pytest.raises(ValueError):
        characteristic_distance(CliffordElement.constant(g), z, 1)
    with pytest.raises(ValueError):
        characteristic_distance(CliffordElement.psi(z), z * 2, 1)


def test_characteristic_random(rng):
    g = TimeGrid(4, 0.5)
    for _ in range(5):
        F = random_self_adjoint(g, 3, rng, centred=True)
        z = random_tensor(g, 1, rng, complex_=False, unit=True)
        for t in (0.5, 1.0, 2.0):
            assert characteristic_distance(F, z, t).to_report().passed
