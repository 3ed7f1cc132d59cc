import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from clifford_malliavin import checks
from clifford_malliavin.antisym import AntiTensor
from clifford_malliavin.chaos import CliffordElement
from clifford_malliavin.errors import NotAdaptedError
from clifford_malliavin.grid import TimeGrid, indicator_vector
from clifford_malliavin.ito import (
    check_adapted,
    clark_ocone,
    ito_integral,
    martingale_projection,
    reconstruct,
)
from clifford_malliavin.malliavin import ProcessElement
from clifford_malliavin.sampling import random_element

seeds = st.integers(0, 2 ** 32 - 1)


def J(g, *slots):
    return CliffordElement.J(AntiTensor.basis(g, *slots))


def close(F, G, tol=1e-12):
    return (F - G).norm() <= tol


def test_check_adapted_examples(g4):
    consts = ProcessElement(g4, [CliffordElement.constant(g4, k) for k in range(1, 5)])
    assert check_adapted(consts)
    assert check_adapted(ProcessElement.from_slots(g4, {2: J(g4, 1)}))
    assert not check_adapted(ProcessElement.from_slots(g4, {1: J(g4, 2)}))
    # slot k may not depend on slot k itself
    assert not check_adapted(ProcessElement.from_slots(g4, {2: J(g4, 2)}))


@pytest.mark.parametrize("width", [1.0, 0.5])
def test_ito_integral_of_one(width):
    g = TimeGrid(4, width)
    u = ProcessElement(g, [CliffordElement.constant(g)] * 4)
    want = CliffordElement.psi(indicator_vector(g, g.all_slots))
    assert close(ito_integral(u), want)


def test_ito_integral_example(g4):
    u = ProcessElement.from_slots(g4, {2: -J(g4, 1)})
    assert close(ito_integral(u), J(g4, 1, 2))
    with pytest.raises(NotAdaptedError):
        ito_integral(ProcessElement.from_slots(g4, {1: J(g4, 2)}))


def test_martingale_projection_examples(g4, rng):
    assert martingale_projection(J(g4, 1, 2), 1).is_zero()
    F = random_element(g4, 4, rng)
    assert close(martingale_projection(F, 4), F)
    assert close(martingale_projection(martingale_projection(F, 3), 2), martingale_projection(F, 2))
    assert close(martingale_projection(F, 0), CliffordElement.constant(g4, F.level(0).coeffs[0]))


@pytest.mark.parametrize("width", [1.0, 0.5])
def test_clark_ocone_examples(width):
    g = TimeGrid(4, width)
    mean, u = clark_ocone(J(g, 2))
    assert mean == 0
    assert close(u[2], CliffordElement.constant(g, 1 / math.sqrt(width)))
    assert all(u[k].is_zero() for k in (1, 3, 4))
    F = J(g, 1, 2)
    mean, u = clark_ocone(F)
    if width == 1.0:
        assert close(u[2], -J(g, 1))
    assert close(reconstruct(mean, u), F)
    c = CliffordElement.constant(g, 2.5 - 1j)
    mean, u = clark_ocone(c)
    assert mean == 2.5 - 1j and u.is_zero()


@given(seeds)
def test_clark_ocone_reconstruction(seed):
    res, adapted = checks.clark_ocone_residual(np.random.default_rng(seed), cases=3, max_slots=6)
    assert res < 1e-10 and adapted


@given(seeds)
def test_divergence_is_ito_and_isometry(seed):
    res_d, res_i = checks.ito_vs_divergence(np.random.default_rng(seed), cases=3)
    assert res_d < 1e-12 and res_i < 1e-10


@given(seeds)
def test_increments_orthogonal(seed):
    assert checks.increments_orthogonal(np.random.default_rng(seed), cases=2) < 1e-12


@given(seeds)
def test_delta_of_indicator(seed):
    assert checks.delta_indicator(np.random.default_rng(seed), cases=3) < 1e-12
