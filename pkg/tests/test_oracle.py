import numpy as np
import pytest
from hypothesis import given, strategies as st

from clifford_malliavin import checks
from clifford_malliavin.antisym import AntiTensor
from clifford_malliavin.chaos import CliffordElement, l2_inner, multiply
from clifford_malliavin.errors import DimensionCapError, NotSelfAdjointError
from clifford_malliavin.grid import TimeGrid, indicator_vector
from clifford_malliavin.malliavin import derivative, divergence
from clifford_malliavin.oracle import (
    field_matrix,
    from_matrix,
    functional_calculus,
    operator_norm,
    spectral,
    to_matrix,
    vacuum,
)
from clifford_malliavin.sampling import random_element, random_process, random_self_adjoint

seeds = st.integers(0, 2 ** 32 - 1)


def J(g, *slots):
    return CliffordElement.J(AntiTensor.basis(g, *slots))


def test_field_matrix_examples(g4):
    P1, P2 = field_matrix(g4, 1).matrix, field_matrix(g4, 2).matrix
    np.testing.assert_array_equal(P1 @ P2 + P2 @ P1, 0)
    np.testing.assert_array_equal(P1 @ P1, np.eye(16))
    om = vacuum(g4)
    assert om @ P1 @ om == 0
    np.testing.assert_array_equal(P1, P1.conj().T)


def test_to_matrix_examples(g4):
    np.testing.assert_array_equal(to_matrix(CliffordElement.constant(g4)).matrix, np.eye(16))
    M = to_matrix(J(g4, 1, 2)).matrix
    np.testing.assert_allclose(M @ M, -np.eye(16))


def test_from_matrix_examples(g4):
    assert (from_matrix(np.eye(16), g4) - CliffordElement.constant(g4)).norm() == 0
    P = field_matrix(g4, 1).matrix @ field_matrix(g4, 2).matrix
    assert (from_matrix(P, g4) - J(g4, 1, 2)).norm() < 1e-15


def test_vacuum_moments_vanish(g4):
    om = vacuum(g4)
    for S in [(1,), (1, 2), (2, 3, 4), (1, 2, 3, 4)]:
        M = np.eye(16)
        for k in S:
            M = M @ field_matrix(g4, k).matrix
        assert om @ M @ om == 0


def test_spectral_examples(g4):
    P1 = to_matrix(J(g4, 1))
    spec = spectral(P1)
    pairs = spec.pairs()
    assert [v for v, _ in pairs] == pytest.approx([-1, 1])
    assert [w for _, w in pairs] == pytest.approx([0.5, 0.5])
    assert operator_norm(P1) == pytest.approx(1)
    neg = spectral(to_matrix(-J(g4, 1)))
    assert spec.tail(1e-12) + neg.tail(1e-12) == pytest.approx(1)
    with pytest.raises(NotSelfAdjointError):
        spectral(to_matrix(J(g4, 1, 2)))


@pytest.mark.parametrize("width", [1.0, 0.5])
def test_functional_calculus_examples(width):
    g = TimeGrid(3, width)
    Pt = to_matrix(CliffordElement.psi(indicator_vector(g, {1, 2}))).matrix
    np.testing.assert_allclose(functional_calculus(Pt, lambda x: x ** 2), 2 * width * np.eye(8), atol=1e-12)
    np.testing.assert_allclose(functional_calculus(Pt, lambda x: x), Pt, atol=1e-12)
    P1 = to_matrix(J(g, 1)).matrix
    s = 0.7
    want = np.cos(s) * np.eye(8) + 1j * np.sin(s) * P1
    np.testing.assert_allclose(functional_calculus(P1, lambda x: np.exp(1j * s * x)), want, atol=1e-12)


def test_spectral_weights_sum_to_one(rng):
    g = TimeGrid(5, 0.5)
    for _ in range(5):
        spec = spectral(to_matrix(random_self_adjoint(g, 3, rng)))
        assert sum(spec.weights) == pytest.approx(1)


def test_dimension_cap(monkeypatch):
    monkeypatch.setenv("CLIFFORD_MAX_DIM", "3")
    with pytest.raises(DimensionCapError, match="MiB"):
        to_matrix(CliffordElement.constant(TimeGrid(4)))


def test_tracial_on_matrices(rng):
    g = TimeGrid(5)
    om = vacuum(g)
    for _ in range(10):
        M = to_matrix(random_element(g, 5, rng)).matrix
        N = to_matrix(random_element(g, 5, rng)).matrix
        assert om @ M @ N @ om == pytest.approx(om @ N @ M @ om, abs=1e-12)


def test_adjointness_through_matrices(rng):
    # <DF, u> and <F, delta u> as Fock-space inner products of the vectors M Omega
    g = TimeGrid(5, 0.5)
    om = vacuum(g)
    for _ in range(10):
        F = random_element(g, 4, rng)
        u = random_process(g, 3, rng)
        DF = derivative(F)
        lhs = g.width * sum(np.vdot(to_matrix(DF[k]).matrix @ om, to_matrix(u[k]).matrix @ om) for k in range(1, 6))
        rhs = np.vdot(to_matrix(F).matrix @ om, to_matrix(divergence(u)).matrix @ om)
        assert lhs == pytest.approx(rhs, abs=1e-12)
        assert rhs == pytest.approx(l2_inner(F, divergence(u)), abs=1e-12)


def test_matrix_car_all_dims():
    for d in range(1, 9):
        assert checks.matrix_car(TimeGrid(d)) < 1e-12


@given(seeds, st.sampled_from([1.0, 0.5]))
def test_homomorphism(seed, width):
    assert checks.homomorphism(np.random.default_rng(seed), cases=5, slots=5, width=width) < 1e-12


@given(seeds)
def test_roundtrip(seed):
    assert checks.oracle_roundtrip(np.random.default_rng(seed), cases=5) < 1e-12


def test_product_then_roundtrip(rng):
    g = TimeGrid(6)
    F, G = random_element(g, 3, rng), random_element(g, 3, rng)
    back = from_matrix(to_matrix(F).matrix @ to_matrix(G).matrix, g)
    assert (back - multiply(F, G)).norm() < 1e-12
