import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from clifford_malliavin import checks
from clifford_malliavin.antisym import (
    AntiTensor,
    DenseAntiFn,
    antisymmetrize,
    conj,
    contract,
    inner,
    plain_l2_norm,
    reverse,
    slice_first,
    to_dense,
    wedge,
)
from clifford_malliavin.errors import DegreeMismatchError, GridMismatchError
from clifford_malliavin.grid import TimeGrid
from clifford_malliavin.sampling import random_tensor

seeds = st.integers(0, 2 ** 32 - 1)


def e(g, *slots):
    return AntiTensor.basis(g, *slots)


def test_basis_and_entries(g4):
    assert e(g4, 2, 1).entries() == {(1, 2): -1}
    assert e(g4, 1, 1).is_zero()
    with pytest.raises(ValueError):
        AntiTensor.from_entries(g4, 2, {(2, 1): 1})
    with pytest.raises(DegreeMismatchError):
        AntiTensor.from_entries(g4, 2, {(1,): 1})
    with pytest.raises(ValueError):
        AntiTensor.from_entries(g4, 1, {(5,): 1})


def test_immutable(g4):
    f = e(g4, 1)
    with pytest.raises(AttributeError):
        f.degree = 2
    with pytest.raises(ValueError):
        f.coeffs[0] = 2


def test_antisymmetrize_examples(g4):
    v = np.zeros((4, 4))
    v[0, 1] = 1
    f = antisymmetrize(DenseAntiFn(g4, v))
    # the antisymmetric part takes the value 1/2 at (1, 2), which is e1^e2 pointwise
    assert f.entries(1e-15) == {(1, 2): pytest.approx(1.0)}
    sym = np.ones((4, 4))
    assert antisymmetrize(DenseAntiFn(g4, sym)).is_zero(1e-15)
    g = e(g4, 1, 2)
    np.testing.assert_allclose(antisymmetrize(to_dense(g)).coeffs, g.coeffs)


def test_point_mass_dictionary(g4):
    # e1^e2 takes value 1/2 at (1, 2), -1/2 at (2, 1) and 0 on the diagonal
    vals = to_dense(e(g4, 1, 2)).values
    assert vals[0, 1] == pytest.approx(0.5) and vals[1, 0] == pytest.approx(-0.5)
    assert np.all(np.diag(vals) == 0)


def test_reverse_conj_examples(g4, rng):
    for n, sign in [(1, 1), (2, -1), (3, -1), (4, 1)]:
        f = random_tensor(g4, n, rng)
        np.testing.assert_allclose(reverse(f).coeffs, sign * f.coeffs)
    f = e(g4, 1) * 1j
    assert conj(f).entries() == {(1,): -1j}
    r = random_tensor(g4, 2, rng, complex_=False)
    np.testing.assert_array_equal(conj(r).coeffs, r.coeffs)
    c = random_tensor(g4, 2, rng)
    np.testing.assert_array_equal(conj(conj(c)).coeffs, c.coeffs)


def test_inner_examples(g4):
    assert inner(e(g4, 1, 2), e(g4, 1, 2)) == 1
    assert inner(e(g4, 1, 2), e(g4, 1, 3)) == 0
    v = np.zeros((4, 4))
    v[1, 0] = 1
    assert inner(e(g4, 1, 2), antisymmetrize(DenseAntiFn(g4, v))) == pytest.approx(-1)
    with pytest.raises(DegreeMismatchError):
        inner(e(g4, 1), e(g4, 1, 2))
    with pytest.raises(GridMismatchError):
        inner(e(g4, 1), e(TimeGrid(4, 0.5), 1))


def test_plain_norm_examples(g4):
    assert plain_l2_norm(e(g4, 1, 2)) == pytest.approx(1 / math.sqrt(2))
    assert plain_l2_norm(e(g4, 1)) == 1
    assert plain_l2_norm(AntiTensor.zero(g4, 3)) == 0


def test_wedge_examples(g4):
    assert wedge(e(g4, 1), e(g4, 2)).entries() == {(1, 2): pytest.approx(1)}
    assert wedge(e(g4, 1), e(g4, 1)).is_zero()
    assert wedge(e(g4, 1, 2), e(g4, 3)).entries() == {(1, 2, 3): pytest.approx(1)}
    assert wedge(e(g4, 2), e(g4, 1)).entries() == {(1, 2): pytest.approx(-1)}


def test_contract_examples(g4):
    assert contract(e(g4, 1, 2), e(g4, 2), 1).entries(1e-15) == {(1,): pytest.approx(0.5)}
    assert contract(e(g4, 1, 2), e(g4, 3, 4), 1).is_zero(1e-15)
    assert contract(e(g4, 1, 2), e(g4, 1, 2), 2).coeffs[0] == pytest.approx(-0.5)
    with pytest.raises(ValueError):
        contract(e(g4, 1, 2), e(g4, 2), 2)
    with pytest.raises(ValueError):
        contract(e(g4, 1), e(g4, 2), 0, method="fast")


def test_contract_example_with_width():
    g = TimeGrid(3, 0.5)
    # pointwise values scale by width^{-n/2}, the integral by width^r
    a = contract(e(g, 1, 2), e(g, 2), 1)
    b = contract(e(g, 1, 2), e(g, 2), 1, method="dense")
    np.testing.assert_allclose(a.coeffs, b.coeffs, atol=1e-15)
    assert a.entries(1e-15) == {(1,): pytest.approx(0.5)}


def test_degree_above_slots_is_zero():
    g = TimeGrid(2)
    assert AntiTensor.zero(g, 3).coeffs.size == 0
    assert wedge(e(g, 1, 2), e(g, 1)).coeffs.size == 0


def test_slice_example(g4):
    f = e(g4, 1, 2)
    assert slice_first(f, 1).entries(1e-15) == {(2,): pytest.approx(0.5)}
    assert slice_first(f, 2).entries(1e-15) == {(1,): pytest.approx(-0.5)}
    assert slice_first(f, 3).is_zero()


def test_fock_norm_matches_dense_integral(rng):
    assert checks.dense_pointwise_dictionary(rng, cases=20) < 1e-12


@given(seeds, st.integers(1, 6), st.integers(0, 4), st.sampled_from([1.0, 0.5]))
def test_antisymmetrize_is_projection(seed, d, n, w):
    rng = np.random.default_rng(seed)
    g = TimeGrid(d, w)
    raw = DenseAntiFn(g, rng.normal(size=(d,) * n) if n else rng.normal())
    once = antisymmetrize(raw)
    twice = antisymmetrize(to_dense(once))
    np.testing.assert_allclose(once.coeffs, twice.coeffs, atol=1e-12)
    if n:
        assert to_dense(once).is_antisymmetric()


@given(seeds)
def test_contraction_paths_agree(seed):
    assert checks.contraction_equivalence(np.random.default_rng(seed), cases=4) < 1e-12


@given(seeds)
def test_wedge_lemma_symmetry(seed):
    assert checks.wedge_symmetry(np.random.default_rng(seed), cases=4) < 1e-12


@given(seeds)
def test_wedge_lemma_slice_identity(seed):
    assert checks.wedge_slice_identity(np.random.default_rng(seed), cases=2) < 1e-12


@pytest.mark.parametrize("q", [2, 3, 4])
@pytest.mark.parametrize("width", [1.0, 0.5])
def test_antisym_norm_lemma(q, width):
    res, odd = checks.antisym_norm_lemma(np.random.default_rng(q), q, cases=5, slots=6, width=width)
    assert res < 1e-12 and odd < 1e-12


def test_contraction_dense_vs_coeff_exhaustive(rng):
    for d in range(1, 7):
        g = TimeGrid(d, 0.5 if d % 2 else 1.0)
        for p in range(min(d, 4) + 1):
            for q in range(min(d, 4) + 1):
                f, h = random_tensor(g, p, rng), random_tensor(g, q, rng)
                for r in range(min(p, q) + 1):
                    a = contract(f, h, r)
                    b = contract(f, h, r, method="dense")
                    np.testing.assert_allclose(a.coeffs, b.coeffs, atol=1e-13)
