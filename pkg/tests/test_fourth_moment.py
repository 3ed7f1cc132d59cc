import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from clifford_malliavin import checks
from clifford_malliavin.antisym import AntiTensor, wedge
from clifford_malliavin.applications import (
    claim1_report,
    claim2_witness,
    fourth_moment,
    kernel_parity,
    norm_lemma_factor,
    slice_integral,
    variance_carre,
)
from clifford_malliavin.applications.fourth_moment import correction_coefficient, variance_closed_form
from clifford_malliavin.chaos import CliffordElement
from clifford_malliavin.errors import DegreeMismatchError, NotSelfAdjointError
from clifford_malliavin.grid import TimeGrid
from clifford_malliavin.sampling import random_tensor, self_adjoint_kernel

seeds = st.integers(0, 2 ** 32 - 1)


def test_fourth_moment_e12(g4):
    rep = fourth_moment(AntiTensor.basis(g4, 1, 2))
    assert rep.m4 == pytest.approx(1) and rep.oracle_m4 == pytest.approx(1)
    assert rep.C0 == pytest.approx(2) and rep.W0 == pytest.approx(0, abs=1e-15)
    assert rep.T[1] == pytest.approx(-1)
    assert rep.to_report().passed


def test_fourth_moment_e1234(g4):
    rep = fourth_moment(AntiTensor.basis(g4, 1, 2, 3, 4))
    assert rep.oracle_m4 == pytest.approx(1)
    assert rep.K == pytest.approx(-1) and rep.K_definition == pytest.approx(-1)
    assert rep.T[1] == pytest.approx(0, abs=1e-15) and rep.T[2] == pytest.approx(0, abs=1e-15)
    assert rep.T[3] == pytest.approx(-1)
    assert correction_coefficient(4, 3) == pytest.approx(-2304)
    assert rep.slice_integrals[3] == pytest.approx(1 / 2304)


def test_k_of_field_vanishes(rng):
    g = TimeGrid(6, 0.5)
    for _ in range(10):
        z = random_tensor(g, 1, rng, complex_=False, unit=True)
        rep = fourth_moment(z)
        assert abs(rep.K_definition) < 1e-12 and rep.K == 0
        assert rep.oracle_m4 == pytest.approx(1)


def test_typeset_leading_constant_disagrees(g4):
    rep = fourth_moment(AntiTensor.basis(g4, 1, 2))
    assert rep.C0_printed == pytest.approx(4)
    assert abs(rep.m4_printed_constants - rep.oracle_m4) > 1


def test_norm_lemma_factor():
    assert norm_lemma_factor(4, 2) == 1 and norm_lemma_factor(4, 1) == 0
    assert norm_lemma_factor(4, 2, printed=True) == pytest.approx(1 / 4)


def test_non_self_adjoint_rejected(g4, rng):
    f = random_tensor(g4, 2, rng)
    with pytest.raises(NotSelfAdjointError):
        fourth_moment(f)
    with pytest.raises(NotSelfAdjointError):
        variance_carre(f)
    with pytest.raises(DegreeMismatchError):
        fourth_moment(AntiTensor.scalar(g4, 1))


def test_kernel_parity(g4):
    assert kernel_parity(AntiTensor.basis(g4, 1)) == 1
    assert kernel_parity(AntiTensor.basis(g4, 1, 2) * 1j) == 1
    assert kernel_parity(AntiTensor.basis(g4, 1, 2)) == -1


@pytest.mark.parametrize("q", [2, 3, 4])
@pytest.mark.parametrize("width", [1.0, 0.5])
def test_fourth_moment_matches_oracle(q, width):
    gaps = checks.fourth_moment_consistency(np.random.default_rng(q), q, cases=8, slots=7, width=width)
    assert gaps["worst"] < 1e-12
    assert gaps["typeset_c0_best"] > 1e-3


@pytest.mark.parametrize("q", [3, 4])
def test_typeset_norm_lemma_constant_disagrees(q):
    gaps = checks.fourth_moment_consistency(np.random.default_rng(7), q, cases=8, slots=7)
    assert gaps["typeset_lemma_worst"] > 1e-3


def test_variance_examples(g4, rng):
    vr = variance_carre(AntiTensor.basis(g4, 1, 2) * 1j)
    assert vr.closed_form == 0 and vr.direct == pytest.approx(0, abs=1e-15)
    f = AntiTensor.basis(g4, 1, 2, 3) * 1j
    vr = variance_carre(f)
    assert vr.closed_form == pytest.approx(vr.direct, abs=1e-12)
    g = TimeGrid(6, 0.5)
    for q in (2, 3, 4):
        f = self_adjoint_kernel(g, q, rng)
        vr = variance_carre(f)
        assert vr.closed_form == pytest.approx(vr.direct, rel=1e-10, abs=1e-12)
        assert vr.to_report().passed


def test_variance_homogeneity(rng):
    g = TimeGrid(6)
    f = self_adjoint_kernel(g, 3, rng)
    assert variance_closed_form(f * 2.5) == pytest.approx(2.5 ** 4 * variance_closed_form(f))
    assert variance_carre(f * 2.5).direct == pytest.approx(2.5 ** 4 * variance_carre(f).direct)


def test_claim1_examples(g4, rng):
    rep = claim1_report(AntiTensor.basis(g4, 1, 2) * 1j)
    assert rep.distance_to_constant == pytest.approx(0, abs=1e-15)
    assert (rep.quantity_i - CliffordElement.constant(g4, 1)).norm() < 1e-12
    assert rep.contraction_norms == {}
    g = TimeGrid(6)
    rep = claim1_report(self_adjoint_kernel(g, 3, rng))
    assert rep.variance_closed_form == pytest.approx(rep.variance_direct, abs=1e-9)
    assert rep.pairing_residual < 1e-12
    assert rep.to_report().passed


def test_claim2_witness_basis(g4):
    e = [AntiTensor.basis(g4, k) for k in range(1, 5)]
    rep = claim2_witness(*e)
    assert rep.slice3_integral == pytest.approx(1 / 2304, abs=1e-15)
    assert rep.slice3_expected == pytest.approx(math.factorial(3) ** 2 * 4 / math.factorial(4) ** 4)
    assert rep.contraction2_norm < 1e-12
    assert rep.K == pytest.approx(-1)
    assert rep.to_report().passed


def test_claim2_witness_scaled_orthogonal(rng):
    g = TimeGrid(6, 0.5)
    Q, _ = np.linalg.qr(rng.normal(size=(6, 4)))
    scales = [0.5, 1.0, 1.5, 2.0]
    fs = [AntiTensor(g, 1, Q[:, i] * s) for i, s in enumerate(scales)]
    rep = claim2_witness(*fs)
    assert rep.slice3_integral == pytest.approx(rep.slice3_expected, rel=1e-10)
    assert rep.K == pytest.approx(rep.K_lemma, rel=1e-9)
    assert rep.K < 0


def test_claim2_rejects_bad_inputs(g4):
    e = [AntiTensor.basis(g4, k) for k in range(1, 5)]
    with pytest.raises(ValueError):
        claim2_witness(e[0], e[0], e[2], e[3])
    with pytest.raises(ValueError):
        claim2_witness(AntiTensor.zero(g4, 1), *e[1:])
    with pytest.raises(ValueError):
        g3 = TimeGrid(3)
        claim2_witness(*[AntiTensor.basis(g3, 1)] * 4)
    with pytest.raises(DegreeMismatchError):
        claim2_witness(AntiTensor.basis(g4, 1, 2), *e[1:])


@given(seeds, st.integers(2, 4))
def test_decomposition_property(seed, q):
    rng = np.random.default_rng(seed)
    g = TimeGrid(int(rng.integers(q, 7)), float(rng.choice([1.0, 0.5])))
    f = self_adjoint_kernel(g, q, rng)
    rep = fourth_moment(f)
    assert abs(rep.m4 - rep.oracle_m4) <= 1e-9 * (1 + abs(rep.oracle_m4))
    for r in range(1, q):
        if (q + r) % 2:
            assert rep.contraction_norms[r] < 1e-12
    assert slice_integral(f, 0) >= 0


def test_slice_integral_of_wedge(g4):
    # f(1, .) = e_2 / 2 and f(2, .) = -e_1 / 2; each contracts with f to a vector of norm 1/4
    f = wedge(AntiTensor.basis(g4, 1), AntiTensor.basis(g4, 2))
    assert slice_integral(f, 1) == pytest.approx(0.125)
    assert correction_coefficient(2, 1) * slice_integral(f, 1) == pytest.approx(-1)
