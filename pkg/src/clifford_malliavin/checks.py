"""Residuals of the algebraic identities, over seeded random inputs.

Every function returns the largest absolute residual seen over ``cases`` random draws,
so callers can compare against their own tolerance.
"""
from __future__ import annotations

import math

import numpy as np

from .antisym import AntiTensor, all_slices, contract, conj, reverse, to_dense
from .chaos import CliffordElement, adjoint, beta, cond_expect, l2_inner, multiply, product_weight, state_m
from .grid import TimeGrid, indicator_vector
from .ito import check_adapted, clark_ocone, ito_integral, increment
from .malliavin import ProcessElement, derivative, divergence, inv_number, number_operator, process_inner
from .oracle import field_matrix, from_matrix, to_matrix
from .sampling import (
    random_adapted,
    random_element,
    random_process,
    random_tensor,
    self_adjoint_kernel,
)


def _rand_grid(rng, max_slots: int, widths=(1.0, 0.5)) -> TimeGrid:
    return TimeGrid(int(rng.integers(1, max_slots + 1)), float(rng.choice(widths)))


# -- tensors --------------------------------------------------------------------


def contraction_equivalence(rng, cases: int = 100, max_slots: int = 6, max_degree: int = 4, widths=(1.0, 0.5)) -> float:
    """Coefficient-table contraction vs the dense pointwise reference."""
    worst = 0.0
    for _ in range(cases):
        g = _rand_grid(rng, max_slots, widths)
        p, q = (int(v) for v in rng.integers(0, max_degree + 1, 2))
        f, h = random_tensor(g, p, rng), random_tensor(g, q, rng)
        for r in range(min(p, q) + 1):
            a = contract(f, h, r)
            b = contract(f, h, r, method="dense")
            worst = max(worst, float(np.max(np.abs(a.coeffs - b.coeffs), initial=0.0)))
    return worst


def wedge_symmetry(rng, cases: int = 50, max_slots: int = 6, max_degree: int = 4, widths=(1.0, 0.5)) -> float:
    """``f ^_r g = (-1)^{pq+r} g ^_r f``."""
    worst = 0.0
    for _ in range(cases):
        g = _rand_grid(rng, max_slots, widths)
        p, q = (int(v) for v in rng.integers(0, max_degree + 1, 2))
        f, h = random_tensor(g, p, rng), random_tensor(g, q, rng)
        for r in range(min(p, q) + 1):
            lhs = contract(f, h, r).coeffs
            rhs = (-1) ** (p * q + r) * contract(h, f, r).coeffs
            worst = max(worst, float(np.max(np.abs(lhs - rhs), initial=0.0)))
    return worst


def wedge_slice_identity(rng, cases: int = 30, max_slots: int = 5, max_degree: int = 4, widths=(1.0, 0.5)) -> float:
    """``int conj(f(t, <-.)) ^_r f(t, .) dt = conj(<-f) ^_{r+1} f`` as pointwise functions."""
    worst = 0.0
    for _ in range(cases):
        g = _rand_grid(rng, max_slots, widths)
        q = int(rng.integers(1, max_degree + 1))
        f = random_tensor(g, q, rng)
        table = all_slices(f)
        for r in range(q):
            acc = None
            for k in range(g.slots):
                s = AntiTensor(g, q - 1, table[k])
                term = contract(conj(reverse(s)), s, r, hat=False).values
                acc = term if acc is None else acc + term
            lhs = g.width * acc
            rhs = contract(conj(reverse(f)), f, r + 1, hat=False).values
            worst = max(worst, float(np.max(np.abs(lhs - rhs), initial=0.0)))
    return worst


def antisym_norm_lemma(rng, q: int, cases: int = 10, slots: int = 6, width: float = 1.0) -> tuple[float, float]:
    """Residual of ``||f ^_r f||^2 = (1 + (-1)^{q+r})/2 int ||f(t,.) ^_r f||^2`` and the
    largest ``||f ^_r f||`` over odd ``q + r``."""
    from .applications.fourth_moment import norm_lemma_factor, self_contraction_norm_sq, slice_integral

    g = TimeGrid(slots, width)
    worst = odd = 0.0
    for _ in range(cases):
        f = self_adjoint_kernel(g, q, rng)
        for r in range(q):
            lhs = self_contraction_norm_sq(f, r)
            rhs = norm_lemma_factor(q, r) * slice_integral(f, r)
            worst = max(worst, abs(lhs - rhs))
            if (q + r) % 2:
                odd = max(odd, math.sqrt(lhs))
    return worst, odd


# -- chaos algebra ----------------------------------------------------------------


def associativity(rng, cases: int = 20, max_slots: int = 6, max_degree: int = 3, widths=(1.0, 0.5)) -> float:
    worst = 0.0
    for _ in range(cases):
        g = _rand_grid(rng, max_slots, widths)
        F, G, H = (random_element(g, max_degree, rng) for _ in range(3))
        worst = max(worst, (multiply(multiply(F, G), H) - multiply(F, multiply(G, H))).norm())
    return worst


def field_car(grid: TimeGrid) -> float:
    """``{Psi(e_i), Psi(e_j)} = 2 delta_ij`` on the chaos side."""
    worst = 0.0
    for i in range(1, grid.slots + 1):
        for j in range(1, grid.slots + 1):
            a, b = CliffordElement.field(grid, i), CliffordElement.field(grid, j)
            anti = multiply(a, b) + multiply(b, a)
            worst = max(worst, (anti - CliffordElement.constant(grid, 2.0 * (i == j))).norm())
    return worst


def matrix_car(grid: TimeGrid) -> float:
    """``{Psi_i, Psi_j} = 2 delta_ij I`` on the matrix side."""
    N = 2 ** grid.slots
    P = [field_matrix(grid, k).matrix for k in range(1, grid.slots + 1)]
    worst = 0.0
    for i in range(grid.slots):
        for j in range(grid.slots):
            err = P[i] @ P[j] + P[j] @ P[i] - 2.0 * (i == j) * np.eye(N)
            worst = max(worst, float(np.max(np.abs(err))))
    return worst


def real_field_car(rng, cases: int = 20, max_slots: int = 6, widths=(1.0, 0.5)) -> float:
    """``{Psi(z), Psi(z')} = 2 <z, z'>`` for real ``z, z'``."""
    worst = 0.0
    for _ in range(cases):
        g = _rand_grid(rng, max_slots, widths)
        z, w = random_tensor(g, 1, rng, complex_=False), random_tensor(g, 1, rng, complex_=False)
        a, b = CliffordElement.psi(z), CliffordElement.psi(w)
        anti = multiply(a, b) + multiply(b, a)
        worst = max(worst, (anti - CliffordElement.constant(g, 2 * np.dot(z.coeffs, w.coeffs).real)).norm())
    return worst


def product_formula_terms(rng, cases: int = 10, max_slots: int = 6, max_degree: int = 3, widths=(1.0, 0.5)) -> float:
    """Each ``r`` term of ``J_p(f) J_q(g)`` against the dense antisymmetrized convolution,
    and the full sum against the matrix product."""
    worst = 0.0
    for _ in range(cases):
        g = _rand_grid(rng, max_slots, widths)
        for p in range(max_degree + 1):
            for q in range(max_degree + 1):
                f, h = random_tensor(g, p, rng), random_tensor(g, q, rng)
                total = CliffordElement.zero(g)
                for r in range(min(p, q) + 1):
                    term = contract(f, h, r, method="dense") * product_weight(p, q, r)
                    total = total + CliffordElement(g, [term])
                prod = multiply(CliffordElement.J(f), CliffordElement.J(h))
                worst = max(worst, (prod - total).norm())
                if g.slots <= 6:
                    M = to_matrix(CliffordElement.J(f)).matrix @ to_matrix(CliffordElement.J(h)).matrix
                    worst = max(worst, float(np.max(np.abs(to_matrix(prod).matrix - M))))
    return worst


def trace_property(rng, cases: int = 20, max_slots: int = 6, max_degree: int = 3, widths=(1.0, 0.5)) -> float:
    worst = 0.0
    for _ in range(cases):
        g = _rand_grid(rng, max_slots, widths)
        F, G = random_element(g, max_degree, rng), random_element(g, max_degree, rng)
        worst = max(worst, abs(state_m(multiply(F, G)) - state_m(multiply(G, F))))
    return worst


def beta_automorphism(rng, cases: int = 20, max_slots: int = 6, max_degree: int = 3, widths=(1.0, 0.5)) -> float:
    worst = 0.0
    for _ in range(cases):
        g = _rand_grid(rng, max_slots, widths)
        F, G = random_element(g, max_degree, rng), random_element(g, max_degree, rng)
        worst = max(
            worst,
            (beta(multiply(F, G)) - multiply(beta(F), beta(G))).norm(),
            (beta(adjoint(F)) - adjoint(beta(F))).norm(),
            (beta(beta(F)) - F).norm(),
        )
    return worst


def inner_vs_state(rng, cases: int = 100, max_slots: int = 6, max_degree: int = 3, widths=(1.0, 0.5)) -> float:
    worst = 0.0
    for _ in range(cases):
        g = _rand_grid(rng, max_slots, widths)
        F, G = random_element(g, max_degree, rng), random_element(g, max_degree, rng)
        worst = max(worst, abs(l2_inner(F, G) - state_m(multiply(adjoint(F), G))))
    return worst


def _random_subset(rng, grid: TimeGrid) -> list[int]:
    return [k for k in range(1, grid.slots + 1) if rng.random() < 0.5]


def conditional_expectation(rng, cases: int = 20, max_slots: int = 6, max_degree: int = 3, widths=(1.0, 0.5)) -> float:
    """Module property ``m(E(F|A) V) = m(F V)`` for ``V`` in ``C_A`` and the tower property."""
    worst = 0.0
    for _ in range(cases):
        g = _rand_grid(rng, max_slots, widths)
        A2 = _random_subset(rng, g)
        A1 = [k for k in A2 if rng.random() < 0.5]
        F = random_element(g, max_degree, rng)
        V = cond_expect(random_element(g, max_degree, rng), A2)
        worst = max(
            worst,
            abs(state_m(multiply(cond_expect(F, A2), V)) - state_m(multiply(F, V))),
            (cond_expect(cond_expect(F, A2), A1) - cond_expect(F, A1)).norm(),
        )
    return worst


# -- Malliavin ----------------------------------------------------------------------


def adjointness(rng, cases: int = 100, max_slots: int = 8, max_degree: int = 4, widths=(1.0, 0.5)) -> float:
    """``|<D F, u> - <F, delta u>|``."""
    worst = 0.0
    for _ in range(cases):
        g = _rand_grid(rng, max_slots, widths)
        F = random_element(g, max_degree, rng)
        u = random_process(g, max_degree - 1, rng)
        worst = max(worst, abs(process_inner(derivative(F), u) - l2_inner(F, divergence(u))))
    return worst


def derivative_divergence_car(rng, cases: int = 50, max_slots: int = 6, max_degree: int = 4,
                              widths=(1.0, 0.5)) -> float:
    """``(D_k delta + delta D_k)(e_j (x) J_p(f)) = width^{-1/2} delta_jk J_p(f)``."""
    worst = 0.0
    for _ in range(cases):
        g = _rand_grid(rng, max_slots, widths)
        j = int(rng.integers(1, g.slots + 1))
        p = int(rng.integers(0, min(max_degree, g.slots) + 1))
        F = CliffordElement.J(random_tensor(g, p, rng))
        h = AntiTensor.basis(g, j)
        u = ProcessElement.elementary(h, F)
        Dd = derivative(divergence(u))
        DF = derivative(F)
        for k in range(1, g.slots + 1):
            lhs = Dd[k] + divergence(ProcessElement.elementary(h, DF[k]))
            rhs = F.scale((j == k) / math.sqrt(g.width))
            worst = max(worst, (lhs - rhs).norm())
    return worst


def graded_leibniz(rng, cases: int = 100, max_slots: int = 6, max_degree: int = 3, widths=(1.0, 0.5)) -> float:
    worst = 0.0
    for _ in range(cases):
        g = _rand_grid(rng, max_slots, widths)
        F, G = random_element(g, max_degree, rng), random_element(g, max_degree, rng)
        DFG = derivative(multiply(F, G))
        DF, DG = derivative(F), derivative(G)
        bF = beta(F)
        for k in range(1, g.slots + 1):
            rhs = multiply(DF[k], G) + multiply(bF, DG[k])
            worst = max(worst, (DFG[k] - rhs).norm())
    return worst


def integration_by_parts(rng, cases: int = 100, max_slots: int = 6, max_degree: int = 3, widths=(1.0, 0.5)) -> float:
    """``m(delta(u) J_{p+1}(g)) = width sum_k m(beta(u_k) D_k J_{p+1}(g))`` for ``u`` of level ``p``."""
    worst = 0.0
    for _ in range(cases):
        g = _rand_grid(rng, max_slots, widths)
        p = int(rng.integers(0, min(max_degree, g.slots - 1) + 1))
        u = ProcessElement(g, [CliffordElement.J(random_tensor(g, p, rng)) for _ in range(g.slots)])
        G = CliffordElement.J(random_tensor(g, p + 1, rng))
        lhs = state_m(multiply(divergence(u), G))
        DG = derivative(G)
        rhs = g.width * sum(state_m(multiply(beta(u[k]), DG[k])) for k in range(1, g.slots + 1))
        worst = max(worst, abs(lhs - rhs))
    return worst


def derivatives_anticommute(rng, cases: int = 20, max_slots: int = 6, max_degree: int = 4, widths=(1.0, 0.5)) -> float:
    worst = 0.0
    for _ in range(cases):
        g = _rand_grid(rng, max_slots, widths)
        F = random_element(g, max_degree, rng)
        DD = [derivative(c) for c in derivative(F).components]
        for j in range(g.slots):
            for k in range(g.slots):
                worst = max(worst, (DD[j].components[k] + DD[k].components[j]).norm())
    return worst


def conditional_commutation(rng, cases: int = 20, max_slots: int = 6, max_degree: int = 4, widths=(1.0, 0.5)) -> float:
    """``D_k m(F | C_A) = m(D_k F | C_A) 1_A(k)``."""
    worst = 0.0
    for _ in range(cases):
        g = _rand_grid(rng, max_slots, widths)
        A = _random_subset(rng, g)
        F = random_element(g, max_degree, rng)
        lhs = derivative(cond_expect(F, A))
        DF = derivative(F)
        for k in range(1, g.slots + 1):
            rhs = cond_expect(DF[k], A) if k in A else CliffordElement.zero(g)
            worst = max(worst, (lhs[k] - rhs).norm())
    return worst


def number_operator_check(rng, cases: int = 20, max_slots: int = 6, widths=(1.0, 0.5)) -> float:
    """``delta(D F) = R F = sum_n n J_n(f_n)`` and ``R R^{-1} = Id`` on centred elements."""
    worst = 0.0
    for _ in range(cases):
        g = _rand_grid(rng, max_slots, widths)
        F = random_element(g, g.slots, rng)
        worst = max(worst, (divergence(derivative(F)) - number_operator(F)).norm())
        F0 = random_element(g, g.slots, rng, min_degree=1)
        worst = max(worst, (number_operator(inv_number(F0)) - F0).norm())
    return worst


# -- Ito ----------------------------------------------------------------------------


def clark_ocone_residual(rng, cases: int = 100, max_slots: int = 8, max_degree: int = 4, widths=(1.0, 0.5)) -> tuple[float, bool]:
    worst = 0.0
    adapted = True
    for _ in range(cases):
        g = _rand_grid(rng, max_slots, widths)
        F = random_element(g, max_degree, rng)
        mean, u = clark_ocone(F)
        adapted = adapted and check_adapted(u)
        rec = ito_integral(u) + CliffordElement.constant(g, mean)
        worst = max(worst, (F - rec).norm())
    return worst, adapted


def ito_vs_divergence(rng, cases: int = 100, max_slots: int = 6, max_degree: int = 3, widths=(1.0, 0.5)) -> tuple[float, float]:
    """Residuals of ``delta(u) = int dPsi u`` and of the Ito isometry for adapted ``u``."""
    worst_d = worst_i = 0.0
    for _ in range(cases):
        g = _rand_grid(rng, max_slots, widths)
        u = random_adapted(g, max_degree, rng)
        I = ito_integral(u)
        worst_d = max(worst_d, (divergence(u) - I).norm())
        worst_i = max(worst_i, abs(I.norm() ** 2 - u.norm() ** 2))
    return worst_d, worst_i


def increments_orthogonal(rng, cases: int = 20, max_slots: int = 6, max_degree: int = 3, widths=(1.0, 0.5)) -> float:
    worst = 0.0
    for _ in range(cases):
        g = _rand_grid(rng, max_slots, widths)
        u = random_adapted(g, max_degree, rng)
        terms = [multiply(increment(g, k), u[k]) for k in range(1, g.slots + 1)]
        for j in range(g.slots):
            for k in range(g.slots):
                if j != k:
                    worst = max(worst, abs(l2_inner(terms[j], terms[k])))
    return worst


def delta_indicator(rng, cases: int = 20, max_slots: int = 6, max_degree: int = 3, widths=(1.0, 0.5)) -> float:
    """``delta(1_A F) = Psi(1_A) F`` for ``F`` in ``C_{A^c}``."""
    worst = 0.0
    for _ in range(cases):
        g = _rand_grid(rng, max_slots, widths)
        A = _random_subset(rng, g)
        Ac = [k for k in range(1, g.slots + 1) if k not in A]
        F = cond_expect(random_element(g, max_degree, rng), Ac)
        one_A = indicator_vector(g, A)
        lhs = divergence(ProcessElement.elementary(one_A, F))
        rhs = multiply(CliffordElement.psi(one_A), F)
        worst = max(worst, (lhs - rhs).norm())
    return worst


# -- oracle -------------------------------------------------------------------------


def homomorphism(rng, cases: int = 200, slots: int = 6, max_degree: int = 3, width: float = 1.0) -> float:
    """``to_matrix(FG) = to_matrix(F) to_matrix(G)`` and ``to_matrix(F^*) = to_matrix(F)^dagger``."""
    g = TimeGrid(slots, width)
    worst = 0.0
    for _ in range(cases):
        F, G = random_element(g, max_degree, rng), random_element(g, max_degree, rng)
        MF, MG = to_matrix(F).matrix, to_matrix(G).matrix
        worst = max(
            worst,
            float(np.max(np.abs(to_matrix(multiply(F, G)).matrix - MF @ MG))),
            float(np.max(np.abs(to_matrix(adjoint(F)).matrix - MF.conj().T))),
        )
    return worst


def oracle_roundtrip(rng, cases: int = 100, max_slots: int = 6, max_degree: int = 6, widths=(1.0, 0.5)) -> float:
    """``from_matrix(to_matrix(F)) = F``, ``||M Omega|| = ||F||`` and ``m(F) = <Omega, M Omega>``."""
    worst = 0.0
    for _ in range(cases):
        g = _rand_grid(rng, max_slots, widths)
        F = random_element(g, max_degree, rng)
        M = to_matrix(F).matrix
        worst = max(
            worst,
            (from_matrix(M, g) - F).norm(),
            abs(np.linalg.norm(M[:, 0]) - F.norm()),
            abs(M[0, 0] - state_m(F)),
        )
    return worst


def dense_pointwise_dictionary(rng, cases: int = 20, max_slots: int = 5, max_degree: int = 4, widths=(1.0, 0.5)) -> float:
    """``<f, f> = n! int |f|^2`` under the pointwise dictionary."""
    worst = 0.0
    for _ in range(cases):
        g = _rand_grid(rng, max_slots, widths)
        n = int(rng.integers(0, max_degree + 1))
        f = random_tensor(g, n, rng)
        dense = to_dense(f).values
        integral = math.factorial(n) * g.width ** n * float(np.sum(np.abs(dense) ** 2))
        worst = max(worst, abs(integral - f.norm_sq()))
    return worst



# -- applications -------------------------------------------------------------------


def fourth_moment_consistency(rng, q: int, cases: int = 50, slots: int = 6, width: float = 1.0) -> dict[str, float]:
    """Scaled gaps ``|m4 - m4(oracle)| / (1 + |m4|)`` for the decomposition as implemented
    (``worst``), and the smallest gaps for the variant with ``C_0 = 4 m(F^2)^2``
    (``typeset_c0_best``) and with the extra ``1/(q-r)^2`` factors (``typeset_lemma_worst``)."""
    from .applications.fourth_moment import fourth_moment

    g = TimeGrid(slots, width)
    worst = lemma_worst = 0.0
    c0_best = math.inf
    for _ in range(cases):
        rep = fourth_moment(self_adjoint_kernel(g, q, rng))
        scale = 1 + abs(rep.oracle_m4)
        worst = max(worst, abs(rep.m4 - rep.oracle_m4) / scale)
        c0_best = min(c0_best, abs(rep.m4 - rep.C0 + rep.C0_printed - rep.oracle_m4) / scale)
        lemma_worst = max(lemma_worst, abs(rep.m4_printed_constants - rep.C0_printed + rep.C0 - rep.oracle_m4) / scale)
    return {"worst": worst, "typeset_c0_best": c0_best, "typeset_lemma_worst": lemma_worst}


def two_point_calculus(rng, cases: int = 20, max_slots: int = 5, widths=(1.0, 0.5)) -> float:
    """``two_point`` against matrix functional calculus for random real ``z`` and ``phi``."""
    from .applications.functional import two_point
    from .antisym import plain_l2_norm
    from .oracle import functional_calculus

    worst = 0.0
    for _ in range(cases):
        g = _rand_grid(rng, max_slots, widths)
        z = random_tensor(g, 1, rng, complex_=False)
        coef = rng.uniform(-1, 1, 4)

        def phi(x, c=coef):
            return c[0] + c[1] * x + c[2] * np.sin(3 * x) + 1j * c[3] * np.exp(x)

        nz = plain_l2_norm(z)
        el = two_point((phi(nz), phi(-nz)), z)
        M = functional_calculus(to_matrix(CliffordElement.psi(z)).matrix, phi)
        worst = max(worst, float(np.max(np.abs(to_matrix(el).matrix - M))))
    return worst

__all__ = [name for name in dir() if not name.startswith("_") and callable(globals()[name])]
