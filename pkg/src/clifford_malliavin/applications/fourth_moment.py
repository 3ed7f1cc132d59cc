"""Fourth moments of homogeneous chaos elements and the contraction norms behind them.

For ``F = J_q(f)`` with ``F^* = F`` (or ``F^* = -F``; every quantity below is invariant
under ``f -> i f``) the fourth moment splits as

    m(F^4) = C_0 + W_0 + sum_{r=1}^{q-1} T_r,

    C_0 = 2 m(F^2)^2,
    W_0 = ((-1)^q / 2) (2q)! I_0,
    T_r = (r!)^2 (2q-2r)! C(q,r)^4 (1/q) { r (1 + (-1)^{q+r}) + ((-1)^{q+r}/2) (q-r) } I_r,

with ``I_r = int ||f(t, .) ^_r f||^2_{2q-2r-1} dt`` in plain ``L^2`` norms. ``T_r`` rests on

    ||f ^_r f||^2_{2q-2r} = (1 + (-1)^{q+r}) / 2 * I_r,

which is verified against the matrix oracle. The variants with ``C_0 = 4 m(F^2)^2``
and with an extra factor ``1/(q-r)^2`` in both places are computed as well so that
reports can show they disagree with the oracle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..antisym import AntiTensor, all_slices, contract, inner, plain_l2_norm, wedge
from ..chaos import CliffordElement, multiply, state_m
from ..errors import DegreeMismatchError, NotSelfAdjointError
from ..malliavin import carre_norm, derivative, inv_number, process_square
from ..report import Report


def kernel_parity(f: AntiTensor, tol: float = 1e-12) -> int:
    """``+1`` if ``J_q(f)`` is self-adjoint, ``-1`` if anti-self-adjoint, else raise."""
    q = f.degree
    rev = -1.0 if (q * (q - 1) // 2) % 2 else 1.0
    star = rev * f.coeffs.conj()
    scale = tol * (1 + np.linalg.norm(f.coeffs))
    if np.max(np.abs(star - f.coeffs), initial=0.0) <= scale:
        return 1
    if np.max(np.abs(star + f.coeffs), initial=0.0) <= scale:
        return -1
    raise NotSelfAdjointError("J_q(f) is neither self-adjoint nor anti-self-adjoint")


def slice_integral(f: AntiTensor, r: int) -> float:
    """``I_r = width * sum_k ||f(k, .) ^_r f||^2`` (plain norms)."""
    q = f.degree
    if q == 0:
        raise DegreeMismatchError("slices need q >= 1")
    grid = f.grid
    table = all_slices(f)
    total = 0.0
    for k in range(grid.slots):
        s = AntiTensor(grid, q - 1, table[k])
        total += plain_l2_norm(contract(s, f, r)) ** 2
    return grid.width * total


def self_contraction_norm_sq(f: AntiTensor, r: int) -> float:
    """``||f ^_r f||^2_{2q-2r}``."""
    return plain_l2_norm(contract(f, f, r)) ** 2


def norm_lemma_factor(q: int, r: int, printed: bool = False) -> float:
    """Ratio ``||f ^_r f||^2 / I_r``; ``printed=True`` adds the extra ``1/(q-r)^2``."""
    base = (1 + (-1) ** (q + r)) / 2
    return base / (q - r) ** 2 if printed else base


def correction_coefficient(q: int, r: int, printed: bool = False) -> float:
    """Coefficient of ``I_r`` in ``T_r``."""
    sgn = (-1) ** (q + r)
    first = r * (1 + sgn)
    if printed:
        first /= (q - r) ** 2
    return math.factorial(r) ** 2 * math.factorial(2 * q - 2 * r) * math.comb(q, r) ** 4 / q * (first + sgn / 2 * (q - r))


@dataclass
class FourthMomentReport:
    q: int
    m2: float
    m4: float
    C0: float
    W0: float
    T: dict[int, float]
    K: float
    oracle_m4: float | None
    K_definition: float | None
    C0_printed: float
    m4_printed_constants: float
    slice_integrals: dict[int, float] = field(default_factory=dict)
    contraction_norms: dict[int, float] = field(default_factory=dict)

    def to_report(self, tol: float = 1e-9) -> Report:
        rep = Report(inputs={"q": self.q})
        rep.quantities.update(
            m2=self.m2, m4=self.m4, C0=self.C0, W0=self.W0,
            T={str(r): v for r, v in self.T.items()}, K=self.K,
            oracle_m4=self.oracle_m4, K_definition=self.K_definition,
            C0_printed=self.C0_printed, m4_printed_constants=self.m4_printed_constants,
        )
        scale = 1 + abs(self.m4)
        if self.oracle_m4 is not None:
            rep.check_close("m4 formula vs oracle", self.m4, self.oracle_m4, tol * scale)
        for r, v in self.contraction_norms.items():
            if (self.q + r) % 2:
                rep.check_close(f"||f ^_{r} f|| vanishes for odd q+r", v, 0.0, 1e-12 * scale)
        return rep


def fourth_moment(f: AntiTensor, oracle: bool = True) -> FourthMomentReport:
    q = f.degree
    if q < 1:
        raise DegreeMismatchError("fourth_moment needs q >= 1")
    kernel_parity(f)
    F = CliffordElement.J(f)
    F2 = multiply(F, F)
    m2 = state_m(F2).real
    I = {r: slice_integral(f, r) for r in range(q)}
    C0 = 2 * m2 ** 2
    W0 = (-1) ** q / 2 * math.factorial(2 * q) * I[0]
    T = {r: correction_coefficient(q, r) * I[r] for r in range(1, q)}
    T_printed = {r: correction_coefficient(q, r, printed=True) * I[r] for r in range(1, q)}
    K = float(sum(T.values()))
    m4 = C0 + W0 + K
    oracle_m4 = K_def = None
    if oracle:
        from ..oracle import to_matrix

        M = to_matrix(F).matrix
        M2 = M @ M
        oracle_m4 = float((M2 @ M2)[0, 0].real)
        K_def = oracle_m4 - C0 - W0
    norms = {r: math.sqrt(self_contraction_norm_sq(f, r)) for r in range(1, q)}
    return FourthMomentReport(
        q=q, m2=m2, m4=m4, C0=C0, W0=W0, T=T, K=K,
        oracle_m4=oracle_m4, K_definition=K_def,
        C0_printed=4 * m2 ** 2,
        m4_printed_constants=4 * m2 ** 2 + W0 + sum(T_printed.values()),
        slice_integrals=I, contraction_norms=norms,
    )


def variance_closed_form(f: AntiTensor) -> float:
    q = f.degree
    return sum(
        r ** 2 * math.factorial(r) ** 2 * math.comb(q, r) ** 4 * math.factorial(2 * q - 2 * r)
        * self_contraction_norm_sq(f, r)
        for r in range(1, q)
        if (q + r) % 2 == 0
    )


def variance(G: CliffordElement) -> float:
    """``Var(G) = m(G^* G) - |m(G)|^2``."""
    return float(sum(t.norm_sq() for n, t in G.levels.items() if n > 0))


@dataclass
class VarianceReport:
    closed_form: float
    direct: float

    def to_report(self, tol: float = 1e-9) -> Report:
        rep = Report(quantities={"closed_form": self.closed_form, "direct": self.direct})
        rep.check_close("closed-form variance vs direct", self.closed_form, self.direct, tol * (1 + abs(self.direct)))
        return rep


def variance_carre(f: AntiTensor) -> VarianceReport:
    kernel_parity(f)
    G = carre_norm(CliffordElement.J(f))
    return VarianceReport(variance_closed_form(f), variance(G))


@dataclass
class Claim1Report:
    q: int
    quantity_i: CliffordElement
    carre: CliffordElement
    distance_to_constant: float
    variance_closed_form: float
    variance_direct: float
    contraction_norms: dict[int, float]
    pairing_residual: float

    def to_report(self, tol: float = 1e-9) -> Report:
        rep = Report(inputs={"q": self.q})
        rep.quantities.update(
            quantity_i_mean=state_m(self.quantity_i),
            distance_to_constant=self.distance_to_constant,
            variance_closed_form=self.variance_closed_form,
            variance_direct=self.variance_direct,
            contraction_norms={str(r): v for r, v in self.contraction_norms.items()},
        )
        rep.check_close("closed-form variance vs direct", self.variance_closed_form, self.variance_direct,
                        tol * (1 + abs(self.variance_direct)))
        rep.check_close("<DF, D R^-1 F> = ||DF||^2 / q", self.pairing_residual, 0.0, 1e-12 * (1 + self.carre.norm()))
        return rep


def claim1_report(f: AntiTensor) -> Claim1Report:
    q = f.degree
    kernel_parity(f)
    F = CliffordElement.J(f)
    DF = derivative(F)
    carre = process_square(DF)
    pairing = process_square(DF, derivative(inv_number(F)))
    quantity = carre.scale(1.0 / q)
    mean = state_m(quantity)
    dist = (quantity - CliffordElement.constant(f.grid, mean)).norm()
    admissible = {r: math.sqrt(self_contraction_norm_sq(f, r)) for r in range(1, q) if (q + r) % 2 == 0}
    return Claim1Report(
        q=q, quantity_i=quantity, carre=carre, distance_to_constant=dist,
        variance_closed_form=variance_closed_form(f), variance_direct=variance(carre),
        contraction_norms=admissible, pairing_residual=(pairing - quantity).norm(),
    )


@dataclass
class Claim2Report:
    K: float
    K_lemma: float
    contraction2_norm: float
    slice3_integral: float
    slice3_expected: float
    oracle_m4: float

    def to_report(self, tol: float = 1e-12) -> Report:
        rep = Report()
        rep.quantities.update(
            K=self.K, K_lemma=self.K_lemma, contraction2_norm=self.contraction2_norm,
            slice3_integral=self.slice3_integral, slice3_expected=self.slice3_expected,
            oracle_m4=self.oracle_m4,
        )
        rep.check_close("||f ^_2 f||_4 = 0", self.contraction2_norm, 0.0, tol)
        rep.check_close("int ||f(t,.) ^_3 f||^2 dt = (3!)^2 4 / (4!)^4 prod ||f_i||^4",
                        self.slice3_integral, self.slice3_expected, tol * (1 + self.slice3_expected))
        rep.check_true("K(F) != 0", abs(self.K) > 1e-9, self.K, 0.0)
        rep.check_close("K from definition vs lemma", self.K, self.K_lemma, 1e-9 * (1 + abs(self.K)))
        return rep


def claim2_witness(f1: AntiTensor, f2: AntiTensor, f3: AntiTensor, f4: AntiTensor, tol: float = 1e-12) -> Claim2Report:
    fs = [f1, f2, f3, f4]
    for g in fs:
        if g.degree != 1:
            raise DegreeMismatchError("claim2_witness takes degree-1 tensors")
    if fs[0].grid.slots < 4:
        raise ValueError("claim2_witness needs at least 4 slots")
    norms = [plain_l2_norm(g) for g in fs]
    if min(norms) <= tol:
        raise ValueError("all f_i must be nonzero")
    for i in range(4):
        for j in range(i + 1, 4):
            if abs(inner(fs[i], fs[j])) > tol * (1 + norms[i] * norms[j]):
                raise ValueError(f"f_{i + 1} and f_{j + 1} are not orthogonal")
    f = wedge(wedge(wedge(f1, f2), f3), f4)
    rep = fourth_moment(f)
    expected = math.factorial(3) ** 2 * 4 / math.factorial(4) ** 4 * float(np.prod(np.array(norms) ** 4))
    return Claim2Report(
        K=rep.K_definition, K_lemma=rep.K,
        contraction2_norm=math.sqrt(self_contraction_norm_sq(f, 2)),
        slice3_integral=rep.slice_integrals[3], slice3_expected=expected,
        oracle_m4=rep.oracle_m4,
    )
