"""Verification suites run by ``clifford-malliavin verify``.

Each suite draws from its own seeded generator, so selecting a subset of suites does not
change the residuals of the others. Random grids have between one and ``slots`` slots, all
of the configured width; anything that goes through the matrix oracle is further capped at
the oracle dimension limit.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import checks
from .antisym import AntiTensor
from .grid import TimeGrid
from .oracle import max_dim
from .report import Report

SUITES = ("algebra", "malliavin", "ito", "oracle", "applications")


@dataclass(frozen=True)
class SuiteConfig:
    slots: int = 6
    width: float = 1.0
    seed: int = 42
    tol: float = 1e-10
    suites: tuple[str, ...] = SUITES
    cases: int = 20

    def __post_init__(self):
        if self.slots < 1:
            raise ValueError("slots must be at least 1")
        if not self.width > 0:
            raise ValueError("width must be positive")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.cases < 1:
            raise ValueError("cases must be at least 1")
        bad = [s for s in self.suites if s not in SUITES]
        if bad or not self.suites:
            raise ValueError(f"unknown suite selector {bad or self.suites!r}; choose from {', '.join(SUITES)}")

    @property
    def oracle_slots(self) -> int:
        return min(self.slots, max_dim())

    def rng(self, suite: str) -> np.random.Generator:
        return np.random.default_rng([self.seed, SUITES.index(suite)])


def _algebra(cfg: SuiteConfig, rep: Report) -> None:
    rng, n, d, w = cfg.rng("algebra"), cfg.cases, cfg.slots, (cfg.width,)
    grid = TimeGrid(d, cfg.width)
    rep.check_le("contraction: coefficient tables vs dense reference", checks.contraction_equivalence(rng, n, d, 4, w), cfg.tol)
    rep.check_le("contraction: f ^_r g = (-1)^{pq+r} g ^_r f", checks.wedge_symmetry(rng, n, d, 4, w), cfg.tol)
    rep.check_le("contraction: slice integral identity", checks.wedge_slice_identity(rng, n, min(d, 5), 4, w), cfg.tol)
    rep.check_le("product formula: term-by-term vs dense reference", checks.product_formula_terms(rng, max(1, n // 4), min(d, 6), 3, w), cfg.tol)
    rep.check_le("multiply: associativity", checks.associativity(rng, n, d, 3, w), cfg.tol)
    rep.check_le("CAR: {Psi(e_i), Psi(e_j)} = 2 delta_ij", checks.field_car(grid), cfg.tol)
    rep.check_le("CAR: {Psi(z), Psi(z')} = 2 <z, z'> for real z", checks.real_field_car(rng, n, d, w), cfg.tol)
    rep.check_le("state: m(FG) = m(GF)", checks.trace_property(rng, n, d, 3, w), cfg.tol)
    rep.check_le("beta: graded automorphism", checks.beta_automorphism(rng, n, d, 3, w), cfg.tol)
    rep.check_le("state: <F, G> = m(F^* G)", checks.inner_vs_state(rng, n, d, 3, w), cfg.tol)
    rep.check_le("conditional expectation: module and tower properties", checks.conditional_expectation(rng, n, d, 3, w), cfg.tol)
    for q in (2, 3, 4):
        if q <= d:
            res, odd = checks.antisym_norm_lemma(rng, q, max(1, n // 4), d, cfg.width)
            rep.check_le(f"norm lemma q={q}: ||f ^_r f||^2 = (1+(-1)^(q+r))/2 int ||f(t,.) ^_r f||^2", res, cfg.tol)
            rep.check_le(f"norm lemma q={q}: ||f ^_r f|| = 0 for odd q+r", odd, cfg.tol)


def _malliavin(cfg: SuiteConfig, rep: Report) -> None:
    rng, n, d, w = cfg.rng("malliavin"), cfg.cases, cfg.slots, (cfg.width,)
    rep.check_le("|<DF, u> - <F, delta u>|", checks.adjointness(rng, n, d, 4, w), cfg.tol)
    rep.check_le("{D_k, delta(e_j x .)} = width^(-1/2) delta_jk", checks.derivative_divergence_car(rng, n, d, 4, w), cfg.tol)
    rep.check_le("graded Leibniz rule", checks.graded_leibniz(rng, n, d, 3, w), cfg.tol)
    rep.check_le("integration by parts", checks.integration_by_parts(rng, n, d, 3, w), cfg.tol)
    rep.check_le("D_s D_t = -D_t D_s", checks.derivatives_anticommute(rng, n, d, 4, w), cfg.tol)
    rep.check_le("D_t m(F | C_A) = m(D_t F | C_A) 1_A(t)", checks.conditional_commutation(rng, n, d, 4, w), cfg.tol)
    rep.check_le("delta D = R and R R^-1 = Id", checks.number_operator_check(rng, n, d, w), cfg.tol)


def _ito(cfg: SuiteConfig, rep: Report) -> None:
    rng, n, d, w = cfg.rng("ito"), cfg.cases, cfg.slots, (cfg.width,)
    res, adapted = checks.clark_ocone_residual(rng, n, d, 4, w)
    rep.check_le("Clark-Ocone: ||F - m(F) - int dPsi u||", res, cfg.tol)
    rep.check_true("Clark-Ocone: integrand adapted", adapted)
    res_d, res_i = checks.ito_vs_divergence(rng, n, d, 3, w)
    rep.check_le("delta(u) = Ito-Clifford integral for adapted u", res_d, cfg.tol)
    rep.check_le("Ito isometry", res_i, cfg.tol)
    rep.check_le("Ito increments orthogonal", checks.increments_orthogonal(rng, n, d, 3, w), cfg.tol)
    rep.check_le("delta(1_A F) = Psi(1_A) F for F in C_(A^c)", checks.delta_indicator(rng, n, d, 3, w), cfg.tol)


def _oracle(cfg: SuiteConfig, rep: Report) -> None:
    rng, n, d, w = cfg.rng("oracle"), cfg.cases, cfg.oracle_slots, (cfg.width,)
    grid = TimeGrid(d, cfg.width)
    rep.check_le("homomorphism and adjoint", checks.homomorphism(rng, 10 * n, d, 3, cfg.width), cfg.tol)
    rep.check_le("round trip, vacuum norm and state", checks.oracle_roundtrip(rng, n, d, d, w), cfg.tol)
    rep.check_le("{Psi_i, Psi_j} = 2 delta_ij I", checks.matrix_car(grid), cfg.tol)


def _applications(cfg: SuiteConfig, rep: Report) -> None:
    from .applications import (
        characteristic_distance,
        claim1_report,
        claim2_witness,
        concentration_tail,
        fourth_moment,
        log_sobolev_check,
    )
    from .sampling import random_self_adjoint, random_tensor, self_adjoint_kernel

    rng, n, d = cfg.rng("applications"), cfg.cases, cfg.oracle_slots
    grid = TimeGrid(d, cfg.width)
    for q in (2, 3, 4):
        if q <= d:
            gaps = checks.fourth_moment_consistency(rng, q, max(1, n // 2), d, cfg.width)
            rep.check_le(f"fourth moment q={q}: formula vs oracle", gaps["worst"], 1e-9)
    for _ in range(max(1, n // 4)):
        z = random_tensor(grid, 1, rng, complex_=False, unit=True)
        rep.check_le("K(Psi(z)) = 0", abs(fourth_moment(z).K_definition), cfg.tol)
    if d >= 3:
        f = self_adjoint_kernel(grid, 3, rng)
        c1 = claim1_report(f)
        rep.extend(c1.to_report(), "claim1 q=3: ")
    if d >= 4:
        e = [AntiTensor.basis(grid, k) for k in range(1, 5)]
        rep.extend(claim2_witness(*e).to_report(), "claim2: ")
    rep.check_le("two_point vs functional calculus", checks.two_point_calculus(rng, n, d, (cfg.width,)), cfg.tol)
    for _ in range(max(1, n // 2)):
        phi = rng.uniform(-2, 2, 2)
        rep.extend(log_sobolev_check(phi[0], phi[1]).to_report(), "log-Sobolev: ")
    csd = min(d, 4)
    cgrid = TimeGrid(csd, cfg.width)
    for _ in range(max(1, n // 4)):
        F = random_self_adjoint(cgrid, 3, rng, centred=True)
        for t in (0.5, 1.0, 2.0):
            z = random_tensor(cgrid, 1, rng, complex_=False, unit=True)
            rep.extend(characteristic_distance(F, z, t).to_report(), f"characteristic t={t}: ")
    for _ in range(max(1, n // 10)):
        F = random_self_adjoint(cgrid, 2, rng)
        cr = concentration_tail(F, xmax=1.0, xsteps=10, ssteps=100)
        if cr.monotone:
            rep.extend(cr.to_report(), "concentration: ")


_RUNNERS = {
    "algebra": _algebra,
    "malliavin": _malliavin,
    "ito": _ito,
    "oracle": _oracle,
    "applications": _applications,
}


def run_suite(config: SuiteConfig) -> Report:
    rep = Report(inputs={
        "grid": {"slots": config.slots, "width": config.width},
        "seed": config.seed,
        "tol": config.tol,
        "cases": config.cases,
        "suites": list(config.suites),
        "oracle_slots": config.oracle_slots,
    })
    for name in SUITES:
        if name in config.suites:
            sub = Report()
            _RUNNERS[name](config, sub)
            rep.extend(sub, f"{name}: ")
    failed = sum(not a.passed for a in rep.assertions)
    rep.quantities.update(assertions=len(rep.assertions), failed=failed)
    return rep
