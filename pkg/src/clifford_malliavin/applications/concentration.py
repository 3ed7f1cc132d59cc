"""Concentration of a self-adjoint element around its mean.

The tail ``m(E([m(F) + x, inf)))`` is bounded by ``exp(-int_0^x h^{-1}(s) ds)`` when

    h(s) = int ||D_t F||_inf ||e^{-sF} D_t e^{sF}||_inf dt

is monotone. Operator norms and ``e^{sF}`` come from the matrix oracle; ``D`` acts on
``e^{sF}`` after pulling it back to a chaos expansion.

Bounding ``h(s) <= B s e^{2 s ||F||}`` with ``B = int ||D_t F||_inf^2 dt`` and
``A = B / (2 ||F||)`` gives the closed form

    int_0^x k^{-1} = (x (W - 1 + 1/W) - A) / (2 ||F||),   W = W(x / A),

whose exponential is reported as the Lambert bound. The form without ``- A`` is
reported separately as ``lambert_bound_without_constant``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..chaos import CliffordElement, adjoint, state_m
from ..errors import NotSelfAdjointError
from ..malliavin import derivative
from ..oracle import from_matrix, operator_norm, spectral, to_matrix
from ..report import Report


def lambert_w(y: float, tol: float = 1e-12, max_iter: int = 100) -> float:
    """Principal branch ``W(y)`` for ``y >= 0`` by safeguarded Halley iteration."""
    y = float(y)
    if not y >= 0 or math.isnan(y):
        raise ValueError(f"lambert_w needs y >= 0, got {y}")
    if y == 0.0:
        return 0.0
    if math.isinf(y):
        return math.inf
    # starting point: log1p for small y, asymptotic expansion for large y
    if y < 3.0:
        w = math.log1p(y) * (1 - math.log1p(math.log1p(y)) / (2 + math.log1p(y)))
    else:
        L1 = math.log(y)
        L2 = math.log(L1)
        w = L1 - L2 + L2 / L1
    # W is increasing with W(e) = 1 and W(y) < log(y) beyond e
    lo, hi = 0.0, (1.0 if y <= math.e else math.log(y))
    for _ in range(max_iter):
        ew = math.exp(w)
        r = w * ew - y
        if r > 0:
            hi = min(hi, w)
        else:
            lo = max(lo, w)
        wp1 = w + 1.0
        step = r / (ew * wp1 - (w + 2.0) * r / (2.0 * wp1))
        w_new = w - step
        if not lo <= w_new <= hi:
            w_new = 0.5 * (lo + hi)
        if abs(w_new - w) <= tol * (1 + abs(w_new)):
            w = w_new
            break
        w = w_new
    return w


def _check_sa(F: CliffordElement, tol: float = 1e-10) -> None:
    if (adjoint(F) - F).norm() > tol * (1 + F.norm()):
        raise NotSelfAdjointError("concentration needs a self-adjoint element")


class HFunction:
    """Evaluator for ``h(s)`` with the eigendecomposition of ``F`` cached."""

    def __init__(self, F: CliffordElement):
        _check_sa(F)
        self.F = F
        self.grid = F.grid
        M = to_matrix(F).matrix
        self.norm_F = operator_norm(M)
        lam, V = np.linalg.eigh((M + M.conj().T) / 2)
        self.lam, self.V = lam, V
        DF = derivative(F)
        self.d_norms = np.array([operator_norm(to_matrix(c)) for c in DF.components])

    @property
    def B(self) -> float:
        """``int ||D_t F||_inf^2 dt``."""
        return float(self.grid.width * np.sum(self.d_norms ** 2))

    @property
    def A(self) -> float:
        return self.B / (2 * self.norm_F) if self.norm_F > 0 else math.inf

    def _exp(self, s: float) -> np.ndarray:
        return (self.V * np.exp(s * self.lam)) @ self.V.conj().T

    def __call__(self, s: float) -> float:
        if s == 0:
            return 0.0
        E = self._exp(s)
        E_inv = self._exp(-s)
        D = derivative(from_matrix(E, self.grid))
        live = np.nonzero(self.d_norms)[0]
        if live.size == 0:
            return 0.0
        stack = np.stack([E_inv @ to_matrix(D.components[k]).matrix for k in live])
        norms = np.linalg.svd(stack, compute_uv=False)[:, 0]
        return float(self.grid.width * np.dot(self.d_norms[live], norms))


def integrate_inverse(s: np.ndarray, h: np.ndarray, x: float) -> float:
    """``int_0^x h^{-1}`` for piecewise-linear monotone ``h`` sampled at ``s`` with ``h[0] = 0``."""
    if x <= 0:
        return 0.0
    if x > h[-1]:
        raise ValueError("x beyond the sampled range of h")
    hs = np.maximum.accumulate(h)
    # breakpoints of h^{-1} inside [0, x]
    inside = hs < x
    ys = np.concatenate([hs[inside], [x]])
    vals = np.interp(ys, hs, s)
    return float(np.trapezoid(vals, ys))


@dataclass
class ConcentrationReport:
    mean: float
    norm_F: float
    A: float
    x: np.ndarray
    tail: np.ndarray
    s: np.ndarray
    h: np.ndarray
    monotone: bool
    verdict: str
    h_bound: np.ndarray | None
    lambert_bound: np.ndarray | None
    lambert_bound_without_constant: np.ndarray | None
    spectrum: list = field(default_factory=list)
    interpolation_error: float | None = None

    def to_report(self, tol: float = 1e-12) -> Report:
        rep = Report(inputs={"x": self.x, "s_points": len(self.s)})
        rep.quantities.update(
            mean=self.mean, norm_F=self.norm_F, A=self.A, verdict=self.verdict,
            tail=self.tail, h_bound=self.h_bound, lambert_bound=self.lambert_bound,
            lambert_bound_without_constant=self.lambert_bound_without_constant,
            s=self.s, h=self.h, spectrum=self.spectrum, interpolation_error=self.interpolation_error,
        )
        rep.check_true("h monotone on the s-grid", self.monotone)
        if self.h_bound is not None:
            for x, t, b, lb in zip(self.x, self.tail, self.h_bound, self.lambert_bound):
                rep.check_le(f"tail <= exp(-int h^-1) at x={x:.6g}", float(t), float(b), tol)
                rep.check_le(f"tail <= Lambert bound at x={x:.6g}", float(t), float(lb), tol)
        return rep


def _interpolation_error(s: np.ndarray, h: np.ndarray, x: np.ndarray) -> float | None:
    """Largest change in ``int_0^x h^{-1}`` when every other ``s`` sample is dropped."""
    if len(s) < 5:
        return None
    coarse_s, coarse_h = s[::2], h[::2]
    gaps = [
        abs(integrate_inverse(s, h, xi) - integrate_inverse(coarse_s, coarse_h, xi))
        for xi in x
        if xi <= coarse_h[-1]
    ]
    return max(gaps, default=None)


def lambert_bounds(x: np.ndarray, A: float, norm_F: float) -> tuple[np.ndarray, np.ndarray]:
    """Corrected and constant-free Lambert bounds on a grid of ``x``."""
    full = np.ones_like(x, dtype=float)
    bare = np.ones_like(x, dtype=float)
    if not math.isfinite(A) or A <= 0:
        return full, bare
    for i, xi in enumerate(x):
        if xi <= 0:
            continue
        W = lambert_w(xi / A)
        core = xi * (W - 1 + 1 / W)
        full[i] = math.exp(-(core - A) / (2 * norm_F))
        bare[i] = math.exp(-core / (2 * norm_F))
    return full, bare


def concentration_tail(
    F: CliffordElement,
    x: np.ndarray | None = None,
    s: np.ndarray | None = None,
    xmax: float = 1.0,
    xsteps: int = 20,
    ssteps: int = 400,
    mono_tol: float = 1e-10,
) -> ConcentrationReport:
    hf = HFunction(F)
    mean = state_m(F).real
    x = np.linspace(0.0, xmax, xsteps) if x is None else np.asarray(x, dtype=float)
    xmax = float(np.max(x, initial=0.0))
    if s is None:
        s_max = 1.0
        while hf.B > 0 and hf(s_max) < xmax and s_max < 2.0 ** 20:
            s_max *= 2.0
        s = np.linspace(0.0, s_max, ssteps)
    s = np.asarray(s, dtype=float)
    h = np.array([hf(v) for v in s])
    spec = spectral(to_matrix(F))
    tail = np.array([spec.tail(mean + xi) for xi in x])
    monotone = bool(np.all(np.diff(h) >= -mono_tol * (1 + np.abs(h[1:]))))
    interp = None
    if hf.B == 0:
        verdict = "degenerate"
        h_bound = np.where(x > 0, 0.0, 1.0)
        lam_full = lam_bare = h_bound.copy()
    elif not monotone:
        return ConcentrationReport(mean, hf.norm_F, hf.A, x, tail, s, h, False, "hypothesis-failed",
                                   None, None, None, spec.pairs())
    else:
        verdict = "ok" if h[-1] >= xmax else "s-grid too short"
        h_bound = np.array([math.exp(-integrate_inverse(s, h, xi)) if xi <= h[-1] else np.nan for xi in x])
        lam_full, lam_bare = lambert_bounds(x, hf.A, hf.norm_F)
        interp = _interpolation_error(s, h, x)
    return ConcentrationReport(mean, hf.norm_F, hf.A, x, tail, s, h, monotone, verdict,
                               h_bound, lam_full, lam_bare, spec.pairs(), interp if hf.B else None)
