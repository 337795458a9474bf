"""Sturmian radial functions in rho and analytic checks against the radial equation.

F_n(rho) = N e^{-x/2} rho^{2k-1/2} L_n^{2k-1}(x),  x = m omega rho^2,
N^2 = 2 n! (m omega)^{2k} / Gamma(n + 2k),  so that int F^2 drho = 1.
chi_n = F_n / sqrt(rho) is normalized with weight rho drho.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .defects import (
    DefectConfig,
    QuantumNumbers,
    bargmann_index,
    centrifugal_parameter,
    energy_squared,
    gamma_constant,
)
from .special import QuadratureSpec, integrate_halfline, laguerre, log_gamma

GRID_RHO_MIN = 0.05
_REL_FLOOR = 1e-6


class Form(enum.Enum):
    F = "F"  # F or G, normalized with drho
    CHI = "chi"  # F / sqrt(rho), normalized with rho drho


@dataclass(frozen=True)
class SturmianMode:
    n: int
    k: float
    m_omega: float
    form: Form = Form.F

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"n must be nonnegative, got {self.n!r}")
        if self.k < 0.5:
            raise ValueError(f"k must be >= 1/2, got {self.k!r}")
        if not self.m_omega > 0:
            raise ValueError(f"m_omega must be positive, got {self.m_omega!r}")

    @property
    def laguerre_order(self) -> float:
        return 2.0 * self.k - 1.0

    @property
    def log_norm(self) -> float:
        return 0.5 * (math.log(2.0) + log_gamma(self.n + 1) + 2.0 * self.k * math.log(self.m_omega)
                      - log_gamma(self.n + 2.0 * self.k))

    @property
    def power(self) -> float:
        return 2.0 * self.k - (0.5 if self.form is Form.F else 1.0)

    def with_n(self, n: int) -> "SturmianMode":
        return SturmianMode(n, self.k, self.m_omega, self.form)


def mode_for(cfg: DefectConfig, qn: QuantumNumbers, form: Form = Form.F) -> SturmianMode:
    """Radial eigenmode of the given spinor component (G uses the swapped parameter)."""
    k = bargmann_index(centrifugal_parameter(cfg, qn))
    return SturmianMode(qn.n_r, k, cfg.m_omega, form)


def sturmian_eval(mode: SturmianMode, rho):
    """F_n(rho) or chi_n(rho); positive as rho -> 0+."""
    rho = np.asarray(rho, dtype=float)
    x = mode.m_omega * rho * rho
    val = np.exp(mode.log_norm - 0.5 * x + mode.power * np.log(rho)) * laguerre(
        mode.n, mode.laguerre_order, x)
    return val if val.ndim else float(val)


def _f_and_derivatives(mode: SturmianMode, rho):
    """F, F', F'' of the F-form function, all analytic."""
    rho = np.asarray(rho, dtype=float)
    mw = mode.m_omega
    a = mode.laguerre_order
    n = mode.n
    p = 2.0 * mode.k - 0.5
    x = mw * rho * rho
    pe = np.exp(mode.log_norm - 0.5 * x + p * np.log(rho))
    lag = laguerre(n, a, x)
    d1 = -laguerre(n - 1, a + 1.0, x) if n >= 1 else np.zeros_like(x)
    d2 = laguerre(n - 2, a + 2.0, x) if n >= 2 else np.zeros_like(x)
    h = p / rho - mw * rho
    dh = -p / rho**2 - mw
    f = pe * lag
    f1 = pe * (h * lag + 2.0 * mw * rho * d1)
    f2 = pe * ((h * h + dh) * lag + (4.0 * mw * rho * h + 2.0 * mw) * d1
               + 4.0 * mw * mw * rho * rho * d2)
    return f, f1, f2


def default_grid(mode: SturmianMode, points: int = 200) -> np.ndarray:
    """Geometric grid on [0.05, R] with R from the Gaussian tail rule."""
    r_max = QuadratureSpec().cutoff(mode.m_omega)
    return np.geomspace(GRID_RHO_MIN, r_max, points)


def overlap(a: SturmianMode, b: SturmianMode, spec: QuadratureSpec | None = None) -> float:
    if (a.k, a.m_omega, a.form) != (b.k, b.m_omega, b.form):
        raise ValueError("overlap needs modes with equal k, m_omega and form")
    if a.form is Form.F:
        def integrand(r):
            return sturmian_eval(a, r) * sturmian_eval(b, r)
    else:
        def integrand(r):
            return sturmian_eval(a, r) * sturmian_eval(b, r) * r
    return integrate_halfline(integrand, spec, scale=a.m_omega)


def ode_residual(mode: SturmianMode, cfg: DefectConfig, qn: QuantumNumbers, rho_grid=None,
                 gamma: float | None = None) -> float:
    """Max relative residual of -rho^2 F'' + (m w)^2 rho^4 F - Gamma rho^2 F - (1/4 - Lambda^2) F.

    Gamma defaults to the value implied by the spectrum; pass ``gamma`` to
    probe a wrong level.  The residual at each point is scaled by
    max(|F|, 1e-6 max|F|).
    """
    if rho_grid is None:
        rho_grid = default_grid(mode)
    rho = np.asarray(rho_grid, dtype=float)
    if gamma is None:
        gamma = gamma_constant(cfg, qn, energy_squared(cfg, qn))
    lam = centrifugal_parameter(cfg, qn)
    mw = cfg.m_omega
    f, _, f2 = _f_and_derivatives(SturmianMode(mode.n, mode.k, mode.m_omega, Form.F), rho)
    r2 = rho * rho
    res = -r2 * f2 + mw * mw * r2 * r2 * f - gamma * r2 * f - (0.25 - lam * lam) * f
    floor = _REL_FLOOR * np.abs(f).max()
    return float((np.abs(res) / np.maximum(np.abs(f), floor)).max())


def _apply_d3(mode: SturmianMode, rho):
    f, f1, f2 = _f_and_derivatives(mode, rho)
    mw = mode.m_omega
    lam2 = mode.laguerre_order**2
    d3f = (-f2 + (lam2 - 0.25) / rho**2 * f + mw * mw * rho * rho * f) / (4.0 * mw)
    return f, f1, d3f


def d3_eigenvalue_check(mode: SturmianMode, rho_grid=None) -> float:
    """Max |(D3 F)/F - (n + k)| over grid points where |F| > 1e-6 max|F|."""
    if rho_grid is None:
        rho_grid = default_grid(mode)
    rho = np.asarray(rho_grid, dtype=float)
    f, _, d3f = _apply_d3(mode, rho)
    keep = np.abs(f) > _REL_FLOOR * np.abs(f).max()
    return float(np.abs(d3f[keep] / f[keep] - (mode.n + mode.k)).max())


def apply_ladder(mode: SturmianMode, rho, raising: bool):
    """(D+ F_n)(rho) or (D- F_n)(rho) with D+- = 1/2 [-+ rho d/drho + m w rho^2 -+ 1/2] - D3."""
    rho = np.asarray(rho, dtype=float)
    s = 1.0 if raising else -1.0
    f, f1, d3f = _apply_d3(mode, rho)
    return 0.5 * (-s * rho * f1 + mode.m_omega * rho * rho * f - s * 0.5 * f) - d3f


# Sign relating D+- F_n to the K+- matrix elements.  With F_n positive near the
# origin the raw projections come out negative, so D+- realizes -K+-.
LADDER_SIGN = -1.0


def ladder_action_check(mode: SturmianMode, spec: QuadratureSpec | None = None):
    """(<F_{n+1}|D+ F_n>, <F_{n-1}|D- F_n>) times LADDER_SIGN.

    For n = 0 the second entry is the L2 norm of D- F_0, which must vanish.
    """
    if mode.form is not Form.F:
        raise ValueError("ladder checks act on the F form")
    up = mode.with_n(mode.n + 1)
    coeff_up = integrate_halfline(
        lambda r: sturmian_eval(up, r) * apply_ladder(mode, r, True), spec, scale=mode.m_omega)
    if mode.n == 0:
        norm2 = integrate_halfline(lambda r: apply_ladder(mode, r, False) ** 2, spec,
                                   scale=mode.m_omega)
        return LADDER_SIGN * coeff_up, math.sqrt(max(norm2, 0.0))
    down = mode.with_n(mode.n - 1)
    coeff_down = integrate_halfline(
        lambda r: sturmian_eval(down, r) * apply_ladder(mode, r, False), spec,
        scale=mode.m_omega)
    return LADDER_SIGN * coeff_up, LADDER_SIGN * coeff_down
