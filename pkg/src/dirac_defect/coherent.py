"""Perelomov radial coherent states in configuration space and their time evolution.

Here ``xi`` is the point of the unit disk labelling the state
|xi> = sum_n c_n(xi) |k, n>; for a state built as D(xi')|k, 0> it equals
``CoherentParam(xi').zeta``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .radial import Form, SturmianMode
from .special import log_gamma
from .su11 import CoherentParam, perelomov_coefficients, perelomov_cutoff

MAX_SERIES_TERMS = 100_000
_CONSECUTIVE_SMALL = 5
# largest tolerated ratio max|term| / |sum| before re-summing in extended precision
_CANCELLATION_LIMIT = 1e4


class SeriesConvergenceError(RuntimeError):
    pass


def _check_disk(xi: complex) -> complex:
    xi = complex(xi)
    if not abs(xi) < 1.0:
        raise ValueError(f"coherent states need |xi| < 1, got {abs(xi)}")
    return xi


def coherent_closed(xi: complex, k: float, m_omega: float, rho):
    """chi(rho, xi) from the Laguerre generating function.

    sqrt(2 (1-|xi|^2)^{2k} (m w)^{2k} / Gamma(2k)) rho^{2k-1}
        * exp((m w rho^2 / 2)(xi + 1)/(xi - 1)) / (1 - xi)^{2k}
    """
    xi = _check_disk(xi)
    rho = np.asarray(rho, dtype=float)
    log_amp = 0.5 * (math.log(2.0) + 2 * k * math.log1p(-abs(xi) ** 2)
                     + 2 * k * math.log(m_omega) - log_gamma(2 * k))
    x = m_omega * rho * rho
    expo = (log_amp + (2 * k - 1) * np.log(rho) + 0.5 * x * (xi + 1) / (xi - 1)
            - 2 * k * cmath.log(1 - xi))
    val = np.exp(expo)
    return val if val.ndim else complex(val)


def _series(xi: complex, k: float, m_omega: float, rho: float, tail_tol: float):
    """(sum, terms used); re-sums with mpmath when float64 cancellation is severe."""
    xi = _check_disk(xi)
    mode = SturmianMode(0, k, m_omega, Form.CHI)
    # chi_n(rho) = N_n exp(base) L_n(x)
    base = -0.5 * m_omega * rho * rho + mode.power * math.log(rho)
    if xi == 0:
        return complex(math.exp(mode.log_norm + base)), 1
    total, terms, biggest = _accumulate(xi, k, m_omega, rho, tail_tol, _Float64Ops(base))
    if total != 0 and biggest / abs(total) <= _CANCELLATION_LIMIT:
        return total, terms
    digits = 20 + max(0, int(math.log10(biggest / abs(total)))) if total != 0 else 60
    while True:
        with mpmath.workdps(digits):
            total, terms, biggest = _accumulate(xi, k, m_omega, rho, tail_tol, _MpOps(base))
            if total != 0 and mpmath.log10(biggest / abs(total)) < digits - 20:
                return complex(total), terms
        digits *= 2


class _Float64Ops:
    def __init__(self, base):
        self.base = base
        self.num = float
        self.cnum = complex
        self.sqrt = math.sqrt
        self.exp = math.exp
        self.lgamma = log_gamma
        self.log = math.log


class _MpOps:
    def __init__(self, base):
        self.base = mpmath.mpf(base)
        self.num = mpmath.mpf
        self.cnum = mpmath.mpc
        self.sqrt = mpmath.sqrt
        self.exp = mpmath.exp
        self.lgamma = mpmath.loggamma
        self.log = mpmath.log


def _accumulate(xi, k, m_omega, rho, tail_tol, ops):
    num = ops.num
    k2 = 2 * num(k)
    a = k2 - 1
    x = num(m_omega) * num(rho) ** 2
    xi = ops.cnum(xi)
    r2 = abs(xi) ** 2
    c = ops.exp(num(k) * ops.log(1 - r2))  # c_0
    # chi_0 prefactor; chi_n / chi_{n-1} normalization ratio is sqrt(n / (2k + n - 1))
    norm = ops.exp((ops.log(num(2)) + k2 * ops.log(num(m_omega)) - ops.lgamma(k2)) / 2
                   + ops.base)
    lag_prev, lag = num(0), num(1)
    total = ops.cnum(0)
    biggest = num(0)
    small = 0
    for n in range(MAX_SERIES_TERMS):
        if n > 0:
            c *= xi * ops.sqrt((k2 + n - 1) / n)
            norm *= ops.sqrt(n / (k2 + n - 1))
            lag_prev, lag = lag, ((2 * n - 1 + a - x) * lag - (n - 1 + a) * lag_prev) / n
        term = c * norm * lag
        total += term
        biggest = max(biggest, abs(term))
        if abs(term) < tail_tol * abs(total):
            small += 1
            if small >= _CONSECUTIVE_SMALL:
                return total, n + 1, biggest
        else:
            small = 0
    raise SeriesConvergenceError(f"coherent series not converged after {MAX_SERIES_TERMS} terms")


def coherent_series(xi: complex, k: float, m_omega: float, rho: float,
                    tail_tol: float = 1e-16) -> complex:
    """sum_n c_n(xi) chi_n(rho), stopped after 5 consecutive negligible terms."""
    return _series(xi, k, m_omega, float(rho), tail_tol)[0]


def series_term_count(xi: complex, k: float, m_omega: float, rho: float,
                      tail_tol: float = 1e-16) -> int:
    return _series(xi, k, m_omega, float(rho), tail_tol)[1]


@dataclass(frozen=True)
class EvolvedCoherentState:
    xi: complex
    k: float
    m_omega: float
    tau: float = 0.0
    hbar: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "xi", _check_disk(self.xi))

    @classmethod
    def from_param(cls, base: CoherentParam, k: float, m_omega: float, tau: float = 0.0,
                   hbar: float = 1.0) -> "EvolvedCoherentState":
        """State D(xi)|k, 0> for a displacement parameter, evolved to ``tau``."""
        return cls(base.zeta, k, m_omega, tau, hbar)

    @property
    def angle(self) -> float:
        return 4.0 * self.m_omega * self.tau / self.hbar

    @property
    def xi_tau(self) -> complex:
        return self.xi * cmath.exp(-1j * self.angle)

    @property
    def global_phase(self) -> complex:
        return cmath.exp(-1j * self.angle * self.k)

    @property
    def period(self) -> float:
        """Period of |chi| in tau."""
        return math.pi * self.hbar / (2.0 * self.m_omega)

    def at(self, tau: float) -> "EvolvedCoherentState":
        return EvolvedCoherentState(self.xi, self.k, self.m_omega, tau, self.hbar)


def coherent_evolved(state: EvolvedCoherentState, rho):
    if state.tau == 0.0:
        return coherent_closed(state.xi, state.k, state.m_omega, rho)
    return state.global_phase * coherent_closed(state.xi_tau, state.k, state.m_omega, rho)


def coherent_overlap(xi1: complex, xi2: complex, k: float, tail_tol: float = 1e-18) -> complex:
    """<xi1|xi2> = sum_n conj(c_n(xi1)) c_n(xi2), summed to a bounded tail."""
    xi1, xi2 = _check_disk(xi1), _check_disk(xi2)
    n_max = max(perelomov_cutoff(k, abs(xi1), tail_tol), perelomov_cutoff(k, abs(xi2), tail_tol))
    c1 = perelomov_coefficients(k, xi1, n_max)
    c2 = perelomov_coefficients(k, xi2, n_max)
    return complex(np.vdot(c1, c2))
