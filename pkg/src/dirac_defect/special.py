"""Numerical kernels: Laguerre polynomials, log-gamma, half-line quadrature, expm."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.linalg
from scipy.integrate import IntegrationWarning, quad

MAX_EXPM_DIM = 256


class QuadratureError(RuntimeError):
    """Adaptive quadrature ran out of subdivisions before reaching tolerance."""


def _check_alpha(a: float) -> None:
    if not a > -1.0:
        raise ValueError(f"Laguerre parameter must exceed -1, got {a!r}")


def laguerre(n: int, a: float, x):
    """Generalized Laguerre polynomial L_n^a(x) by upward three-term recurrence.

    ``x`` may be a scalar or an array; the result has the same shape.
    """
    _check_alpha(a)
    if n < 0:
        raise ValueError(f"degree must be nonnegative, got {n!r}")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 + a - x
    for j in range(1, n):
        prev, cur = cur, ((2 * j + 1 + a - x) * cur - (j + a) * prev) / (j + 1)
    return cur if cur.ndim else float(cur)


def laguerre_derivative(n: int, a: float, x):
    """d/dx L_n^a(x) = -L_{n-1}^{a+1}(x)."""
    _check_alpha(a)
    if n == 0:
        z = np.zeros_like(np.asarray(x, dtype=float))
        return z if z.ndim else 0.0
    return -laguerre(n - 1, a + 1.0, x)


def laguerre_generating_closed(a: float, y: complex, x: float) -> complex:
    """Closed form of sum_n L_n^a(x) y^n = exp(-x y / (1 - y)) / (1 - y)^(a + 1)."""
    _check_alpha(a)
    y = complex(y)
    if abs(y) >= 1.0:
        raise ValueError(f"generating function needs |y| < 1, got |y| = {abs(y)}")
    one_minus = 1.0 - y
    return complex(np.exp(-x * y / one_minus - (a + 1.0) * np.log(one_minus)))


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if not x > 0:
        raise ValueError(f"log_gamma is defined here for x > 0, got {x!r}")
    return math.lgamma(x)


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_subdivisions: int = 2**20
    max_tail_doublings: int = 40

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be positive")

    def cutoff(self, scale: float = 1.0) -> float:
        """First truncation radius R with exp(-scale R^2) <= abs_tol.

        Polynomial prefactors push mass further out; ``integrate_halfline``
        keeps doubling R until the added piece is negligible.
        """
        if scale <= 0:
            raise ValueError("scale must be positive")
        return math.sqrt(math.log(1.0 / self.abs_tol) / scale)


def _quad_piece(f, lo, hi, spec):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        out = quad(f, lo, hi, epsabs=spec.abs_tol, epsrel=spec.rel_tol,
                   limit=spec.max_subdivisions, full_output=1)
    if len(out) > 3:
        value, err, info, msg = out
        if info.get("last", 0) >= spec.max_subdivisions or "maximum number of subdivisions" in msg:
            raise QuadratureError(f"no convergence on [{lo}, {hi}]: {msg.strip()}")
        # roundoff-limited messages are tolerated when the error estimate is acceptable
        if err > max(spec.rel_tol * abs(value), spec.abs_tol) * 100:
            raise QuadratureError(f"no convergence on [{lo}, {hi}] (err={err:.3g}): {msg.strip()}")
    return out[0]


def integrate_halfline(f: Callable[[float], float], spec: QuadratureSpec | None = None,
                       scale: float = 1.0) -> float:
    """Integrate ``f`` over [0, inf) for integrands with Gaussian-times-polynomial decay.

    ``scale`` is the Gaussian exponent coefficient (m*omega for radial
    integrands in rho); it only sets the first cutoff.
    """
    spec = spec or QuadratureSpec()
    hi = spec.cutoff(scale)
    total = _quad_piece(f, 0.0, hi, spec)
    for _ in range(spec.max_tail_doublings):
        piece = _quad_piece(f, hi, 2.0 * hi, spec)
        total += piece
        hi *= 2.0
        if abs(piece) <= 0.1 * max(spec.abs_tol, spec.rel_tol * abs(total)):
            return total
    raise QuadratureError(f"integrand tail not negligible at rho = {hi}")


def matrix_exp(a) -> np.ndarray:
    """Dense matrix exponential (Pade scaling and squaring)."""
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] > MAX_EXPM_DIM:
        raise ValueError(f"matrix dimension {a.shape[0]} exceeds cap {MAX_EXPM_DIM}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return scipy.linalg.expm(a)
