"""Truncated discrete-series representations of su(1,1) and displacement operators.

Basis states |k, n>, n = 0 .. N-1.  Matrices act on column vectors, so
``Kp[n + 1, n]`` is the amplitude of K+ |k, n> on |k, n + 1>.

Generators are stored in extended precision (``np.longdouble``): with float64
entries sqrt((n+1)(2k+n)) squares back to (n+1)(2k+n) only to ~eps * N^2,
which at N = 128 already exceeds 1e-12.  Displacement operators are built
from float64 copies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .special import log_gamma, matrix_exp

_EPS = np.finfo(float).eps
DISPLACEMENT_TOL = 1e-8


class TruncationError(ValueError):
    """The truncated matrix cannot represent the requested operator to tolerance."""


@dataclass(frozen=True)
class Su11Rep:
    k: float
    dim: int
    K0: np.ndarray = field(repr=False)
    Kp: np.ndarray = field(repr=False)
    Km: np.ndarray = field(repr=False)


def build_rep(k: float, dim: int) -> Su11Rep:
    if k < 0.5:
        raise ValueError(f"discrete series needs k >= 1/2, got {k!r}")
    if dim < 2:
        raise ValueError(f"dimension must be at least 2, got {dim!r}")
    n = np.arange(dim, dtype=np.longdouble)
    kl = np.longdouble(k)
    k0 = np.diag(kl + n)
    kp = np.zeros((dim, dim), dtype=np.longdouble)
    kp[np.arange(1, dim), np.arange(dim - 1)] = np.sqrt((n[:-1] + 1) * (2 * kl + n[:-1]))
    km = kp.T.copy()
    for m in (k0, kp, km):
        m.setflags(write=False)
    return Su11Rep(k=float(k), dim=dim, K0=k0, Kp=kp, Km=km)


def _comm(a, b):
    return a @ b - b @ a


def commutator_residuals(rep: Su11Rep) -> tuple[float, float]:
    """Max-norm residuals of [K0, K+-] -+ K+- and [K-, K+] - 2 K0.

    Only the leading (N-1) x (N-1) block is compared; the last row and
    column carry the truncation artifact.
    """
    s = rep.dim - 1
    r_plus = _comm(rep.K0, rep.Kp) - rep.Kp
    r_minus = _comm(rep.K0, rep.Km) + rep.Km
    r1 = max(np.abs(r_plus[:s, :s]).max(), np.abs(r_minus[:s, :s]).max())
    r2 = np.abs((_comm(rep.Km, rep.Kp) - 2 * rep.K0)[:s, :s]).max()
    return float(r1), float(r2)


def casimir_matrix(rep: Su11Rep) -> np.ndarray:
    """C^2 = -K+ K- + K0 (K0 - 1)."""
    return -rep.Kp @ rep.Km + rep.K0 @ (rep.K0 - np.eye(rep.dim, dtype=rep.K0.dtype))


def casimir_eigenvalue_check(rep: Su11Rep, expected: float | None = None) -> float:
    """Largest deviation of C^2 from ``expected`` * identity on the interior block.

    ``expected`` defaults to k(k - 1).  Off-diagonal entries count as deviations.
    """
    if expected is None:
        expected = rep.k * (rep.k - 1)
    s = rep.dim - 1
    c = casimir_matrix(rep)[:s, :s]
    return float(np.abs(c - np.longdouble(expected) * np.eye(s, dtype=c.dtype)).max())


@dataclass(frozen=True)
class CoherentParam:
    """Displacement parameter xi, with its normal-form images zeta and eta."""

    xi: complex

    def __post_init__(self):
        object.__setattr__(self, "xi", complex(self.xi))
        if not abs(self.xi) < 1.0:
            raise ValueError(f"|xi| must be < 1, got {abs(self.xi)}")

    @property
    def zeta(self) -> complex:
        r = abs(self.xi)
        if r == 0.0:
            return 0j
        return math.tanh(r) * self.xi / r

    @property
    def eta(self) -> float:
        return math.log1p(-abs(self.zeta) ** 2)

    @property
    def eta_cosh(self) -> float:
        """Equivalent form -2 ln cosh|xi|."""
        return -2.0 * math.log(math.cosh(abs(self.xi)))


def buffer_size(dim: int, xi_abs: float) -> int:
    """Trailing basis states treated as contaminated by truncation of exp(xi K+ - xi* K-).

    Fitted against doubled-dimension references; amplitude leaking from
    the cut edge spreads roughly linearly in N|xi| plus a sqrt(N) front.
    """
    if xi_abs == 0.0:
        return 0
    return math.ceil(6.0 + math.sqrt(dim) + 0.8 * xi_abs * dim)


def reliable_size(rep: Su11Rep, p: CoherentParam) -> int:
    """Size s of the leading s x s block where displacement matrices are trusted."""
    s = rep.dim - buffer_size(rep.dim, abs(p.xi))
    if s < 1:
        raise TruncationError(
            f"dim={rep.dim} too small for |xi|={abs(p.xi):.3g}; increase the dimension")
    return s


def displacement_direct(rep: Su11Rep, p: CoherentParam, check: bool = True) -> np.ndarray:
    """D(xi) = exp(xi K+ - xi* K-) by dense matrix exponential.

    With ``check`` the buffer policy is enforced (TruncationError when no
    leading block survives) and the trusted columns are confirmed unit-norm.
    """
    kp, km = _f64(rep.Kp), _f64(rep.Km)
    d = matrix_exp(p.xi * kp - np.conj(p.xi) * km)
    if check:
        s = reliable_size(rep, p)
        norms = np.linalg.norm(d[:, :s], axis=0)
        if np.abs(norms - 1.0).max() > DISPLACEMENT_TOL:
            raise TruncationError("displacement lost unitarity on the trusted columns")
    return d


def _f64(m: np.ndarray) -> np.ndarray:
    return np.asarray(m, dtype=float)


def _nilpotent_exp(a: np.ndarray) -> np.ndarray:
    # exact for strictly triangular a: the series stops after dim terms
    out = np.eye(a.shape[0], dtype=complex)
    term = out.copy()
    for p in range(1, a.shape[0]):
        term = term @ a / p
        if not term.any():
            break
        out += term
    return out


def bch_factors(rep: Su11Rep, p: CoherentParam):
    """(exp(zeta K+), diag of exp(eta K0), exp(-zeta* K-))."""
    zeta = p.zeta
    left = _nilpotent_exp(zeta * _f64(rep.Kp))
    middle = np.exp(p.eta * np.diag(_f64(rep.K0)))
    right = _nilpotent_exp(-np.conj(zeta) * _f64(rep.Km))
    return left, middle, right


def displacement_bch(rep: Su11Rep, p: CoherentParam, check: bool = True) -> np.ndarray:
    """D(xi) = exp(zeta K+) exp(eta K0) exp(-zeta* K-) from the normal form.

    Entry (i, j) only involves basis states up to min(i, j), so truncation
    is exact here; the limiting error is cancellation in the triple product,
    which ``check`` bounds on the trusted block.
    """
    left, middle, right = bch_factors(rep, p)
    d = (left * middle) @ right
    if check:
        s = reliable_size(rep, p)
        scale = (np.abs(left[:s, :s]) * middle[:s]) @ np.abs(right[:s, :s])
        if 4 * _EPS * scale.max() > DISPLACEMENT_TOL:
            raise TruncationError(
                f"cancellation in the normal-ordered product exceeds {DISPLACEMENT_TOL:g}; "
                "reduce the dimension or |xi|")
    return d


def perelomov_coefficients(k: float, xi: complex, n_max: int) -> np.ndarray:
    """c_n = (1 - |xi|^2)^k sqrt(Gamma(n + 2k) / (n! Gamma(2k))) xi^n, n = 0 .. n_max."""
    xi = complex(xi)
    r = abs(xi)
    if r >= 1.0:
        raise ValueError(f"|xi| must be < 1, got {r}")
    if k < 0.5:
        raise ValueError(f"k must be >= 1/2, got {k!r}")
    c = np.zeros(n_max + 1, dtype=complex)
    if r == 0.0:
        c[0] = 1.0
        return c
    base = k * math.log1p(-r * r) - 0.5 * log_gamma(2 * k)
    phase = xi / r
    for n in range(n_max + 1):
        log_mag = base + 0.5 * (log_gamma(n + 2 * k) - log_gamma(n + 1)) + n * math.log(r)
        c[n] = math.exp(log_mag) * phase**n
    return c


def perelomov_cutoff(k: float, xi_abs: float, tail_tol: float) -> int:
    """Smallest n_max with sum_{n > n_max} |c_n|^2 below ``tail_tol``.

    Uses that |c_{n+1}/c_n|^2 = |xi|^2 (2k + n)/(n + 1) decreases in n, so the
    tail is bounded by a geometric series.
    """
    if xi_abs == 0.0:
        return 0
    r2 = xi_abs * xi_abs
    log_c2 = 2 * k * math.log1p(-r2)  # n = 0
    n = 0
    while True:
        ratio = r2 * (2 * k + n) / (n + 1)
        if ratio == 0.0:  # |xi|^2 underflowed: the tail is exactly zero in floating point
            return n
        log_next = log_c2 + math.log(ratio)
        nxt_ratio = r2 * (2 * k + n + 1) / (n + 2)
        if ratio < 1 and nxt_ratio < 1 and log_next - math.log1p(-nxt_ratio) < math.log(tail_tol):
            return n
        log_c2 = log_next
        n += 1
