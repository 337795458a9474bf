"""Defect-dependent angular parameters, Bargmann index and energy spectrum."""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple


class DefectKind(enum.Enum):
    COSMIC_STRING = "string"
    MAGNETIC_COSMIC_STRING = "magnetic"
    COSMIC_DISLOCATION = "dislocation"


class Sign(enum.Enum):
    MINUS = -1
    PLUS = 1


class Component(enum.Enum):
    UPPER = "upper"  # chi / F: Lambda_- centrifugal term, Gamma_+
    LOWER = "lower"  # phi / G: Lambda_+ centrifugal term, Gamma_-


class BoundStateWarning(UserWarning):
    """E^2 came out negative: parameters are outside the bound-state regime."""


@dataclass(frozen=True)
class DefectConfig:
    kind: DefectKind = DefectKind.COSMIC_STRING
    alpha: float = 1.0
    mass: float = 1.0
    omega: float = 1.0
    flux_ratio: float = 0.0  # e Phi_B / 2 pi
    torsion: float = 0.0  # J^z
    hbar: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha!r}")
        for name in ("mass", "omega", "hbar"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)!r}")
        if self.kind is DefectKind.COSMIC_STRING and self.flux_ratio != 0.0:
            raise ValueError("flux_ratio must be 0 for a plain cosmic string")
        if self.kind is not DefectKind.COSMIC_DISLOCATION and self.torsion != 0.0:
            raise ValueError("torsion is only meaningful for a cosmic dislocation")

    @property
    def m_omega(self) -> float:
        return self.mass * self.omega


@dataclass(frozen=True)
class QuantumNumbers:
    n_r: int = 0
    l: int = 0
    k_z: float = 0.0
    component: Component = Component.UPPER

    def __post_init__(self):
        if self.n_r < 0:
            raise ValueError(f"n_r must be nonnegative, got {self.n_r!r}")


def angular_parameter(cfg: DefectConfig, qn: QuantumNumbers, sign: Sign) -> float:
    """Lambda, Theta or Pi (selected by ``cfg.kind``) with the given sign."""
    numerator = qn.l + 0.5
    if cfg.kind is not DefectKind.COSMIC_STRING:
        numerator += cfg.flux_ratio
    if cfg.kind is DefectKind.COSMIC_DISLOCATION:
        numerator -= qn.k_z * cfg.torsion
    return numerator / cfg.alpha + 0.5 * sign.value


def centrifugal_parameter(cfg: DefectConfig, qn: QuantumNumbers) -> float:
    """Parameter whose square multiplies 1/rho^2 for the chosen spinor component."""
    sign = Sign.MINUS if qn.component is Component.UPPER else Sign.PLUS
    return angular_parameter(cfg, qn, sign)


def coupling_parameter(cfg: DefectConfig, qn: QuantumNumbers) -> float:
    """The opposite-sign parameter entering Gamma for the chosen component."""
    sign = Sign.PLUS if qn.component is Component.UPPER else Sign.MINUS
    return angular_parameter(cfg, qn, sign)


def bargmann_index(lam: float) -> float:
    return 0.5 * abs(lam) + 0.5


def energy_squared(cfg: DefectConfig, qn: QuantumNumbers) -> float:
    """E^2 of the radial mode.  Warns with BoundStateWarning if negative."""
    lam_c = centrifugal_parameter(cfg, qn)
    lam_o = coupling_parameter(cfg, qn)
    bracket = qn.n_r + 0.5 * abs(lam_c) - 0.5 * lam_o + 0.5
    e2 = cfg.mass**2 + 4.0 * cfg.m_omega * bracket + qn.k_z**2
    if e2 < 0:
        warnings.warn(f"E^2 = {e2:.6g} < 0 for {qn}; no bound state", BoundStateWarning,
                      stacklevel=2)
    return e2


def energies(cfg: DefectConfig, qn: QuantumNumbers) -> tuple[float, float]:
    """(E_+, E_-) = (+sqrt(E^2), -sqrt(E^2)) for particle and antiparticle branches."""
    e2 = energy_squared(cfg, qn)
    if e2 < 0:
        raise ValueError(f"E^2 = {e2:.6g} < 0; energy is not real")
    e = math.sqrt(e2)
    return e, -e


def gamma_constant(cfg: DefectConfig, qn: QuantumNumbers, e_squared: float) -> float:
    """Gamma_+ (upper) or Gamma_- (lower) = E^2 - m^2 + 2 m omega Lambda_pm - k_z^2."""
    return (e_squared - cfg.mass**2 + 2.0 * cfg.m_omega * coupling_parameter(cfg, qn)
            - qn.k_z**2)


class FactorizationConstants(NamedTuple):
    mu: float
    delta: float
    epsilon: float
    lam: float
    sigma: float


def factorization_constants(cfg: DefectConfig, gamma_plus: float,
                            lam_minus: float) -> FactorizationConstants:
    """Constants of (rho d + mu rho^2 + delta)(-rho d + eps rho^2 + lam) F = sigma F.

    The positive branch mu = eps = +m omega is returned.  ``lam_minus`` is the
    centrifugal parameter of the same configuration.
    """
    mw = cfg.m_omega
    g = gamma_plus / (2.0 * mw)
    lam = -g - 0.5
    return FactorizationConstants(mu=mw, delta=lam - 1.0, epsilon=mw, lam=lam,
                                  sigma=(g + 1.0) ** 2 - lam_minus**2)
