"""Acceptance criteria, one test each.  Every test prints a single PASS/FAIL line."""

import cmath
import itertools
import math
import subprocess
import sys

import numpy as np
import pytest

from dirac_defect.coherent import (
    EvolvedCoherentState,
    coherent_closed,
    coherent_evolved,
    coherent_overlap,
    coherent_series,
)
from dirac_defect.defects import (
    Component,
    DefectConfig,
    DefectKind,
    QuantumNumbers,
    Sign,
    angular_parameter,
    bargmann_index,
    centrifugal_parameter,
    energy_squared,
    gamma_constant,
)
from dirac_defect.radial import SturmianMode, d3_eigenvalue_check, ladder_action_check, mode_for, ode_residual, overlap
from dirac_defect.special import integrate_halfline
from dirac_defect.su11 import (
    CoherentParam,
    build_rep,
    casimir_eigenvalue_check,
    commutator_residuals,
    displacement_bch,
    displacement_direct,
    reliable_size,
)

DEFECTS = [
    DefectConfig(DefectKind.COSMIC_STRING, 0.8, 1.0, 1.0),
    DefectConfig(DefectKind.MAGNETIC_COSMIC_STRING, 0.6, 1.2, 0.8, flux_ratio=0.35),
    DefectConfig(DefectKind.COSMIC_DISLOCATION, 0.9, 0.7, 1.5, flux_ratio=-0.2, torsion=0.6),
]


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title}: {detail}")
        assert ok, detail
    return emit


def test_criterion_01_algebra_closure(report):
    worst = 0.0
    for k, dim in itertools.product((0.5, 1.0, 1.375, 2.25), (8, 32, 128)):
        worst = max(worst, *commutator_residuals(build_rep(k, dim)))
    report(1, "algebra closure", worst < 1e-12, f"max residual {worst:.2e} (< 1e-12)")


def test_criterion_02_casimir(report):
    cas = max(casimir_eigenvalue_check(build_rep(k, dim))
              for k, dim in itertools.product((0.5, 1.0, 1.375, 2.25, 1.6875), (8, 32, 128)))
    factor4 = 0.0
    for cfg, comp, l in itertools.product(DEFECTS, Component, range(-3, 6)):
        qn = QuantumNumbers(0, l, 0.4, comp)
        lam = centrifugal_parameter(cfg, qn)
        k = bargmann_index(lam)
        factor4 = max(factor4, abs(k * (k - 1) - (lam * lam - 1) / 4))
    ok = cas < 1e-12 and factor4 < 1e-12
    report(2, "Casimir eigenvalue", ok, f"diag deviation {cas:.2e}, k(k-1) vs (L^2-1)/4 {factor4:.2e}")


def test_criterion_03_bch_disentangling(report):
    worst = 0.0
    for k, r, phi in itertools.product((0.5, 1.0, 1.375, 2.25), (0.05, 0.1, 0.3, 0.5, 0.7, 0.9),
                                       (0.0, 1.3, 2.6, 4.4)):
        rep = build_rep(k, 64)
        p = CoherentParam(r * cmath.exp(1j * phi))
        s = reliable_size(rep, p)
        diff = displacement_direct(rep, p) - displacement_bch(rep, p)
        worst = max(worst, np.abs(diff[:s, :s]).max())
    report(3, "BCH disentangling", worst < 1e-8, f"max |direct - normal form| {worst:.2e} (< 1e-8)")


def test_criterion_04_spectrum_pipeline(report):
    worst, weakest = 0.0, math.inf
    for cfg, comp, n_r, l in itertools.product(DEFECTS, Component, range(6), range(4)):
        qn = QuantumNumbers(n_r, l, 0.4, comp)
        mode = mode_for(cfg, qn)
        worst = max(worst, ode_residual(mode, cfg, qn))
        gamma = gamma_constant(cfg, qn, energy_squared(cfg, qn) + 4 * cfg.m_omega)
        weakest = min(weakest, ode_residual(mode, cfg, qn, gamma=gamma))
    ok = worst < 1e-9 and weakest > 1e-2
    report(4, "spectrum pipeline", ok, f"ODE residual {worst:.2e} (< 1e-9), wrong level {weakest:.2e} (> 1e-2)")


def test_criterion_05_d3_and_ladder(report):
    d3 = 0.0
    ladder = 0.0
    for n, k, mw in itertools.product(range(6), (0.5, 1.0, 1.375, 2.25), (0.5, 1.0, 2.0)):
        mode = SturmianMode(n, k, mw)
        d3 = max(d3, d3_eigenvalue_check(mode))
        if n < 4:
            up, down = ladder_action_check(mode)
            ladder = max(ladder, abs(up - math.sqrt((n + 1) * (2 * k + n))),
                         abs(down - math.sqrt(n * (2 * k + n - 1))))
    ok = d3 < 1e-8 and ladder < 1e-6
    report(5, "D3 eigenvalue and ladder", ok, f"eigenvalue {d3:.2e} (< 1e-8), ladder {ladder:.2e} (< 1e-6)")


def test_criterion_06_orthonormality(report):
    worst = 0.0
    for k, mw in itertools.product((0.5, 1.0, 1.375), (0.5, 1.0, 2.0)):
        for m, n in itertools.combinations_with_replacement(range(9), 2):
            worst = max(worst, abs(overlap(SturmianMode(m, k, mw), SturmianMode(n, k, mw)) - (m == n)))
    report(6, "Sturmian orthonormality", worst < 1e-8, f"max |<m|n> - delta| {worst:.2e} (< 1e-8)")


def test_criterion_07_coherent_equivalence(report):
    rng = np.random.default_rng(7)
    xis = [r * cmath.exp(1j * phi) for r in (0.0, 0.2, 0.4, 0.6, 0.8, 0.9)
           for phi in (0.0, 2.1, 4.0)]
    series_err = norm_err = 0.0
    for xi, k in itertools.product(xis, (0.5, 1.0, 1.375)):
        for rho in np.linspace(0.1, 6.0, 12):
            closed = coherent_closed(xi, k, 1.0, rho)
            series_err = max(series_err, abs(coherent_series(xi, k, 1.0, rho) - closed) / abs(closed))
        for mw in (0.5, 2.0):
            norm = integrate_halfline(lambda r: abs(coherent_closed(xi, k, mw, r)) ** 2 * r, scale=mw)
            norm_err = max(norm_err, abs(norm - 1))
    ov_err = 0.0
    for _ in range(40):
        x1, x2 = (0.9 * math.sqrt(rng.uniform()) * cmath.exp(2j * math.pi * rng.uniform()) for _ in range(2))
        k = float(rng.choice([0.5, 1.0, 1.375, 2.25]))
        exact = ((1 - abs(x1) ** 2) * (1 - abs(x2) ** 2) / abs(1 - x1.conjugate() * x2) ** 2) ** (2 * k)
        ov_err = max(ov_err, abs(abs(coherent_overlap(x1, x2, k)) ** 2 - exact))
    ok = series_err < 1e-8 and norm_err < 1e-6 and ov_err < 1e-10
    report(7, "coherent-state equivalence", ok,
           f"series/closed {series_err:.2e} (< 1e-8), norm {norm_err:.2e} (< 1e-6), overlap {ov_err:.2e} (< 1e-10)")


def test_criterion_08_time_evolution(report):
    rho = np.linspace(0.1, 6.0, 40)
    tau0 = per = norm_err = 0.0
    for xi, k, mw, hbar in [(0.4 + 0.2j, 1.0, 1.0, 1.0), (0.8j, 1.375, 0.7, 1.0), (-0.6, 0.5, 2.0, 0.5)]:
        state = EvolvedCoherentState(xi, k, mw, 0.0, hbar)
        tau0 = max(tau0, np.abs(coherent_evolved(state, rho) - coherent_closed(xi, k, mw, rho)).max())
        for tau in np.linspace(0, state.period, 5):
            s = state.at(float(tau))
            a = np.abs(coherent_evolved(s, rho))
            b = np.abs(coherent_evolved(state.at(float(tau) + state.period), rho))
            per = max(per, np.abs(a - b).max())
            norm = integrate_halfline(lambda r: abs(coherent_evolved(s, r)) ** 2 * r, scale=mw)
            norm_err = max(norm_err, abs(norm - 1))
    ok = tau0 < 1e-12 and per < 1e-10 and norm_err < 1e-6
    report(8, "time evolution", ok, f"tau=0 {tau0:.2e} (< 1e-12), period {per:.2e} (< 1e-10), norm {norm_err:.2e} (< 1e-6)")


def test_criterion_09_flat_reduction(report):
    worst = 0.0
    for m, w, kz in [(1.0, 1.0, 0.0), (1.3, 0.6, 0.5), (0.4, 2.2, -1.1)]:
        cfg = DefectConfig(DefectKind.COSMIC_STRING, 1.0, m, w)
        for n_r, l in itertools.product(range(6), range(6)):
            qn = QuantumNumbers(n_r, l, kz, Component.UPPER)
            assert angular_parameter(cfg, qn, Sign.MINUS) >= 0
            worst = max(worst, abs(energy_squared(cfg, qn) - (m * m + 4 * m * w * n_r + kz * kz)))
    report(9, "flat-spacetime reduction", worst < 1e-12, f"max |E^2 - (m^2 + 4 m w n_r + kz^2)| {worst:.2e}")


def test_criterion_10_determinism(report, tmp_path):
    codes, blobs = [], []
    for i in range(2):
        out = tmp_path / f"verify{i}.json"
        proc = subprocess.run([sys.executable, "-m", "dirac_defect", "verify", "--out", str(out)],
                              capture_output=True, text=True)
        codes.append(proc.returncode)
        blobs.append(out.read_bytes())
    ok = codes == [0, 0] and blobs[0] == blobs[1]
    report(10, "verify determinism", ok, f"exit codes {codes}, identical reports {blobs[0] == blobs[1]}")
