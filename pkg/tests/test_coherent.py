import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dirac_defect.coherent import (
    EvolvedCoherentState,
    coherent_closed,
    coherent_evolved,
    coherent_overlap,
    coherent_series,
    series_term_count,
)
from dirac_defect.radial import Form, SturmianMode, sturmian_eval
from dirac_defect.special import integrate_halfline
from dirac_defect.su11 import CoherentParam, perelomov_coefficients


def _norm(fn, mw):
    return integrate_halfline(lambda r: abs(fn(r)) ** 2 * r, scale=mw)


@pytest.mark.parametrize("k, mw", [(0.5, 1.0), (1.375, 0.6)])
def test_zero_xi_is_ground_sturmian(k, mw):
    ground = SturmianMode(0, k, mw, Form.CHI)
    for rho in (0.2, 1.0, 2.7):
        want = sturmian_eval(ground, rho)
        assert coherent_closed(0, k, mw, rho) == pytest.approx(want, rel=1e-14)
        assert coherent_series(0, k, mw, rho) == pytest.approx(want, rel=1e-14)
        assert series_term_count(0, k, mw, rho) == 1


def test_closed_matches_series_xi04():
    rng = np.random.default_rng(7)
    for rho in rng.uniform(0.1, 6, 20):
        closed = coherent_closed(0.4, 1.0, 1.0, rho)
        assert abs(coherent_series(0.4, 1.0, 1.0, rho) - closed) < 1e-10 * abs(closed)


def test_closed_matches_series_xi09_rho1():
    closed = coherent_closed(0.9, 0.5, 1.0, 1.0)
    assert abs(coherent_series(0.9, 0.5, 1.0, 1.0) - closed) < 1e-7 * abs(closed)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.0, 0.9), st.floats(0, 2 * math.pi), st.sampled_from([0.5, 1.0, 1.375]),
       st.floats(0.1, 6.0))
def test_series_closed_equivalence(r, phi, k, rho):
    xi = r * cmath.exp(1j * phi)
    closed = coherent_closed(xi, k, 1.0, rho)
    assert abs(coherent_series(xi, k, 1.0, rho) - closed) < 1e-8 * abs(closed)


def test_series_handles_deep_cancellation():
    # the amplitude here is ~1e-148 while individual terms are O(1)
    closed = coherent_closed(0.9, 1.0, 1.0, 6.0)
    assert abs(closed) < 1e-100
    assert abs(coherent_series(0.9, 1.0, 1.0, 6.0) - closed) < 1e-8 * abs(closed)


def test_term_count_monotone_in_xi():
    counts = [series_term_count(r, 1.0, 1.0, 1.0) for r in np.arange(1, 10) / 10]
    assert counts == sorted(counts)
    assert counts[-1] > counts[0]


@pytest.mark.parametrize("xi, k, mw", [(0.4, 1.0, 1.0), (0.9j, 0.5, 1.0), (-0.6 + 0.3j, 2.25, 2.0),
                                       (0.7, 1.375, 0.4)])
def test_closed_normalization(xi, k, mw):
    assert abs(_norm(lambda r: coherent_closed(xi, k, mw, r), mw) - 1) < 1e-6


def test_rejects_outside_disk():
    with pytest.raises(ValueError):
        coherent_closed(1.0, 1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        coherent_series(1.2j, 1.0, 1.0, 1.0)


def test_closed_vectorized():
    rho = np.linspace(0.1, 3, 7)
    vec = coherent_closed(0.3 + 0.2j, 1.2, 0.9, rho)
    assert vec.shape == rho.shape
    assert np.allclose(vec, [coherent_closed(0.3 + 0.2j, 1.2, 0.9, r) for r in rho], rtol=1e-15)


def test_evolved_state_properties():
    st0 = EvolvedCoherentState(0.5 + 0.2j, 1.375, 0.8, 0.3, 1.0)
    assert abs(st0.xi_tau) == pytest.approx(abs(st0.xi), rel=1e-15)
    assert abs(st0.global_phase) == pytest.approx(1.0, abs=1e-15)
    assert st0.period == pytest.approx(math.pi / 1.6)
    assert st0.at(0.0).xi_tau == st0.xi


def test_evolution_at_zero_is_static():
    st0 = EvolvedCoherentState(0.4 - 0.3j, 1.375, 1.0)
    rho = np.linspace(0.1, 6, 30)
    assert np.array_equal(coherent_evolved(st0, rho), coherent_closed(0.4 - 0.3j, 1.375, 1.0, rho))


@pytest.mark.parametrize("mw, hbar", [(1.0, 1.0), (0.7, 1.0), (2.0, 0.5)])
def test_evolution_periodicity(mw, hbar):
    state = EvolvedCoherentState(0.6 + 0.1j, 1.0, mw, 0.0, hbar)
    rho = np.linspace(0.1, 6, 30)
    for tau in np.linspace(0, 3 * state.period, 9):
        a = np.abs(coherent_evolved(state.at(tau), rho))
        b = np.abs(coherent_evolved(state.at(tau + state.period), rho))
        assert np.abs(a - b).max() < 1e-10


def test_evolution_moves_density():
    state = EvolvedCoherentState(0.6, 1.0, 1.0)
    rho = np.linspace(0.1, 4, 30)
    a = np.abs(coherent_evolved(state, rho))
    b = np.abs(coherent_evolved(state.at(state.period / 2), rho))
    assert np.abs(a - b).max() > 1e-2


@pytest.mark.parametrize("frac", [0.0, 0.25, 0.5])
def test_evolution_norm(frac):
    state = EvolvedCoherentState(0.5 + 0.4j, 1.375, 1.3)
    s = state.at(frac * state.period)
    assert abs(_norm(lambda r: coherent_evolved(s, r), 1.3) - 1) < 1e-6


def test_evolution_survival_depends_on_modulus_only():
    tau = 0.37
    vals = []
    for phi in (0.0, 1.1, 2.9):
        st0 = EvolvedCoherentState(0.55 * cmath.exp(1j * phi), 1.0, 1.0, tau)
        vals.append(abs(coherent_overlap(st0.xi, st0.xi_tau, st0.k)))
    assert max(vals) - min(vals) < 1e-12


def test_from_param_uses_zeta():
    p = CoherentParam(0.5j)
    st0 = EvolvedCoherentState.from_param(p, 1.0, 1.0)
    assert st0.xi == p.zeta


def test_overlap_examples():
    assert coherent_overlap(0.3 + 0.4j, 0.3 + 0.4j, 1.375) == pytest.approx(1.0, abs=1e-12)
    xi, k = 0.6 - 0.2j, 1.7
    assert coherent_overlap(0, xi, k) == pytest.approx((1 - abs(xi) ** 2) ** k, abs=1e-14)


def test_overlap_matches_coefficients_directly():
    c1 = perelomov_coefficients(1.0, 0.2, 400)
    c2 = perelomov_coefficients(1.0, -0.5j, 400)
    assert coherent_overlap(0.2, -0.5j, 1.0) == pytest.approx(np.vdot(c1, c2), abs=1e-14)


@settings(max_examples=50, deadline=None)
@given(st.floats(0, 0.9), st.floats(0, 2 * math.pi), st.floats(0, 0.9), st.floats(0, 2 * math.pi),
       st.sampled_from([0.5, 1.0, 1.375, 2.25]))
def test_overlap_formula(r1, p1, r2, p2, k):
    x1, x2 = r1 * cmath.exp(1j * p1), r2 * cmath.exp(1j * p2)
    ov = coherent_overlap(x1, x2, k)
    exact = ((1 - r1**2) * (1 - r2**2) / abs(1 - x1.conjugate() * x2) ** 2) ** (2 * k)
    assert abs(abs(ov) ** 2 - exact) < 1e-10
    assert abs(ov) <= 1 + 1e-12
