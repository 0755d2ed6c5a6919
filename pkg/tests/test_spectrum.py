"""Tests for bound-state search and the Levinson sum rule."""

import math

import numpy as np
import pytest

from kinkdirac import (
    Family,
    SolitonBackground,
    SpectralPoint,
    build_solution,
    c1_bound_indicator,
    eval_u,
    find_bound_states,
    levinson_check,
)

# Discrete spectrum of the reference kink, confirmed independently by a
# shooting search on the directly integrated equation (see test_oracle.py).
E_MASSIVE_OVER_M = 4.231807015500819 / 5.0


def test_kappa_at_threshold_energies(bg5):
    assert SpectralPoint.bound(bg5, 0.0).k == pytest.approx(5j)
    sp = SpectralPoint.bound(bg5, 4.0)
    assert sp.k == pytest.approx(3j)


def test_kink_spectrum(bg5):
    states = find_bound_states(bg5)
    energies = sorted(s.E_n for s in states)
    assert len(energies) == 2
    assert abs(energies[0]) <= 1e-6 * bg5.M
    assert energies[1] == pytest.approx(E_MASSIVE_OVER_M * bg5.M, abs=1e-6 * bg5.M)


def test_kink_has_no_negative_root(bg5):
    states = find_bound_states(bg5)
    assert all(s.E_n > -1e-6 * bg5.M for s in states)


def test_antikink_spectrum_mirrors_kink(bg5, bg5_anti):
    kink = sorted(s.E_n for s in find_bound_states(bg5))
    anti = sorted(s.E_n for s in find_bound_states(bg5_anti))
    assert len(anti) == 2
    for e_k, e_a in zip(kink, sorted(-e for e in anti)):
        assert abs(e_k - e_a) <= 1e-6 * bg5.M


def test_combined_spectrum_symmetric_under_charge_conjugation(bg5, bg5_anti):
    union = sorted(
        [s.E_n for s in find_bound_states(bg5)]
        + [s.E_n for s in find_bound_states(bg5_anti)]
    )
    mirrored = sorted(-e for e in union)
    for a, b in zip(union, mirrored):
        assert abs(a - b) <= 2e-6 * bg5.M


def test_bound_state_residuals_small(bg5):
    for s in find_bound_states(bg5):
        assert s.residual <= 1e-6
        assert s.kappa == pytest.approx(math.sqrt(bg5.M**2 - s.E_n**2), rel=1e-9)


def test_massive_bound_state_decays(bg5):
    E = E_MASSIVE_OVER_M * bg5.M
    sp = SpectralPoint.bound(bg5, E)
    sol = build_solution(Family.U1_FIRST, bg5, sp)
    kappa = math.sqrt(bg5.M**2 - E**2)
    xs = np.linspace(3.0 / bg5.K, 6.0 / bg5.K, 7)
    us = np.array([abs(eval_u(sol, x)[0]) for x in xs])
    ref = us[0] * np.exp(-0.9 * kappa * (xs - xs[0]))
    assert np.all(us <= ref + 1e-300)


def test_indicator_vanishes_only_at_roots(bg5):
    # Even point count keeps E = 0 (where the u2 basis degenerates) off the grid.
    Es = np.linspace(-0.95 * bg5.M, 0.95 * bg5.M, 24)
    vals = np.array([abs(c1_bound_indicator(bg5, E)) for E in Es])
    roots = (0.0, E_MASSIVE_OVER_M * bg5.M)
    for E, v in zip(Es, vals):
        near_root = min(abs(E - r) for r in roots) < 0.1 * bg5.M
        if not near_root:
            assert v > 1e-3


def test_indicator_linear_near_zero_mode(bg5):
    # The indicator has a simple zero at E = 0: |c1| ~ const * |E|.
    slopes = [
        abs(c1_bound_indicator(bg5, E)) / abs(E)
        for E in (1e-3 * bg5.M, 1e-4 * bg5.M, 1e-5 * bg5.M)
    ]
    assert max(slopes) / min(slopes) < 1.01


def test_levinson_sum_rule(bg5):
    report = levinson_check(bg5, k_min=1e-3 * bg5.M, k_max=50 * bg5.M)
    assert report.n_b == 1  # strictly positive-energy states only
    jump = report.delta_at_zero - report.delta_at_infinity
    assert abs(jump - math.pi * (report.n_b - 0.5)) < 0.05 * math.pi
    assert report.discrepancy < 0.05 * math.pi


def test_levinson_light_fermion():
    bg = SolitonBackground(M=2.15e-5, K=2.15e-5, beta=1.0)
    report = levinson_check(bg, k_min=1e-3 * bg.M, k_max=50 * bg.M)
    jump = report.delta_at_zero - report.delta_at_infinity
    assert abs(jump - math.pi / 2) < 0.05 * math.pi
