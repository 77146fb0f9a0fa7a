"""Tests for the metric profile u, the conformal densities, and the
closed-form curvatures, cross-checked against high-precision and
finite-difference oracles."""

import mpmath as mp
import numpy as np
import pytest

from grauertlab.density import (
    SERIES_RADIUS,
    T_MAX,
    T_MIN,
    gamma_jet,
    grauert_curvature,
    grauert_density_jet,
    hk_density_jet,
    m_factor,
    power_curvature,
    u_jet,
)
from grauertlab.errors import DomainOverflow, DomainUnderflow
from grauertlab.holomorphic import wirtinger_fd


def kg_oracle(t, dps=50):
    """Gaussian curvature of the radial density gamma(t) at t = |z|^2,
    via K = -2 (L' + t L'') / gamma with L = log gamma, in high precision."""
    with mp.workdps(dps):
        t = mp.mpf(t)

        def gam(s):
            u = (s - 1) / (s * mp.log(s)) if s != 1 else mp.mpf(1)
            return 1 + s * u**2

        L = lambda s: mp.log(gam(s))
        val = -2 * (mp.diff(L, t) + t * mp.diff(L, t, 2)) / gam(t)
        return float(val)


def test_u_closed_form_values():
    e = float(np.e)
    assert abs(u_jet(e).u - (e - 1) / e) < 1e-14
    assert abs(u_jet(4.0).u - 3 / (4 * np.log(4))) < 1e-14


def test_u_series_values_at_one():
    j = u_jet(1.0)
    assert abs(j.u - 1.0) < 1e-14
    assert abs(j.up + 0.5) < 1e-14
    assert abs(j.upp - 5.0 / 6.0) < 1e-13


def test_u_seam_consistency():
    # the Taylor and closed-form branches agree across the switch radius
    for s in (SERIES_RADIUS, -SERIES_RADIUS):
        for off in (0.999, 1.001):
            t = 1.0 + s * off
            j = u_jet(t)
            with mp.workdps(40):
                tm = mp.mpf(t)
                u = (tm - 1) / (tm * mp.log(tm))
                f = lambda s_: (s_ - 1) / (s_ * mp.log(s_))
                up = mp.diff(f, tm)
                upp = mp.diff(f, tm, 2)
            assert abs(j.u - float(u)) < 1e-9 * abs(float(u))
            assert abs(j.up - float(up)) < 1e-9 * abs(float(up))
            assert abs(j.upp - float(upp)) < 1e-7 * abs(float(upp))


def test_u_domain_clamp():
    with pytest.raises(DomainUnderflow):
        u_jet(T_MIN / 10)
    with pytest.raises(DomainOverflow):
        u_jet(T_MAX * 10)
    # boundary values are inside the domain and u itself stays finite
    assert np.isfinite(u_jet(T_MIN).u)
    assert np.isfinite(u_jet(T_MAX).u)


def test_gamma_jet_derivatives():
    # gamma' and gamma'' against high-precision differentiation
    for t in (0.3, 1.0, 2.5, 7.0):
        g, gp, gpp = gamma_jet(t)
        with mp.workdps(40):
            tm = mp.mpf(t)

            def gam(s):
                u = (s - 1) / (s * mp.log(s)) if s != 1 else mp.mpf(1)
                return 1 + s * u**2

            assert abs(g - float(gam(tm))) < 1e-12
            assert abs(gp - float(mp.diff(gam, tm))) < 1e-9
            assert abs(gpp - float(mp.diff(gam, tm, 2))) < 1e-7


def test_grauert_density_values():
    e = float(np.e)
    j = grauert_density_jet(np.sqrt(e))
    assert abs(j.h - (1 + (e - 1) ** 2 / e)) < 1e-13
    assert abs(grauert_density_jet(1.0).h - 2.0) < 1e-13


def test_density_jets_match_stencil():
    rng = np.random.default_rng(11)
    for k in (1, 2, 3):
        for _ in range(5):
            z = (0.3 + 2 * rng.random()) * np.exp(2j * np.pi * rng.random())
            j = hk_density_jet(k, z)

            def F(T, k=k):
                return hk_density_jet(k, z + T).h

            fd = wirtinger_fd(F, 0j)
            assert abs(fd.d - j.d) < 1e-5 * max(1.0, abs(j.d))
            assert abs(fd.ddbar - j.ddbar) < 1e-4 * max(1.0, abs(j.ddbar))


def test_hk_reduces_to_grauert():
    rng = np.random.default_rng(3)
    for _ in range(10):
        z = (0.1 + 3 * rng.random()) * np.exp(2j * np.pi * rng.random())
        a, b = hk_density_jet(1, z), grauert_density_jet(z)
        assert a.h == b.h and a.d == b.d and a.ddbar == b.ddbar


def test_h2_at_unit_modulus():
    # k = 2, |z| = 1: h2 = 4 (1 + u^2(1)) = 8
    assert abs(hk_density_jet(2, np.exp(0.7j)).h - 8.0) < 1e-12


def test_m_factor_at_one():
    assert abs(m_factor(1.0) - 1.0 / 3.0) < 1e-13


def test_kg_against_high_precision_oracle():
    for t in (1e-8, 1e-3, 0.5, 1.0, 2.0, 50.0, 1e6):
        z = np.sqrt(t)
        assert abs(grauert_curvature(z) - kg_oracle(t)) < 1e-8 * max(
            1.0, abs(kg_oracle(t))
        )


def test_kg_at_one():
    assert abs(grauert_curvature(1.0) + 1.0 / 12.0) < 1e-9


def test_kg_rotation_invariance_and_sign():
    worst_var, worst_sign = 0.0, -np.inf
    for r in np.logspace(-12, 12, 25):
        vals = [grauert_curvature(r * np.exp(2j * np.pi * q / 8)) for q in range(8)]
        worst_var = max(worst_var, max(vals) - min(vals))
        worst_sign = max(worst_sign, max(vals))
    assert worst_var < 1e-10
    assert worst_sign <= 1e-10


def test_kg_limits():
    gaps = [abs(grauert_curvature(10.0**-m) + 4.0) for m in (4, 6, 8, 10)]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < 0.2
    far = [abs(grauert_curvature(10.0**m)) for m in (8, 9, 10)]
    assert all(b < a for a, b in zip(far, far[1:]))
    assert far[-1] < 0.2


def test_power_curvature_identity():
    rng = np.random.default_rng(5)
    for k in (1, 2, 3, 5):
        for _ in range(10):
            z = (0.2 + 1.5 * rng.random()) * np.exp(2j * np.pi * rng.random())
            a, b = power_curvature(k, z), grauert_curvature(z**k)
            assert abs(a - b) < 1e-8 * abs(b)


def test_hk_blow_up_and_vanishing_ratios():
    for k in (1, 2, 3):
        hs = [hk_density_jet(k, 10.0**-m).h for m in (1, 2, 3, 4)]
        assert all(b > a for a, b in zip(hs, hs[1:]))  # monotone blow-up
        j = hk_density_jet(k, 1e-8)
        assert abs(j.d) / j.h**3 < 1e-6
        assert abs(j.ddbar) / j.h**3 < 1e-6
