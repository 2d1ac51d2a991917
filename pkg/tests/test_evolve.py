import math

import numpy as np
import pytest

from dsexact import BlowupError, ConfigError, Field, PeriodicityError, \
    UnsupportedVariant, Variant, apply_t1, crosscheck, ellipk, family_a, \
    family_c, make_field, mass, parse_timefn, poisson_v, step

DS2 = Variant(-1, 1)


def sn_line(m=0.5):
    return family_c(DS2, "sn", m, math.pi / 2.0, 0.0, parse_timefn("0"))


def test_poisson_cosine():
    n = 32
    lx = ly = 2.0 * math.pi
    xs = np.arange(n) * (lx / n)
    g = np.cos(xs)[:, None] * np.ones((1, n))
    v = poisson_v(g, lx, ly, DS2, 0.0)
    assert np.max(np.abs(v - (-2.0 * np.cos(xs)[:, None]))) <= 1e-12


def test_poisson_y_only_source_gives_constant():
    n = 32
    lx = ly = 2.0 * math.pi
    ys = np.arange(n) * (ly / n)
    g = np.ones((n, 1)) * np.sin(2.0 * ys)[None, :]
    v = poisson_v(g, lx, ly, DS2, -0.7)
    assert np.max(np.abs(v + 0.7)) <= 1e-13


def test_poisson_matches_exact_mean_flow_of_line_solution():
    m = 0.5
    L = 4.0 * ellipk(m)
    sol = sn_line(m)
    field = make_field(sol, L, L, 64)
    v = poisson_v(np.abs(field.u) ** 2, L, L, DS2, field.v_mean)
    assert np.max(np.abs(v - field.v)) <= 1e-11


def test_poisson_spectral_constraint_and_mean():
    n = 32
    lx, ly = 5.0, 7.0
    rng = np.random.default_rng(3)
    g = rng.standard_normal((n, n))
    v_mean = 0.37
    v = poisson_v(g, lx, ly, DS2, v_mean)
    assert float(np.mean(v)) == pytest.approx(v_mean, abs=1e-13)
    kx = 2.0 * math.pi * np.fft.fftfreq(n, d=lx / n)[:, None]
    ky = 2.0 * math.pi * np.fft.fftfreq(n, d=ly / n)[None, :]
    vhat = np.fft.fft2(v)
    ghat = np.fft.fft2(g)
    # Laplacian(v) + 2 g_xx = 0 mode by mode (k=0 excluded: gauge)
    resid = -(kx ** 2 + ky ** 2) * vhat + 2.0 * (-kx ** 2) * ghat
    resid[0, 0] = 0.0
    assert np.max(np.abs(resid)) / (n * n) <= 1e-12 * np.max(np.abs(ghat))


def test_poisson_rejects_plus_branch():
    with pytest.raises(UnsupportedVariant):
        poisson_v(np.zeros((8, 8)), 1.0, 1.0, Variant(1, 1), 0.0)


def test_field_requires_power_of_two():
    with pytest.raises(ConfigError):
        Field(1.0, 1.0, np.zeros((12, 16), complex), np.zeros((12, 16)),
              0.0, 0.0)


def test_zero_field_stays_zero():
    n = 16
    field = Field(2.0 * math.pi, 2.0 * math.pi, np.zeros((n, n), complex),
                  np.zeros((n, n)), 0.0, 0.0)
    out = step(field, DS2, 1e-2)
    assert np.all(out.u == 0.0)


def test_flat_field_is_stationary():
    # u = c with v_mean = -e2 c^2: the nonlinear phase cancels exactly.
    n = 16
    c = 0.8
    field = Field(2.0 * math.pi, 2.0 * math.pi,
                  np.full((n, n), c, dtype=complex), np.zeros((n, n)),
                  0.0, -c * c)
    out = field
    for _ in range(20):
        out = step(out, DS2, 1e-2)
    assert np.max(np.abs(out.u - c)) <= 1e-13


def test_linear_step_phase_of_plane_wave():
    # One tiny step of a plane wave picks up the linear dispersion phase
    # exp(-i (e1 kx^2 + ky^2) dt/2); amplitude is preserved exactly.
    n = 32
    lx = ly = 2.0 * math.pi
    xs = np.arange(n) * (lx / n)
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    kx, ky = 1.0, 2.0
    amp = 1e-3  # keep the nonlinear phase negligible
    field = Field(lx, ly, amp * np.exp(1j * (kx * X + ky * Y)),
                  np.zeros((n, n)), 0.0, 0.0)
    dt = 1e-3
    out = step(field, DS2, dt)
    expect = field.u * np.exp(-1j * (-kx ** 2 + ky ** 2) * dt / 2.0)
    assert np.max(np.abs(out.u - expect)) <= 1e-8 * amp


def test_mass_conservation():
    m = 0.5
    L = 4.0 * ellipk(m)
    field = make_field(sn_line(m), L, L, 32)
    m0 = mass(field)
    out = field
    for _ in range(200):
        out = step(out, DS2, 1e-3)
    assert abs(mass(out) - m0) <= 1e-10 * max(1.0, m0)


def test_crosscheck_stationary_line():
    m = 0.5
    L = 4.0 * ellipk(m)
    rep = crosscheck(sn_line(m), L, L, 64, 0.1, 1e-3)
    assert rep["max_dev"] <= 1e-5
    assert rep["mass_drift"] <= 1e-10
    assert rep["n_steps"] == 100


def test_crosscheck_zero_horizon():
    m = 0.5
    L = 4.0 * ellipk(m)
    rep = crosscheck(sn_line(m), L, L, 32, 0.0, 1e-3)
    assert rep["max_dev"] == 0.0 and rep["n_steps"] == 0


def test_crosscheck_second_order_in_dt():
    m = 0.5
    L = 4.0 * ellipk(m)
    sol = sn_line(m)
    coarse = crosscheck(sol, L, L, 32, 0.2, 2e-3)["max_dev"]
    fine = crosscheck(sol, L, L, 32, 0.2, 1e-3)["max_dev"]
    assert coarse / fine >= 3.5


def test_crosscheck_tracks_boosted_profile():
    # A moving frame (alpha linear in t, commensurate phase) is tracked to
    # the same tolerance as the stationary profile.
    m = 0.5
    L = 4.0 * ellipk(m)
    w = 2.0 * math.pi / L
    boosted = apply_t1(sn_line(m), parse_timefn(f"{w!r}*t"),
                       parse_timefn("0"), parse_timefn("0"))
    rep = crosscheck(boosted, L, L, 64, 0.5, 1e-3)
    assert rep["max_dev"] <= 1e-5


def test_crosscheck_rejects_aperiodic_and_plus_branch():
    m = 0.5
    L = 4.0 * ellipk(m)
    with pytest.raises(PeriodicityError):
        crosscheck(family_a(DS2, parse_timefn("t"), 1.0), L, L, 32, 0.1, 1e-3)
    with pytest.raises(PeriodicityError):
        # periodic profile but an incommensurate box
        crosscheck(sn_line(m), 0.8 * L, L, 32, 0.1, 1e-3)
    ds1 = family_c(Variant(1, 1), "sn", m, 0.3, 0.0, parse_timefn("0"))
    with pytest.raises(UnsupportedVariant):
        crosscheck(ds1, L, L, 32, 0.1, 1e-3)


def test_blowup_detection():
    n = 16
    u = np.ones((n, n), dtype=complex)
    u[3, 4] = complex("nan")
    field = Field(1.0, 1.0, u, np.zeros((n, n)), 0.0, 0.0)
    with pytest.raises(BlowupError):
        step(field, DS2, 1e-3)
