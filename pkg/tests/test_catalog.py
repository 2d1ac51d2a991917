import cmath
import math
import random

import pytest

from dsexact import ConfigError, MixedCaseUnsupported, NoRealAmplitude, \
    NoRealSolution, UnsupportedVariant, ValidityError, Variant, ellipk, \
    eval_solution, family_a, family_b, family_c, jacobi_sn_cn_dn, \
    parse_timefn


def test_variant_validation():
    Variant(1, -1)
    with pytest.raises(ConfigError):
        Variant(0, 1)
    with pytest.raises(ConfigError):
        Variant(1, 2)


# ---------------------------------------------------------------------------
# Family A.
# ---------------------------------------------------------------------------

def test_family_a_linear_im_closed_form():
    # Im = t gives u = c exp(i (x^2 - e1 y^2)/2), v = -(e1 x^2+y^2)/2 - e2 c^2.
    rng = random.Random(5)
    c = 1.3
    for eps1 in (1, -1):
        for eps2 in (1, -1):
            sol = family_a(Variant(eps1, eps2), parse_timefn("t"), c)
            for _ in range(20):
                t = rng.uniform(-1.0, 2.0)
                x = rng.uniform(-2.0, 2.0)
                y = rng.uniform(-2.0, 2.0)
                u_ref = c * cmath.exp(1j * (x * x - eps1 * y * y) / 2.0)
                v_ref = -(eps1 * x * x + y * y) / 2.0 - eps2 * c * c
                assert abs(sol.u(t, x, y) - u_ref) <= 1e-12
                assert abs(sol.v(t, x, y) - v_ref) <= 1e-12


def test_family_a_log_im_spot_values():
    sol = family_a(Variant(1, 1), parse_timefn("ln(t)"), 1.0)
    # amplitude c*sqrt(Im') = 1/sqrt(2) at t=2
    assert abs(sol.u(2.0, 0.7, -0.4)) == pytest.approx(1.0 / math.sqrt(2.0),
                                                       rel=1e-13)
    # quadratic coefficient of v is -3/32 at t=2
    quad = sol.v(2.0, 1.0, 0.0) - sol.v(2.0, 0.0, 0.0)
    assert quad == pytest.approx(-3.0 / 32.0, rel=1e-12)


def test_family_a_phase_matches_closed_form():
    # The phase must equal [(2 Im'^2 - e1 Im'') x^2 - (2 e1 Im'^2 + Im'') y^2]
    # / (4 Im') for any driving function; checked for three of them.
    for src, ts in (("t", (0.5, 1.2)), ("ln(t)", (0.7, 1.6)),
                    ("exp(t)", (-0.5, 0.4))):
        im = parse_timefn(src)
        for eps1 in (1, -1):
            sol = family_a(Variant(eps1, 1), im, 1.0)
            for t in ts:
                j = im.jet(t)
                for (x, y) in ((0.8, -0.6), (1.5, 0.9)):
                    phase_ref = ((2.0 * j.d1 ** 2 - eps1 * j.d2) * x * x
                                 - (2.0 * eps1 * j.d1 ** 2 + j.d2) * y * y) \
                        / (4.0 * j.d1)
                    u = sol.u(t, x, y)
                    expect = abs(u) * cmath.exp(1j * phase_ref)
                    assert abs(u - expect) <= 1e-12 * (1.0 + abs(u))


def test_family_a_zero_amplitude():
    sol = family_a(Variant(-1, 1), parse_timefn("t"), 0.0)
    assert sol.u(0.3, 1.0, 2.0) == 0.0
    assert sol.v(0.3, 1.0, 2.0) == pytest.approx(-(-1.0 + 4.0) / 2.0)


def test_family_a_validity():
    sol = family_a(Variant(1, 1), parse_timefn("ln(t)"), 1.0)
    assert sol.valid(1.0, 0.0, 0.0)
    assert not sol.valid(-1.0, 0.0, 0.0)  # ln undefined
    u, v, ok = eval_solution(sol, -1.0, 0.0, 0.0)
    assert not ok and math.isnan(v)
    # decreasing Im: slope negative everywhere
    falling = family_a(Variant(1, 1), parse_timefn("0-t"), 1.0)
    assert not falling.valid(0.5, 0.0, 0.0)
    with pytest.raises(ValidityError):
        falling.u(0.5, 0.0, 0.0)


# ---------------------------------------------------------------------------
# Family B.
# ---------------------------------------------------------------------------

def test_family_b_preconditions():
    beta = parse_timefn("0")
    with pytest.raises(UnsupportedVariant):
        family_b(Variant(-1, 1), 1.0, 1.0, 0.0, beta)
    with pytest.raises(MixedCaseUnsupported):
        family_b(Variant(1, 1), 0.0, 1.0, 0.0, beta)
    with pytest.raises(MixedCaseUnsupported):
        family_b(Variant(1, 1), 1.0, 0.0, 0.0, beta)
    with pytest.raises(NoRealSolution):
        family_b(Variant(1, -1), 1.0, 1.0, 0.0, beta)


def test_family_b_existence_constant():
    sol = family_b(Variant(1, 1), 1.0, 1.0, 0.5, parse_timefn("0"))
    assert sol.provenance["Im"] == pytest.approx(math.log(3.0) / 4.0)
    sol2 = family_b(Variant(1, 1), 2.0, -1.0, 0.0, parse_timefn("0"))
    assert sol2.provenance["Im"] == pytest.approx(math.log(12.0) / 4.0)


def test_family_b_zero_offset_has_zero_at_origin():
    sol = family_b(Variant(1, 1), 1.5, -0.7, 0.0, parse_timefn("0.2*t"))
    for t in (0.0, 0.4, 1.1):
        assert abs(sol.u(t, 0.0, 0.0)) == 0.0


def test_family_b_linear_in_space():
    # u / exp(i*phase) is affine in (x, y) at fixed t.
    sol = family_b(Variant(1, 1), 1.0, 2.0, 0.3, parse_timefn("0.1*t"))
    t = 0.5
    u00 = sol.u(t, 0.0, 0.0)
    ux = sol.u(t, 1.0, 0.0)
    uy = sol.u(t, 0.0, 1.0)
    uxy = sol.u(t, 1.0, 1.0)
    # strip the quadratic phase before testing affinity
    bp = parse_timefn("0.1*t").jet(t).d1
    def strip(u, x, y):
        return u * cmath.exp(-1j * bp * (x * x + y * y))
    lhs = strip(uxy, 1.0, 1.0) - strip(ux, 1.0, 0.0) \
        - strip(uy, 0.0, 1.0) + strip(u00, 0.0, 0.0)
    assert abs(lhs) <= 1e-13


# ---------------------------------------------------------------------------
# Family C.
# ---------------------------------------------------------------------------

def test_family_c_sn_line_at_quarter_turn():
    # eps1=-1, ell=pi/2: u = m sn(x), v = (1+m^2)/2 - 2 m^2 sn(x)^2.
    m = 0.5
    sol = family_c(Variant(-1, 1), "sn", m, math.pi / 2.0, 0.0,
                   parse_timefn("0"))
    for x in (-2.0, -0.3, 0.0, 0.9, 2.7):
        for y in (-1.0, 0.5):
            sn = jacobi_sn_cn_dn(x, m)[0]
            assert sol.u(0.0, x, y) == pytest.approx(m * sn, abs=1e-12)
            assert sol.v(0.0, x, y) == pytest.approx(
                (1.0 + m * m) / 2.0 - 2.0 * m * m * sn * sn, abs=1e-12)
    u, v, ok = eval_solution(sol, 0.0, 0.0, 1.3)
    assert ok
    assert abs(u) <= 1e-12  # sn(0) = 0 up to the float cos(pi/2)
    assert v == pytest.approx((1.0 + m * m) / 2.0, abs=1e-12)


def test_family_c_sn_line_axis_aligned():
    # eps1=-1, ell=0: u = m sn(y), v = -(1+m^2)/2, stationary, x-independent.
    m = 0.7
    sol = family_c(Variant(-1, 1), "sn", m, 0.0, 0.0, parse_timefn("0"))
    for y in (-1.1, 0.4, 2.0):
        sn = jacobi_sn_cn_dn(y, m)[0]
        assert sol.u(0.0, -0.8, y) == pytest.approx(m * sn, abs=1e-12)
        assert sol.u(0.0, 1.7, y) == sol.u(0.0, -0.8, y)
        assert sol.v(0.3, 0.0, y) == pytest.approx(-(1.0 + m * m) / 2.0)


def test_family_c_dn_no_real_amplitude():
    with pytest.raises(NoRealAmplitude):
        family_c(Variant(-1, 1), "dn", 0.5, 0.0, 0.0, parse_timefn("0"))


def test_family_c_pole_guard():
    sol = family_c(Variant(-1, 1), "tan", None, math.pi / 2.0, 0.0,
                   parse_timefn("0"))
    # ell=pi/2 puts the argument at x; the pole sits at x = pi/2
    assert not sol.valid(0.0, math.pi / 2.0, 0.0)
    assert sol.valid(0.0, 0.3, 0.0)
    u, v, ok = eval_solution(sol, 0.0, math.pi / 2.0, 0.0)
    assert not ok and math.isnan(v)


def test_family_c_time_independent_when_beta_constant():
    sol = family_c(Variant(-1, -1), "cn", 0.4, 0.2, 0.1, parse_timefn("2"))
    assert sol.periodicity.time_independent
    for (x, y) in ((0.3, -0.9), (1.4, 0.2)):
        assert sol.u(0.0, x, y) == sol.u(5.0, x, y)
        assert sol.v(0.0, x, y) == sol.v(5.0, x, y)
    moving = family_c(Variant(-1, -1), "cn", 0.4, 0.2, 0.1,
                      parse_timefn("0.1*t"))
    assert not moving.periodicity.time_independent


def test_family_c_periodicity_metadata():
    m = 0.45
    sol = family_c(Variant(-1, 1), "sn", m, 0.3, 0.0, parse_timefn("0"))
    assert sol.periodicity.period_w == pytest.approx(4.0 * ellipk(m))
    assert sol.periodicity.direction == pytest.approx(
        (math.sin(0.3), math.cos(0.3)))
    dn = family_c(Variant(-1, -1), "dn", m, 0.2, 0.0, parse_timefn("0"))
    assert dn.periodicity.period_w == pytest.approx(2.0 * ellipk(m))
    rat = family_c(Variant(-1, 1), "rational", None, 0.3, 2.5,
                   parse_timefn("0"))
    assert rat.periodicity is None


def test_family_c_negated_amplitude_is_still_exact():
    # u -> -u is a symmetry; the sign of the matched root is a convention.
    from dsexact import verify
    base = family_c(Variant(-1, 1), "sn", 0.6, 0.4, 0.3, parse_timefn("0.1*t"))
    flipped = family_c(Variant(-1, 1), "sn", 0.6, 0.4, 0.3,
                       parse_timefn("0.1*t"),
                       amplitude=-base.provenance["amplitude"])
    pts = [(0.2, 0.3 * i, 0.3 * j) for i in range(-2, 3) for j in range(-2, 3)]
    assert verify(base, pts).passed
    assert verify(flipped, pts).passed


def test_provenance_records_parameters():
    sol = family_c(Variant(1, 1), "csch", None, 0.3, 2.5, parse_timefn("0"))
    assert sol.provenance["family"] == "C"
    assert sol.provenance["kind"] == "csch"
    assert sol.provenance["beta"] == "0"
