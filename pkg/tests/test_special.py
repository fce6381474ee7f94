"""Tests for log-scaled Laguerre evaluation, the Airy family, and quadrature grids.

The Airy oracles here are deliberately independent of the production
evaluator: a Maclaurin series and a saddle-free contour-integral quadrature.
"""

import math

import numpy as np
import pytest
from numpy.polynomial.legendre import leggauss

from swl.errors import DomainError, SizeError
from swl.special import (
    LogScaled,
    airy_ai,
    airy_ai_prime,
    airy_s1,
    airy_tail,
    gauss_legendre,
    half_line_grid,
    laguerre,
    laguerre_deriv,
    laguerre_table,
    signed_exp,
    signed_log,
    signed_sum_pair,
)


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------

def laguerre_series(n, alpha, x):
    """Explicit series sum_k binom(n+alpha, n-k) (-x)^k / k!."""
    total = 0.0
    for k in range(n + 1):
        total += math.comb(n + alpha, n - k) * (-x) ** k / math.factorial(k)
    return total


def airy_maclaurin(x):
    """Maclaurin series for Ai; trustworthy in double precision for |x| <= 4.5."""
    c1 = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
    c2 = 3.0 ** (-1.0 / 3.0) / math.gamma(1.0 / 3.0)
    x3 = x ** 3
    f_term, f_sum = 1.0, 1.0
    g_term, g_sum = x, x
    for k in range(0, 60):
        f_term *= x3 / ((3 * k + 2) * (3 * k + 3))
        g_term *= x3 / ((3 * k + 3) * (3 * k + 4))
        f_sum += f_term
        g_sum += g_term
        if abs(f_term) < 1e-20 and abs(g_term) < 1e-20:
            break
    return c1 * f_sum - c2 * g_sum


def airy_contour(xi, ray_cut=16.0, ray_panels=48, rule=32):
    """Contour-integral evaluation of Ai on the standard three-piece path
    (ray in at arg pi/3, unit arc through 1, ray out at arg -pi/3)."""
    gl_x, gl_w = leggauss(rule)
    total = 0.0 + 0.0j
    # incoming ray: z = s e^{i pi/3}, s from ray_cut down to 1
    w_in = np.exp(1j * np.pi / 3.0)
    edges = np.linspace(1.0, ray_cut, ray_panels + 1)
    for lo, hi in zip(edges[:-1], edges[1:]):
        s = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gl_x
        z = s * w_in
        vals = np.exp(-xi * z + z ** 3 / 3.0)
        total += -w_in * 0.5 * (hi - lo) * np.sum(gl_w * vals)  # s decreasing
    # clockwise unit arc from e^{i pi/3} to e^{-i pi/3}
    t = 0.5 * (2.0 / 3.0) * gl_x  # t in [-1/3, 1/3]
    z = np.exp(-1j * np.pi * t)
    vals = np.exp(-xi * z + z ** 3 / 3.0) * (-1j * np.pi * z)
    total += 0.5 * (2.0 / 3.0) * np.sum(gl_w * vals)
    # outgoing ray: z = s e^{-i pi/3}, s from 1 to ray_cut
    w_out = np.exp(-1j * np.pi / 3.0)
    for lo, hi in zip(edges[:-1], edges[1:]):
        s = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gl_x
        z = s * w_out
        vals = np.exp(-xi * z + z ** 3 / 3.0)
        total += w_out * 0.5 * (hi - lo) * np.sum(gl_w * vals)
    val = -total / (2j * np.pi)
    assert abs(val.imag) < 1e-13
    return val.real


# ---------------------------------------------------------------------------
# log-scaled arithmetic
# ---------------------------------------------------------------------------

def test_logscaled_roundtrip():
    # exp(log .) costs ~eps*|logmag| in relative accuracy at extreme magnitudes
    for v in (0.0, 3.5, -2e-200, 1e200):
        ls = LogScaled.from_float(v)
        assert ls.value == pytest.approx(v, rel=1e-12)
        assert (ls.sign == 0) == (v == 0.0)


def test_signed_sum_pair_cancellation():
    s, l = signed_sum_pair(1.0, 100.0, -1.0, 100.0)
    assert s == 0.0 and l == -np.inf
    s, l = signed_sum_pair(1.0, 0.0, -1.0, -np.inf)
    assert signed_exp(s, l) == pytest.approx(1.0)


def test_signed_log_exp_roundtrip():
    x = np.array([-3.0, 0.0, 1e-280, 2e250])
    s, l = signed_log(x)
    np.testing.assert_allclose(signed_exp(s, l), x, rtol=1e-12)


# ---------------------------------------------------------------------------
# Laguerre
# ---------------------------------------------------------------------------

def test_laguerre_base_cases():
    assert laguerre(0, 3, 7.7).value == 1.0
    assert laguerre(1, 2, 3.0).value == pytest.approx(0.0, abs=1e-14)  # 1 + alpha - x
    assert laguerre(-1, 2, 1.0).value == 0.0


def test_laguerre_against_series_oracle():
    assert laguerre(2, 0, 2.0).value == pytest.approx(-1.0, rel=1e-14)
    for n, alpha, x in [(2, 0, 2.0), (5, 3, 1.3), (8, 6, 11.0), (12, 2, 0.4)]:
        expect = laguerre_series(n, alpha, x)
        assert laguerre(n, alpha, x).value == pytest.approx(expect, rel=1e-11)


def test_laguerre_large_parameters_stay_finite():
    # alpha = 2(M-N) up to ~80, argument 2Mx up to ~400: the log form must not overflow
    signs, logs = laguerre_table(79, 76.0, np.array([400.0, 5.0, 1e-3]))
    assert np.all(np.isfinite(logs[np.asarray(signs) != 0]))
    # spot check against exact rational evaluation through fractions
    from fractions import Fraction

    x = Fraction(5)
    f_prev, f_cur = Fraction(1), Fraction(1 + 76) - x
    for n in range(2, 80):
        f_prev, f_cur = f_cur, ((Fraction(2 * n - 1 + 76) - x) * f_cur - Fraction(n - 1 + 76) * f_prev) / n
    exact = float(f_cur)
    got = signed_exp(signs[79, 1], logs[79, 1])
    assert got == pytest.approx(exact, rel=1e-10)


def test_laguerre_deriv_closed_cases():
    assert laguerre_deriv(0, 4, 2.2).value == 0.0
    for x in (0.3, 1.0, 9.0):
        assert laguerre_deriv(1, 5, x).value == pytest.approx(-1.0, rel=1e-13)


def test_laguerre_deriv_finite_difference():
    n, alpha, x = 3, 2, 1.7
    h = 1e-6
    fd = (laguerre(n, alpha, x + h).value - laguerre(n, alpha, x - h).value) / (2 * h)
    assert laguerre_deriv(n, alpha, x).value == pytest.approx(fd, abs=1e-8 * max(1.0, abs(fd)))


def test_laguerre_deriv_at_zero_limit():
    # series limit -binom(n+alpha, n-1)
    for n, alpha in [(3, 2), (5, 0), (7, 4)]:
        expect = -math.comb(n + alpha, n - 1)
        assert laguerre_deriv(n, alpha, 0.0).value == pytest.approx(expect, rel=1e-13)


def test_laguerre_differential_identity():
    # x L_n' = n L_n - (n+alpha) L_{n-1}, with L' from central differences
    for n in (1, 4, 12):
        for alpha in (0, 3, 10):
            for x in (0.1, 1.0, 5.0, 20.0):
                h = 1e-6 * max(1.0, x)
                lp = (laguerre(n, alpha, x + h).value - laguerre(n, alpha, x - h).value) / (2 * h)
                lhs = x * lp
                rhs = n * laguerre(n, alpha, x).value - (n + alpha) * laguerre(n - 1, alpha, x).value
                scale = max(1.0, abs(rhs))
                assert lhs == pytest.approx(rhs, abs=1e-9 * scale * 200)


def test_laguerre_orthogonality_by_quadrature():
    # int_0^inf L_j L_k x^alpha e^-x dx = delta_jk (j+alpha)!/j!
    for alpha in (0, 2, 6):
        grid = half_line_grid(0.0, 350, L=float(alpha) + 10.0)
        signs, logs = laguerre_table(8, float(alpha), grid.nodes)
        vals = signed_exp(signs, logs)
        wfun = grid.weights * grid.nodes ** alpha * np.exp(-grid.nodes)
        for j in range(9):
            for k in range(j, 9):
                q = np.sum(wfun * vals[j] * vals[k])
                expect = math.factorial(j + alpha) / math.factorial(j) if j == k else 0.0
                scale = math.factorial(j + alpha) / math.factorial(j)
                assert q == pytest.approx(expect, abs=1e-9 * scale)


# ---------------------------------------------------------------------------
# Airy family
# ---------------------------------------------------------------------------

def test_airy_maclaurin_vs_contour_at_zero():
    # two independent evaluation routes agree at machine level
    assert airy_maclaurin(0.0) == pytest.approx(airy_contour(0.0), abs=1e-12)
    assert airy_ai(0.0) == pytest.approx(airy_maclaurin(0.0), abs=1e-13)


@pytest.mark.parametrize("x", [-4.0, -2.0, -0.7, 0.0, 1.3, 3.0, 4.4])
def test_airy_production_matches_oracles(x):
    assert airy_ai(x) == pytest.approx(airy_maclaurin(x), abs=1e-12)
    assert airy_ai(x) == pytest.approx(airy_contour(x), abs=1e-12)


def test_airy_prime_finite_difference():
    for x in (-3.0, 0.0, 2.0):
        h = 1e-6
        fd = (airy_ai(x + h) - airy_ai(x - h)) / (2 * h)
        assert airy_ai_prime(x) == pytest.approx(fd, abs=1e-9)


def test_airy_decay_and_monotonicity():
    assert airy_ai(30.0) < 1e-30
    xs = np.linspace(1.0, 30.0, 200)
    vals = airy_ai(xs)
    assert np.all(np.diff(vals) < 0.0)
    assert np.all(vals > 0.0)


def test_airy_total_mass_against_tail_oracle():
    # quadrature of int_{-40}^{40} Ai dt cross-checked against B(-40) - B(40);
    # the oscillatory left tail keeps this visibly away from 1.
    gl_x, gl_w = leggauss(48)
    total = 0.0
    for a in np.arange(-40.0, 40.0, 1.0):
        total += 0.5 * np.sum(gl_w * airy_ai(a + 0.5 + 0.5 * gl_x))
    expect = airy_tail(-40.0) - airy_tail(40.0)
    assert total == pytest.approx(expect, abs=1e-8)
    assert abs(total - 1.0) < 0.05  # mass differs from 1 only by the oscillatory tail


# 30-digit reference values for B(x) = int_x^inf Ai(t) dt (mpmath quadrature)
_TAIL_REFERENCE = {
    -10.0: 1.0990317364675462508,
    -3.0: 1.13479617600465679,
    0.0: 1.0 / 3.0,
    1.5: 0.046546583424635772106,
    4.0: 0.00044068794721120636315,
}


def test_airy_tail_values():
    assert airy_tail(30.0) == pytest.approx(0.0, abs=1e-12)
    for x, expect in _TAIL_REFERENCE.items():
        assert airy_tail(x) == pytest.approx(expect, abs=1e-12)
    with pytest.raises(DomainError):
        airy_tail(-90.0)


def test_airy_tail_s1_complement():
    for x in (-5.0, 0.0, 2.0):
        assert airy_s1(x) + airy_tail(x) == 1.0


def test_airy_tail_derivative():
    for x in (-2.0, 0.0, 2.0):
        h = 1e-5
        fd = (airy_tail(x + h) - airy_tail(x - h)) / (2 * h)
        assert fd == pytest.approx(-airy_ai(x), abs=1e-7)


def test_airy_kernel_factorization_symmetry():
    # int_0^inf Ai(xi+t) Ai(eta+t) dt is symmetric in (xi, eta)
    grid = half_line_grid(0.0, 160, L=4.0)
    rng = np.random.default_rng(7)
    for _ in range(5):
        xi, eta = rng.uniform(-4.0, 3.0, size=2)
        k1 = np.sum(grid.weights * airy_ai(xi + grid.nodes) * airy_ai(eta + grid.nodes))
        k2 = np.sum(grid.weights * airy_ai(eta + grid.nodes) * airy_ai(xi + grid.nodes))
        assert k1 == pytest.approx(k2, abs=1e-11)


# ---------------------------------------------------------------------------
# quadrature grids
# ---------------------------------------------------------------------------

def test_gauss_legendre_exactness():
    g = gauss_legendre(2)
    assert np.sum(g.weights * g.nodes ** 2) == pytest.approx(2.0 / 3.0, abs=1e-15)
    assert np.sum(g.weights) == pytest.approx(2.0, abs=1e-14)


def test_gauss_legendre_cosine():
    g = gauss_legendre(64)
    assert np.sum(g.weights * np.cos(g.nodes)) == pytest.approx(2.0 * math.sin(1.0), abs=1e-13)


def test_gauss_legendre_size_errors():
    for bad in (1, 0, 513):
        with pytest.raises(SizeError):
            gauss_legendre(bad)


def test_half_line_exponential():
    for T in (0.0, 2.5, -1.0):
        g = half_line_grid(T, 64, L=1.0)
        assert np.all(g.nodes > T)
        q = np.sum(g.weights * np.exp(-(g.nodes - T)))
        assert q == pytest.approx(1.0, abs=1e-10)


def test_half_line_doubling_stability():
    def gaussian_integral(m):
        g = half_line_grid(0.0, m, L=1.0)
        return np.sum(g.weights * np.exp(-g.nodes ** 2))

    assert abs(gaussian_integral(128) - gaussian_integral(64)) < 1e-12


def test_half_line_requires_positive_scale():
    with pytest.raises(SizeError):
        half_line_grid(0.0, 32, L=0.0)
