import math

import pytest

from obrechkoff import ConfigurationError, duffing, get_problem, linear_forced, rational_problem


def test_registry(ctx50):
    for name in ("duffing", "linear", "rational"):
        assert get_problem(name, ctx50).name == name
    with pytest.raises(ConfigurationError):
        get_problem("kepler", ctx50)


# ----------------------------------------------------------------- linear

def test_linear_initial_data_consistency(ctx50):
    p = linear_forced(ctx50)
    assert p.reference(p.x0) == p.y0 == 1
    assert p.reference_prime(p.x0) == p.yp0 == 11


def test_linear_f4_is_yprime_free(ctx50):
    p = linear_forced(ctx50)
    a = p.f4(ctx50.mpf(0), ctx50.mpf(1), ctx50.mpf(123))
    b = p.f4(ctx50.mpf(0), ctx50.mpf(1), ctx50.mpf(-7))
    assert a == b == 10000


def test_linear_reference_satisfies_ode(ctx50):
    p = linear_forced(ctx50)
    x = ctx50.mpf(1)
    y = p.reference(x)
    ypp = -ctx50.mp.sin(x) - 100 * (ctx50.mp.sin(10 * x) + ctx50.mp.cos(10 * x))
    assert abs(ypp - p.f2(x, y, None)) < ctx50.mpf(10) ** (5 - 50)


def _exact_linear_derivative(ctx, x, k):
    # k-th derivative of sin x + sin 10x + cos 10x
    sin, cos = ctx.mp.sin, ctx.mp.cos
    cyc = [sin, cos, lambda t: -sin(t), lambda t: -cos(t)]
    a = cyc[k % 4](x)
    b = 10 ** k * cyc[k % 4](10 * x)
    c = 10 ** k * cyc[(k + 1) % 4](10 * x)
    return a + b + c


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6, 7])
def test_linear_closures_exact(ctx50, k):
    p = linear_forced(ctx50)
    for i in range(10):
        x = ctx50.mpf(i) / 3 + ctx50.mpf("0.1")
        y = p.reference(x)
        yp = p.reference_prime(x)
        got = p.closure(k)(x, y, yp)
        assert abs(got - _exact_linear_derivative(ctx50, x, k)) < ctx50.mpf(10) ** -42


# --------------------------------------------------------------- rational

def test_rational_reference_values(ctx50):
    p = rational_problem(ctx50)
    assert p.reference(ctx50.real("4.5")) == ctx50.mpf(1) / 10
    assert p.f2(ctx50.mpf(0), ctx50.mpf(1), ctx50.mpf(-2)) == 8
    assert p.default_omega is None


@pytest.mark.parametrize("k", [2, 3, 4, 5, 6, 7])
@pytest.mark.parametrize("xv", ["0", "1", "4.5"])
def test_rational_closures_match_exact_derivatives(ctx50, k, xv):
    # y(x) = (1+2x)^(-1) has y^(k) = (-2)^k k! (1+2x)^(-(k+1))
    p = rational_problem(ctx50)
    x = ctx50.mpf(xv)
    y = p.reference(x)
    yp = p.reference_prime(x)
    exact = ctx50.mpf((-2) ** k * math.factorial(k)) / (1 + 2 * x) ** (k + 1)
    got = p.closure(k)(x, y, yp)
    assert abs(got - exact) < ctx50.mpf(10) ** -42 * max(1, abs(exact))


# ---------------------------------------------------------------- duffing

def test_duffing_initial_value_vs_reference(ctx50):
    # the tabulated reference amplitudes reproduce y0 only to ~2e-12: the
    # reference is itself a truncated harmonic expansion
    p = duffing(ctx50)
    assert abs(p.reference(p.x0) - p.y0) < ctx50.mpf("3e-12")
    assert p.reference_prime(p.x0) == 0 == p.yp0


def test_duffing_printed_derivative_forms(ctx50):
    p = duffing(ctx50)
    x = ctx50.mpf(0)
    y, yp = p.y0, p.yp0
    B = ctx50.rational(2, 1000)
    om = ctx50.rational(101, 100)
    f3 = -(1 + 3 * y * y) * yp - B * om * ctx50.mp.sin(om * x)
    f4 = (-(1 + 3 * y * y) * p.f2(x, y, yp) - 6 * y * yp * yp
          - B * om ** 2 * ctx50.mp.cos(om * x))
    assert p.f3(x, y, yp) == f3
    assert p.f4(x, y, yp) == f4


def test_duffing_reference_residual_small(ctx50):
    # g'' + g + g^3 - B cos(omega x) stays below the truncation floor
    p = duffing(ctx50)
    B = ctx50.rational(2, 1000)
    om = ctx50.rational(101, 100)
    eps = ctx50.mpf("1e-6")
    worst = ctx50.mpf(0)
    for i in range(12):
        x = p.x_end * i / 11
        g = p.reference(x)
        gpp = (p.reference(x + eps) - 2 * g + p.reference(x - eps)) / eps ** 2
        worst = max(worst, abs(gpp + g + g ** 3 - B * ctx50.mp.cos(om * x)))
    assert worst < ctx50.mpf("5e-10")


@pytest.mark.parametrize("k", [3, 4, 5, 6, 7])
def test_duffing_higher_closures_by_finite_differences(ctx50, k):
    # f_{k} should be the total x-derivative of f_{k-1} along trajectories;
    # checked with central differences along the reference orbit.  The
    # reference solves the equation only to ~5e-10, which floors the
    # achievable agreement for the y'-sensitive closures.
    p = duffing(ctx50)
    x = ctx50.mpf("2.3")
    d = ctx50.mpf("1e-3")
    lo, hi = x - d, x + d
    fk = p.closure(k)
    fk1 = p.closure(k - 1)
    deriv = (fk1(hi, p.reference(hi), p.reference_prime(hi))
             - fk1(lo, p.reference(lo), p.reference_prime(lo))) / (2 * d)
    got = fk(x, p.reference(x), p.reference_prime(x))
    assert abs(deriv - got) < ctx50.mpf("1e-5")


def test_duffing_span_and_omega(ctx50):
    p = duffing(ctx50)
    assert abs(p.x_end - ctx50.real("40.5") * ctx50.pi / ctx50.real("1.01")) == 0
    assert p.default_omega == ctx50.real("1.01")
