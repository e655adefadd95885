import math

import numpy as np
import pytest

from convexgap.convex_core import (
    ConvexFunction,
    Interval,
    abs_shift,
    affine,
    exponential,
    square,
)
from convexgap.errors import (
    ConvergenceError,
    CrossCheckError,
    DomainError,
    DomainMismatch,
    NonFiniteError,
    ParameterError,
)
from convexgap.harness import function_pool
from convexgap.quadrature import (
    Kernel,
    SineVariant,
    hh_recover,
    integrate,
    kernel_from_csv,
    kernel_from_samples,
    log_limit_kernel,
    power_kernel,
    sine_kernel,
    symmetric_convolution_enclosure,
    uniform_kernel,
    weighted_enclosure,
)

PI = math.pi


# ---------------------------------------------------------------- integrate


def test_integrate_closed_forms():
    I = Interval(0.0, PI)
    assert integrate(np.sin, I) == pytest.approx(2.0, abs=1e-9)
    assert integrate(lambda t: t * np.sin(t), I) == pytest.approx(PI, abs=1e-9)
    assert integrate(np.exp, Interval(-1.0, 2.0)) == pytest.approx(math.e**2 - 1 / math.e, rel=1e-12)


@pytest.mark.parametrize("c,a,b", [(3.0, 0.3, 1.7), (-2.5, -4.0, 1.0), (1e6, 0.0, 1e-3)])
def test_integrate_constant(c, a, b):
    got = integrate(lambda t: np.full_like(t, c), Interval(a, b))
    assert got == pytest.approx(c * (b - a), rel=8 * np.finfo(float).eps)


def test_integrate_scalar_callable():
    assert integrate(math.cos, Interval(0.0, PI / 2)) == pytest.approx(1.0, abs=1e-10)


def test_integrate_kink():
    assert integrate(lambda t: np.abs(t - 0.3), Interval(0.0, 1.0)) == pytest.approx(
        (0.3**2 + 0.7**2) / 2, abs=1e-10
    )


def test_integrate_singular_endpoints():
    assert integrate(lambda t: t**-0.5, Interval(0.0, 1.0)) == pytest.approx(2.0, abs=1e-8)
    assert integrate(lambda t: (1 - t) ** -0.5, Interval(0.0, 1.0)) == pytest.approx(2.0, abs=1e-8)
    assert integrate(np.log, Interval(0.0, 1.0)) == pytest.approx(-1.0, abs=1e-8)


def test_integrate_errors():
    with pytest.raises(ConvergenceError):
        integrate(lambda t: 1.0 / t, Interval(0.0, 1.0))
    with pytest.raises(NonFiniteError):
        integrate(lambda t: np.sqrt(t - 0.5), Interval(0.0, 1.0))
    with pytest.raises(ParameterError):
        integrate(np.sin, Interval(0.0, 1.0), tol=0.0)


# ---------------------------------------------------------------- kernels


def test_kernel_rejects_negative():
    with pytest.raises(ParameterError):
        Kernel(Interval(0.0, 4.0), np.sin, "sin")


def test_power_kernel_masses():
    assert power_kernel(Interval(1.0, 3.0), 1.0).mass == pytest.approx(2.0, abs=1e-15)
    g = power_kernel(Interval(1.0, 3.0), 1.0)
    assert g(2.5) == 1.0
    assert power_kernel(Interval(1.0, 2.0), 2.0).mass == pytest.approx(1.5, abs=1e-15)
    g = power_kernel(Interval(1.0, 4.0), 0.5)
    assert g.mass == pytest.approx(2.0, abs=1e-15)
    assert g.singular_endpoints


def test_power_kernel_errors():
    with pytest.raises(DomainError):
        power_kernel(Interval(0.0, 1.0), 2.0)
    with pytest.raises(ParameterError):
        power_kernel(Interval(1.0, 2.0), 0.0)


@pytest.mark.parametrize("alpha", [-2.0, -1e-4, 1e-4, 0.5, 1.0, 2.0, 3.0])
@pytest.mark.parametrize("a,b", [(0.2, 1.0), (1.0, 4.0), (2.5, 3.0)])
def test_kernel_mass_matches_quadrature(alpha, a, b):
    g = power_kernel(Interval(a, b), alpha)
    assert integrate(g, g.domain) == pytest.approx(g.mass, rel=1e-8)


def test_log_limit_kernel():
    g = log_limit_kernel(Interval(1.0, 2.0))
    assert g.mass == pytest.approx(math.log(2) / 3, abs=1e-16)
    assert integrate(g, g.domain) == pytest.approx(math.log(2) / 3, rel=1e-8)
    t = np.linspace(1.0, 2.0, 100)
    assert np.array_equal(g(t), g(g.domain.reflect(t)))
    with pytest.raises(DomainError):
        log_limit_kernel(Interval(-1.0, 1.0))


@pytest.mark.parametrize("a,b", [(0.1, 5.0), (3.0, 3.5)])
def test_log_limit_mass_matches_quadrature(a, b):
    g = log_limit_kernel(Interval(a, b))
    assert integrate(g, g.domain) == pytest.approx(g.mass, rel=1e-8)


def test_sine_kernels():
    full = sine_kernel(SineVariant.FULL_SINE)
    assert full.domain == Interval(0.0, PI)
    assert full.mass == pytest.approx(2.0, abs=1e-15)
    half = sine_kernel("sinpluscos")
    assert half.domain == Interval(0.0, PI / 2)
    t = np.linspace(0, PI / 2, 50)
    assert np.allclose(half.symmetrized(t), np.sin(t) + np.cos(t), atol=1e-15)
    with pytest.raises(DomainError):
        sine_kernel("sine", Interval(-1.0, 1.0))


def test_kernel_from_csv(tmp_path):
    p = tmp_path / "k.csv"
    p.write_text("t,g\n0,0\n1,2\n2,0\n")
    g = kernel_from_csv(p)
    assert g.domain == Interval(0.0, 2.0)
    assert integrate(g, g.domain) == pytest.approx(2.0, abs=1e-12)


# ---------------------------------------------------------------- enclosures


def test_enclosure_uniform_square(sq01):
    enc = weighted_enclosure(sq01, uniform_kernel(sq01.domain))
    assert (enc.lower, enc.upper) == (0.5, 1.0)
    assert enc.middle == pytest.approx(2 / 3, abs=1e-12)
    assert enc.kernel_mass == pytest.approx(1.0, abs=1e-14)
    assert enc.holds()


def test_enclosure_exp_sine():
    f = exponential(Interval(0.0, PI))
    enc = weighted_enclosure(f, sine_kernel("sine"))
    assert enc.middle == pytest.approx(math.exp(PI) + 1, rel=1e-10)
    assert enc.holds()


def test_enclosure_affine_symmetric_kernel_equality():
    f = affine(Interval(1.0, 3.0), -0.7, 2.2)
    for g in (uniform_kernel(f.domain), log_limit_kernel(f.domain)):
        enc = weighted_enclosure(f, g)
        assert enc.lower == pytest.approx(enc.middle, rel=1e-8)
        assert enc.upper == pytest.approx(enc.middle, rel=1e-8)


def test_enclosure_domain_mismatch(sq01):
    with pytest.raises(DomainMismatch):
        weighted_enclosure(sq01, uniform_kernel(Interval(0.0, 2.0)))


def test_power_kernel_normalized_chain():
    # 2 f(mid) <= alpha/(b^a - a^a) int [t^(a-1) + (a+b-t)^(a-1)] f <= f(a) + f(b)
    f = square(Interval(1.0, 2.0))
    enc = weighted_enclosure(f, power_kernel(f.domain, 2.0))
    lo, mid, up = enc.normalized()
    # int (t + 3 - t) t^2 dt over [1,2] = 7, times alpha/(b^2-a^2) = 2/3
    assert mid == pytest.approx(14 / 3, rel=1e-10)
    assert (lo, up) == pytest.approx((4.5, 5.0), rel=1e-10)


def test_log_limit_chain_square():
    f = square(Interval(1.0, 2.0))
    enc = weighted_enclosure(f, log_limit_kernel(f.domain))
    # int t^2 / (t (3 - t)) dt over [1, 2] = 3 log 2 - 1
    assert enc.middle == pytest.approx(3 * math.log(2) - 1, rel=1e-10)
    assert enc.lower == pytest.approx(2 * 2.25 * math.log(2) / 3, rel=1e-12)
    assert enc.upper == pytest.approx(5 * math.log(2) / 3, rel=1e-12)
    assert enc.holds()


def test_alpha_to_zero_continuity():
    for entry in function_pool(5, 3, positive=True):
        f = entry.f
        ref = weighted_enclosure(f, log_limit_kernel(f.domain)).normalized()
        plus = weighted_enclosure(f, power_kernel(f.domain, 1e-4)).normalized()
        minus = weighted_enclosure(f, power_kernel(f.domain, -1e-4)).normalized()
        for r, p, m in zip(ref, plus, minus):
            assert p == pytest.approx(r, rel=1e-3) and m == pytest.approx(r, rel=1e-3)
        # the two small-alpha middles straddle the limit
        assert min(plus[1], minus[1]) <= ref[1] + 1e-12 <= max(plus[1], minus[1]) + 2e-12


def test_sine_kernel_chain_values():
    f = square(Interval(0.0, PI))
    lo, mid, up = weighted_enclosure(f, sine_kernel("sine")).normalized()
    assert lo == pytest.approx(2 * (PI / 2) ** 2, rel=1e-12)
    assert mid == pytest.approx(PI**2 - 4, rel=1e-9)
    assert up == pytest.approx(PI**2, rel=1e-12)
    c = affine(Interval(0.0, PI / 2), 1.7, 0.0)
    enc = weighted_enclosure(c, sine_kernel("sinpluscos"))
    assert (enc.lower, enc.middle, enc.upper) == pytest.approx((3.4, 3.4, 3.4), rel=1e-10)


def test_symmetric_convolution():
    f = square(Interval(-1.0, 1.0))
    enc = symmetric_convolution_enclosure(f, uniform_kernel(f.domain), 1.0)
    # upper is [f(-1) + f(1)] * int g = 2 * 2
    assert enc.lower == 0.0 and enc.upper == pytest.approx(4.0, abs=1e-14)
    assert enc.middle == pytest.approx(4 / 3, abs=1e-12)

    c = ConvexFunction(Interval(-1.0, 1.0), np.cosh)
    tent = Kernel(c.domain, lambda t: 1 - np.abs(t), "tent")
    enc = symmetric_convolution_enclosure(c, tent, 1.0)
    assert enc.middle == pytest.approx(4 * (math.cosh(1) - 1), rel=1e-10)
    assert enc.lower == pytest.approx(2.0, rel=1e-10)
    assert enc.upper == pytest.approx(2 * math.cosh(1), rel=1e-10)
    assert enc.holds()

    lin = affine(Interval(-2.0, 2.0), 0.5, 3.0)
    even = Kernel(lin.domain, lambda t: t * t, "t^2")
    enc = symmetric_convolution_enclosure(lin, even, 2.0)
    assert enc.lower == pytest.approx(enc.middle, rel=1e-10)
    assert enc.upper == pytest.approx(enc.middle, rel=1e-10)

    with pytest.raises(DomainError):
        symmetric_convolution_enclosure(square(Interval(0.0, 1.0)), uniform_kernel(Interval(0.0, 1.0)), 1.0)


def test_symmetrization_identity():
    rng = np.random.Generator(np.random.PCG64(8))
    for entry in function_pool(50, 4, positive=True):
        f = entry.f
        knots = np.linspace(f.a, f.b, 6)
        g = kernel_from_samples(knots, rng.uniform(0, 3, 6))
        left = integrate(lambda t: (f(t) + f(f.domain.reflect(t))) * g(t), f.domain)
        right = integrate(lambda t: g.symmetrized(t) * f(t), f.domain)
        assert left == pytest.approx(right, rel=1e-8, abs=1e-12)
        assert weighted_enclosure(f, g).holds(1e-8, 1e-8)


# ---------------------------------------------------------------- hermite-hadamard


def test_hh_recover_examples(sq01, exp01):
    assert hh_recover(sq01) == pytest.approx((0.25, 1 / 3, 0.5), abs=1e-9)
    e = math.e
    assert hh_recover(exp01) == pytest.approx((math.sqrt(e), e - 1, (1 + e) / 2), abs=1e-9)
    lo, mid, up = hh_recover(affine(Interval(-1.0, 2.0), 0.3, 1.1))
    assert lo == pytest.approx(mid, abs=1e-12) and up == pytest.approx(mid, abs=1e-12)


def test_hh_recover_kinked():
    lo, mid, up = hh_recover(abs_shift(Interval(-1.0, 2.0), 0.25), n_p=1000)
    assert mid == pytest.approx((1.25**2 + 1.75**2) / 2 / 3, abs=1e-9)
    assert lo <= mid <= up


def test_hh_recover_errors(sq01):
    with pytest.raises(ParameterError):
        hh_recover(sq01, n_p=1)


def test_hh_cross_check_catches_bad_quadrature(monkeypatch, sq01):
    import convexgap.quadrature as q

    monkeypatch.setattr(q, "integrate", lambda h, I, tol=1e-10: 0.5)
    with pytest.raises(CrossCheckError):
        q.hh_recover(sq01)
