#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gfvc/quad.hpp>
#include <gfvc/specfun.hpp>

#include <cmath>

using namespace gfvc;
using namespace gfvc::quad;

namespace {

const double kSqrtPi = 1.7724538509055160273;

// h_a(t) = t^(a-1)/Gamma(a) as a single kernel term
std::vector<KernelTerm> power_kernel(double a) {
    const double c = specfun::recip_gamma(a);
    return {{a - 1.0, [c](double) { return c; }}};
}

double h(double a, double x) { return std::pow(x, a - 1.0) * specfun::recip_gamma(a); }

}  // namespace

TEST_CASE("gauss rules reproduce known weights") {
    const GaussRule& g2 = gauss_legendre(2);
    CHECK(g2.x[0] == doctest::Approx(-0.5773502691896257).epsilon(1e-13));
    CHECK(g2.x[1] == doctest::Approx(0.5773502691896257).epsilon(1e-13));
    CHECK(g2.w[0] == doctest::Approx(1.0).epsilon(1e-13));

    // weight sums equal the zeroth moment
    for (int n : {4, 16, 40}) {
        const GaussRule& gl = gauss_legendre(n);
        double s = 0.0;
        for (double w : gl.w) s += w;
        CHECK(s == doctest::Approx(2.0).epsilon(1e-13));
    }
    const GaussRule& gj = gauss_jacobi(12, -0.5, 0.0);
    double s = 0.0;
    for (double w : gj.w) s += w;
    CHECK(s == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));  // int (1-x)^-1/2 dx

    // Jacobi rule integrates (1-x)^a x^9 exactly (degree 9 < 2n-1).
    // Exact value by substituting u = 1-x and expanding (1-u)^9:
    //   int_0^2 u^-0.3 (1-u)^9 du = sum_k C(9,k) (-1)^k 2^(k+0.7)/(k+0.7)
    const GaussRule& gj2 = gauss_jacobi(8, -0.3, 0.0);
    double v = 0.0;
    for (std::size_t i = 0; i < gj2.x.size(); ++i) v += gj2.w[i] * std::pow(gj2.x[i], 9);
    double ref = 0.0;
    double binom = 1.0;
    for (int k = 0; k <= 9; ++k) {
        ref += binom * (k % 2 ? -1.0 : 1.0) * std::pow(2.0, k + 0.7) / (k + 0.7);
        binom *= (9.0 - k) / (k + 1.0);
    }
    CHECK(v == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("integrate_regular on smooth oracles") {
    QuadSpec spec;
    auto sq = integrate_regular([](double x) { return x * x; }, 0.0, 1.0, spec);
    CHECK(sq.value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    auto sn = integrate_regular([](double x) { return std::sin(x); }, 0.0, 3.14159265358979324, spec);
    CHECK(sn.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("integrate_regular with declared endpoint exponent") {
    QuadSpec spec;
    // int_0^1 (1-x)^-1/2 / sqrt(pi) dx = 2/sqrt(pi)
    auto r = integrate_regular([](double x) { return std::pow(1.0 - x, -0.5) / kSqrtPi; }, 0.0, 1.0,
                               spec, 0.0, -0.5);
    CHECK(r.value == doctest::Approx(2.0 / kSqrtPi).epsilon(1e-11));
}

TEST_CASE("convolution oracles from the Beta identity") {
    QuadSpec spec;
    // h_1/2 * 1 at 1 = h_3/2(1)
    auto a = convolve(power_kernel(0.5), [](double) { return 1.0; }, 0.0, 1.0, spec);
    CHECK(a.value == doctest::Approx(1.1283791670955126).epsilon(1e-11));

    // h_1/2 * h_1/2 at 1 = h_1(1) = 1
    auto b = convolve(
        power_kernel(0.5), [](double t) { return h(0.5, t); }, -0.5, 1.0, spec);
    CHECK(b.value == doctest::Approx(1.0).epsilon(1e-11));

    // classical kernel (p=0, g=1), f = t, x = 2 -> 2
    std::vector<KernelTerm> classical = {{0.0, [](double) { return 1.0; }}};
    auto c = convolve(classical, [](double t) { return t; }, 0.0, 2.0, spec);
    CHECK(c.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("power-law oracle family h_a * h_b = h_{a+b}") {
    QuadSpec spec;
    for (double a : {0.25, 0.5, 0.75}) {
        for (double b : {0.25, 0.5, 0.75}) {
            for (double x : {0.5, 1.0, 3.0}) {
                auto r = convolve(
                    power_kernel(a), [b](double t) { return h(b, t); }, b - 1.0, x, spec);
                CHECK(r.value == doctest::Approx(h(a + b, x)).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("convolution linearity") {
    QuadSpec spec;
    auto k = power_kernel(0.4);
    const Fn f = [](double t) { return std::exp(-t); };
    const Fn g = [](double t) { return t * t; };
    const double cf = 2.5, cg = -1.25;
    const Fn mix = [&](double t) { return cf * f(t) + cg * g(t); };
    const double lhs = convolve(k, mix, 0.0, 1.5, spec).value;
    const double rhs =
        cf * convolve(k, f, 0.0, 1.5, spec).value + cg * convolve(k, g, 0.0, 1.5, spec).value;
    CHECK(lhs == doctest::Approx(rhs).epsilon(2e-9));
}

TEST_CASE("monotone refinement on the oracle family") {
    // Halving abs_tol must not increase the true error.
    const double exact = h(1.0, 1.0);  // h_0.5 * h_0.5 at 1
    double prev_err = 1e300;
    for (double tol : {1e-4, 5e-5, 2.5e-5, 1e-6, 1e-8}) {
        QuadSpec spec;
        spec.abs_tol = tol;
        spec.rel_tol = tol;
        auto r = convolve(
            power_kernel(0.5), [](double t) { return h(0.5, t); }, -0.5, 1.0, spec);
        const double err = std::abs(r.value - exact);
        CHECK(err <= prev_err + 1e-14);
        prev_err = err;
    }
}

TEST_CASE("non-convergence raises an accuracy error with a best estimate") {
    QuadSpec spec;
    spec.max_panels = 8;
    spec.abs_tol = 1e-14;
    spec.rel_tol = 1e-14;
    // nearby pole makes the integrand brutally stiff for an 8-panel budget
    const Fn nasty = [](double t) { return 1.0 / (1.0000001 - t); };
    CHECK_THROWS_AS(integrate_regular(nasty, 0.0, 1.0, spec), AccuracyError);
}

TEST_CASE("degenerate and invalid inputs") {
    QuadSpec spec;
    CHECK(integrate_regular([](double) { return 1.0; }, 2.0, 2.0, spec).value == 0.0);
    CHECK(convolve(power_kernel(0.5), [](double) { return 1.0; }, 0.0, 0.0, spec).value == 0.0);
    CHECK_THROWS_AS(convolve(power_kernel(0.5), [](double) { return 1.0; }, 0.5, 1.0, spec),
                    DomainError);
    QuadSpec bad;
    bad.nodes_per_panel = 1;
    CHECK_THROWS_AS(bad.validate(), DomainError);
}
