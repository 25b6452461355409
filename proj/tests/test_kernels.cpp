#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gfvc/kernels.hpp>
#include <gfvc/specfun.hpp>

#include <cmath>

using namespace gfvc;
using namespace gfvc::kernels;

namespace {
const double kSqrtPi = 1.7724538509055160273;
const std::vector<double> kGrid = {0.1, 0.5, 1.0, 2.0, 10.0};
}  // namespace

TEST_CASE("power pair decomposition") {
    auto p = make_pair(Family::PowerRL, {{"alpha", 0.5}});
    CHECK(p.M.exponent() == doctest::Approx(-0.5));
    CHECK(p.M.regular(0.3) == doctest::Approx(1.0 / kSqrtPi).epsilon(1e-13));
    CHECK(eval_kernel(p, Side::M, 1.0) == doctest::Approx(0.5641895835477563).epsilon(1e-13));
    CHECK(eval_kernel(p, Side::K, 4.0) == doctest::Approx(0.2820947917738781).epsilon(1e-13));
    CHECK_THROWS_AS(eval_kernel(p, Side::M, 0.0), DomainError);
    CHECK_THROWS_AS(make_pair(Family::PowerRL, {{"alpha", 1.2}}), DomainError);
}

TEST_CASE("bessel pair matches the closed alpha=1/2 form") {
    auto p = make_pair(Family::BesselPair, {{"alpha", 0.5}});
    for (double t : {0.1, 0.7, 2.0, 9.0}) {
        const double m_ref = std::cos(2.0 * std::sqrt(t)) / std::sqrt(3.14159265358979324 * t);
        const double k_ref = std::cosh(2.0 * std::sqrt(t)) / std::sqrt(3.14159265358979324 * t);
        CHECK(eval_kernel(p, Side::M, t) == doctest::Approx(m_ref).epsilon(1e-11));
        CHECK(eval_kernel(p, Side::K, t) == doctest::Approx(k_ref).epsilon(1e-11));
    }
    // cross-check against the Bessel-function route of Eqs. with J, I
    auto pa = make_pair(Family::BesselPair, {{"alpha", 0.3}});
    for (double t : {0.2, 1.0, 4.0}) {
        const double m_ref = std::pow(std::sqrt(t), 0.3 - 1.0) * specfun::bessel_j(0.3 - 1.0, 2.0 * std::sqrt(t));
        const double k_ref = std::pow(std::sqrt(t), -0.3) * specfun::bessel_i(-0.3, 2.0 * std::sqrt(t));
        CHECK(eval_kernel(pa, Side::M, t) == doctest::Approx(m_ref).epsilon(1e-10));
        CHECK(eval_kernel(pa, Side::K, t) == doctest::Approx(k_ref).epsilon(1e-10));
    }
}

TEST_CASE("erfc pair K side matches the printed closed form") {
    const double l = 0.8;
    auto p = make_pair(Family::ErfcPair, {{"lambda", l}});
    for (double t : {0.05, 0.3, 1.0, 5.0}) {
        const double ref = 1.0 / std::sqrt(3.14159265358979324 * t) -
                           l * specfun::erfcx(l * std::sqrt(t));
        CHECK(eval_kernel(p, Side::K, t) == doctest::Approx(ref).epsilon(1e-10));
        const double m_ref = 1.0 + l / (kSqrtPi * std::sqrt(t));
        CHECK(eval_kernel(p, Side::M, t) == doctest::Approx(m_ref).epsilon(1e-12));
    }
}

TEST_CASE("damped pair reduces to the power pair at lambda = 0") {
    auto damped = make_pair(Family::DampedPower, {{"alpha", 0.5}, {"lambda", 0.0}});
    auto power = make_pair(Family::PowerRL, {{"alpha", 0.5}});
    for (double t = 0.25; t <= 10.0; t += 0.25) {
        CHECK(eval_kernel(damped, Side::M, t) ==
              doctest::Approx(eval_kernel(power, Side::M, t)).epsilon(1e-13));
        CHECK(eval_kernel(damped, Side::K, t) ==
              doctest::Approx(eval_kernel(power, Side::K, t)).epsilon(1e-13));
    }
}

TEST_CASE("damped pair converges to the power pair as lambda -> 0") {
    auto power = make_pair(Family::PowerRL, {{"alpha", 0.4}});
    double prev = 1e300;
    for (double l : {1e-2, 1e-4}) {
        auto damped = make_pair(Family::DampedPower, {{"alpha", 0.4}, {"lambda", l}});
        double dev = 0.0;
        for (double t = 0.25; t <= 10.0; t += 0.25) {
            dev = std::max(dev, std::abs(eval_kernel(damped, Side::M, t) -
                                         eval_kernel(power, Side::M, t)));
            dev = std::max(dev, std::abs(eval_kernel(damped, Side::K, t) -
                                         eval_kernel(power, Side::K, t)));
        }
        CHECK(dev < prev);
        prev = dev;
    }
}

TEST_CASE("sonin residual: exact Beta identity family") {
    quad::QuadSpec spec;
    for (double alpha : {0.25, 0.5, 0.75}) {
        auto p = make_pair(Family::PowerRL, {{"alpha", alpha}});
        auto rep = sonin_residual(p, kGrid, spec);
        CHECK(rep.max_abs_residual < 1e-10);
    }
}

TEST_CASE("sonin residual: bessel pair") {
    quad::QuadSpec spec;
    auto p = make_pair(Family::BesselPair, {{"alpha", 0.5}});
    auto rep = sonin_residual(p, {0.5, 1.0, 2.0}, spec);
    CHECK(rep.max_abs_residual < 1e-7);
}

TEST_CASE("sonin residual: hanyga pair") {
    quad::QuadSpec spec;
    auto p = make_pair(Family::HanygaPair, {{"alpha", 0.3}, {"beta", 0.7}});
    auto rep = sonin_residual(p, {1.0}, spec);
    CHECK(rep.max_abs_residual < 1e-7);
}

TEST_CASE("catalog pairs pass the verifier on the standard grid") {
    quad::QuadSpec spec;
    for (const auto& entry : catalog()) {
        if (!entry.pair.enabled) continue;
        auto rep = sonin_residual(entry.pair, kGrid, spec);
        INFO("pair ", rep.pair_id);
        const double tol = entry.pair.family == Family::PowerRL ? 1e-10 : 1e-7;
        CHECK(rep.max_abs_residual < tol);
    }
}

TEST_CASE("pair symmetry: swapped catalog pairs still satisfy Sonin") {
    quad::QuadSpec spec;
    for (const auto& entry : catalog()) {
        if (!entry.pair.enabled || entry.pair.classical) continue;
        auto rep = sonin_residual(swapped(entry.pair), {0.5, 1.0, 2.0}, spec);
        INFO("pair ", entry.pair.id());
        CHECK(rep.max_abs_residual < 1e-7);
    }
}

TEST_CASE("mittag-leffler pair ships disabled with the report attached") {
    auto entries = catalog();
    bool found = false;
    for (const auto& entry : entries) {
        if (entry.pair.family != Family::MittagLefflerPair) continue;
        found = true;
        CHECK_FALSE(entry.pair.enabled);
        CHECK_FALSE(entry.pair.disabled_reason.empty());
        CHECK(entry.gate_report.max_abs_residual > 1e-3);
    }
    CHECK(found);
}

TEST_CASE("classical degenerate pair") {
    auto p = make_pair(Family::Classical, {});
    CHECK(p.classical);
    CHECK(eval_kernel(p, Side::M, 3.0) == 1.0);
    CHECK_THROWS_AS(eval_kernel(p, Side::K, 1.0), DomainError);
    quad::QuadSpec spec;
    CHECK(sonin_residual(p, {1.0}, spec).max_abs_residual == 0.0);
}

TEST_CASE("verifier rejects bad inputs") {
    auto p = make_pair(Family::PowerRL, {{"alpha", 0.5}});
    quad::QuadSpec spec;
    CHECK_THROWS_AS(sonin_residual(p, {}, spec), DomainError);
    CHECK_THROWS_AS(sonin_residual(p, {-1.0}, spec), DomainError);
}
