#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gfvc/fieldlang.hpp>

#include <cmath>
#include <random>

using namespace gfvc;
using namespace gfvc::fieldlang;

TEST_CASE("grammar cases") {
    auto e = parse("x*y + z^0.5");
    CHECK(e.root()->kind == NodeKind::Add);
    CHECK(e.root()->a->kind == NodeKind::Mul);
    CHECK(e.root()->b->kind == NodeKind::Pow);

    auto n = parse("-x^2");
    CHECK(n.root()->kind == NodeKind::Neg);
    CHECK(n.root()->a->kind == NodeKind::Pow);

    // right-associative power with constant folding collapses the exponent chain
    auto r = parse("x^2^3");  // x^(2^3) = x^8
    CHECK(r.root()->kind == NodeKind::Pow);
    CHECK(r.root()->b->value == 8.0);
}

TEST_CASE("syntax errors carry offsets") {
    try {
        parse("x*(");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset == 3);
    }
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("x +"), ParseError);
    CHECK_THROWS_AS(parse("2 x"), ParseError);      // trailing junk
    CHECK_THROWS_AS(parse("foo + 1"), ParseError);  // unknown identifier
    CHECK_THROWS_AS(parse("x^y"), ParseError);      // non-constant exponent
}

TEST_CASE("evaluation") {
    CHECK(parse("x*y").eval({2, 3, 0}) == 6.0);
    CHECK(parse("x^0.5").eval({4, 0, 0}) == 2.0);
    CHECK(parse("exp(x) + sin(y) - cos(z)").eval({0, 0, 0}) == doctest::Approx(0.0));
    CHECK(parse("sqrt(x)*2").eval({9, 0, 0}) == 6.0);
    CHECK_THROWS_AS(parse("1/x").eval({0, 1, 1}), EvalError);
    CHECK_THROWS_AS(parse("x^0.5").eval({-1, 0, 0}), EvalError);
    try {
        parse("y + 1/x").eval({0, 1, 1});
        FAIL("expected EvalError");
    } catch (const EvalError& e) {
        CHECK(e.offset == 5);  // the '/' of the failing subexpression
    }
}

TEST_CASE("round trip: parse(print(e)) is structurally equal") {
    for (const char* src : {
             "x*y + z^0.5",
             "-x^2",
             "(x + y)*(x - y)/(z + 1)",
             "exp(-x*x)*sin(y) + cos(z)^2",
             "x^(-0.5) + 3*x^1.5",
             "sqrt(x*y + 1)",
             "-(x + y)^2",
         }) {
        auto e = parse(src);
        auto rt = parse(e.print());
        INFO(src, " printed as ", e.print());
        CHECK(e.equals(rt));
    }
}

TEST_CASE("diff structural examples") {
    auto d = parse("x^2").diff(0);
    CHECK(d.print() == "2*x^1");
    CHECK(parse("x*y").diff(1).eval({5, 7, 0}) == 5.0);
    CHECK(parse("x^0.5").diff(0).eval({1, 0, 0}) == doctest::Approx(0.5));
}

TEST_CASE("diff agrees with central differences at random points") {
    const char* exprs[] = {
        "x*y + z^2",       "exp(-x)*cos(y)",      "sin(x*y) + z",
        "x^1.5 + y^(-0.5)", "sqrt(x + y*y)",       "x/(1 + y) - z*x",
        "(x + 2*y)^3",      "exp(x*z)*sin(y + z)", "x^2*y^2*z^2",
        "cos(x)^2 + sin(x)^2",
    };
    std::mt19937_64 rng(20240811);
    std::uniform_real_distribution<double> U(0.3, 2.2);
    for (const char* src : exprs) {
        auto e = parse(src);
        for (int v = 0; v < 3; ++v) {
            auto de = e.diff(v);
            for (int rep = 0; rep < 10; ++rep) {
                std::array<double, 3> p = {U(rng), U(rng), U(rng)};
                const double h = 1e-5;
                auto pp = p, pm = p;
                pp[v] += h;
                pm[v] -= h;
                const double fd = (e.eval(pp) - e.eval(pm)) / (2.0 * h);
                const double sym = de.eval(p);
                CHECK(sym == doctest::Approx(fd).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("endpoint exponent inference") {
    CHECK(endpoint_exponent(parse("x^(-0.5) + x"), 0) == doctest::Approx(-0.5));
    CHECK(endpoint_exponent(parse("3 + x*y"), 0) == 0.0);
    CHECK_THROWS_AS(endpoint_exponent(parse("x^(-1.5)"), 0), DomainError);
    // positive leading power clamps to 0 (continuous at the origin)
    CHECK(endpoint_exponent(parse("x^2 + x^3"), 0) == 0.0);
    // other-variable powers do not contribute
    CHECK(endpoint_exponent(parse("y^(-0.5) + x"), 0) == 0.0);
    // sin(u) ~ u, sqrt halves the exponent
    CHECK(endpoint_exponent(parse("sin(x)/x"), 0) == 0.0);
    CHECK(endpoint_exponent(parse("sqrt(x)/x"), 0) == doctest::Approx(-0.5));
    // conservative fallback flags failed inference
    bool ok = true;
    CHECK(endpoint_exponent(parse("exp(1/x)"), 0, &ok) == 0.0);
    CHECK_FALSE(ok);
    // identically zero expression
    CHECK(endpoint_exponent(parse("0*x"), 0) == 0.0);
}

TEST_CASE("freeze_except substitutes the frozen coordinates") {
    auto e = parse("x*y + z^2");
    auto f = e.freeze_except(0, {0.0, 3.0, 2.0});
    CHECK(f.eval({5.0, 99.0, 99.0}) == doctest::Approx(19.0));
    CHECK(f.print() == "x*3 + 4");
}

TEST_CASE("declared variable names") {
    VarNames occ = {"r", "phi", "z"};
    auto e = parse("r*sin(phi)", occ);
    CHECK(e.eval({2.0, 3.14159265358979324 / 2.0, 0.0}) == doctest::Approx(2.0));
    CHECK_THROWS_AS(parse("x + 1", occ), ParseError);
}
