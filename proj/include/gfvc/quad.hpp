#pragma once

#include <gfvc/errors.hpp>

#include <functional>
#include <vector>

namespace gfvc::quad {

/// Parameters of the weakly singular panel quadrature.
struct QuadSpec {
    int nodes_per_panel = 16;  ///< Gauss nodes per panel, 2..64
    int max_panels = 160;      ///< refinement budget
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
    double grading = 2.0;      ///< geometric mesh ratio toward singular endpoints, >= 1
    bool single_pass = false;  ///< skip the refinement loop (coarse preview runs)

    /// Same scheme with both tolerances divided by `factor` (inner levels of
    /// nested operators run tighter so the outer error estimate stays honest).
    QuadSpec tightened(double factor = 10.0) const;

    /// Coarse fixed-cost preset for deeply nested spot checks.
    static QuadSpec fast();

    void validate() const;
};

struct QuadResult {
    double value = 0.0;
    double est_error = 0.0;
};

using Fn = std::function<double(double)>;

/// One Gauss rule: nodes in (-1,1) and positive weights.
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};

/// Gauss-Legendre rule with n points (cached).
const GaussRule& gauss_legendre(int n);

/// Gauss-Jacobi rule with n points for the weight (1-x)^a (1+x)^b on [-1,1],
/// a, b > -1 (cached).  Built by Golub-Welsch on the Jacobi matrix.
const GaussRule& gauss_jacobi(int n, double a, double b);

/// Integrand on [a,b] whose only non-smooth behaviour is algebraic at the
/// endpoints:  G(t) = (t-a)^qa * Ra(t)  near a,  G(t) = (b-t)^qb * Rb(t)
/// near b, with Ra, Rb continuous.  `full` evaluates G at interior points;
/// `reg_a`/`reg_b` evaluate the regular factors on the endpoint panels.
/// When a regular evaluator is absent it is derived from `full` by dividing
/// out the algebraic factor.
struct Integrand1D {
    Fn full;
    double qa = 0.0;
    double qb = 0.0;
    Fn reg_a;  // optional
    Fn reg_b;  // optional
};

/// Integrate an endpoint-singular integrand over [a,b] on a geometrically
/// graded mesh: Gauss-Jacobi panels flush against each endpoint, Gauss-
/// Legendre inside, refinement by node doubling until the tolerance holds.
/// Throws AccuracyError (carrying the best estimate) on non-convergence.
QuadResult integrate_weighted(const Integrand1D& f, double a, double b, const QuadSpec& spec);

/// Adaptive integration of a continuous function over [a,b]; optional
/// declared endpoint exponents qa, qb in (-1, 0].
QuadResult integrate_regular(const Fn& f, double a, double b, const QuadSpec& spec,
                             double qa = 0.0, double qb = 0.0);

/// One additive kernel term  t^p * g(t)  with g continuous on [0,inf).
struct KernelTerm {
    double p = 0.0;
    Fn g;
};

/// Laplace convolution (M * f)(x) = int_0^x M(x-t) f(t) dt where
/// M = sum of KernelTerms and f behaves like t^q * (continuous) at 0.
/// Both endpoints of the integral are weak singularities; the kernel
/// exponent is wired into the Jacobi weight at t = x, the declared f
/// exponent at t = 0.
QuadResult convolve(const std::vector<KernelTerm>& kernel, const Fn& f, double q_f, double x,
                    const QuadSpec& spec);

}  // namespace gfvc::quad
