#pragma once

#include <gfvc/fieldlang.hpp>
#include <gfvc/kernels.hpp>
#include <gfvc/quad.hpp>

#include <cstdint>

namespace gfvc::gfc1d {

/// A one-variable profile f on (0, inf) with its first derivative and the
/// declared endpoint exponents (leading powers at 0, in (-1, 0]).
struct Profile1D {
    quad::Fn f;
    quad::Fn df;
    double q_f = 0.0;
    double q_df = 0.0;
    quad::Fn d2f;             // optional; needed by nested derivative paths
    double q_d2f = 0.0;
    bool fd_fallback = false; // df synthesized by finite differences (flagged in reports)
};

/// Profile from a (frozen, single-variable) expression: symbolic derivative
/// plus endpoint-exponent inference.
Profile1D profile_from_expr(const fieldlang::FieldExpr& e, int var);

/// Profile for an opaque callable: central finite differences (h = 1e-5,
/// one Richardson step) stand in for the derivative, flagged.
Profile1D profile_from_fn(quad::Fn f, double q_f = 0.0);

/// Spot-verify df against central differences at `points` deterministic
/// pseudo-random points of [lo, hi]; throws DomainError on disagreement.
void verify_derivative(const Profile1D& prof, double lo, double hi, int points = 5,
                       std::uint64_t seed = 0x5eed5eedULL);

/// GFI  (M * f)(x); Classical pair degenerates to the plain integral.
double gfi(const kernels::KernelPair& pair, const Profile1D& prof, double x,
           const quad::QuadSpec& spec);

/// Caputo-type GFD  (K * f')(x); Classical pair degenerates to f'(x).
double gfd_caputo(const kernels::KernelPair& pair, const Profile1D& prof, double x,
                  const quad::QuadSpec& spec);

/// Riemann-Liouville-type GFD through the identity  D f = D* f + K(x) f(0);
/// requires f bounded at 0 (q_f = 0).
double gfd_rl(const kernels::KernelPair& pair, const Profile1D& prof, double x,
              const quad::QuadSpec& spec);

/// Interval GFI  sgn(b-a) * (I^max - I^min)  with I^0 = 0.
double gfi_interval(const kernels::KernelPair& pair, const Profile1D& prof, double a, double b,
                    const quad::QuadSpec& spec);

/// Interval GFD, Caputo-type differences.
double gfd_interval(const kernels::KernelPair& pair, const Profile1D& prof, double a, double b,
                    const quad::QuadSpec& spec);

struct AdditivityResidual {
    double integral = 0.0;    ///< |I_[a,b] + I_[b,c] - I_[a,c]|
    double derivative = 0.0;  ///< GFD analog
};
AdditivityResidual additivity_residual(const kernels::KernelPair& pair, const Profile1D& prof,
                                       double a, double b, double c, const quad::QuadSpec& spec);

struct FtResiduals {
    double ft2 = 0.0;  ///< |I_[a,x] D* f - (f(x) - f(a))|
    double ft1 = 0.0;  ///< |D* (I_[a,.] g)(x) - g(x)|
};

/// Fundamental-theorem residuals.  ft2 uses prof_f; ft1 builds the GFI image
/// of prof_g internally and differentiates it through the exact relation
/// (M*g)' = M g(0) + (M*g')  (no numerical differentiation of quadrature).
FtResiduals ft_residuals(const kernels::KernelPair& pair, const Profile1D& prof_f,
                         const Profile1D& prof_g, double a, double x, const quad::QuadSpec& spec);

/// Negative control of the second FT with a shifted lower limit:
/// |D*_x [ I_[a,.] f ] - (f(x) - f(a))|, which stays of order |f(a)| for
/// a > 0 instead of vanishing.
double shifted_ft2_residual(const kernels::KernelPair& pair, const Profile1D& prof, double a,
                            double x, const quad::QuadSpec& spec);

/// D*(f g)(x) - (D*f)(x) g(x) - f(x) (D*g)(x): the product-rule defect.
double leibniz_defect(const kernels::KernelPair& pair, const fieldlang::FieldExpr& f,
                      const fieldlang::FieldExpr& g, int var, double x,
                      const quad::QuadSpec& spec);

/// D*(D* f)(x) - f'(x): the composition defect against the first-order
/// derivative (exposes the broken semigroup property when 2 alpha = 1).
double semigroup_defect(const kernels::KernelPair& pair, const fieldlang::FieldExpr& f, int var,
                        double x, const quad::QuadSpec& spec);

}  // namespace gfvc::gfc1d
