#include <gfvc/gfc1d.hpp>

#include <algorithm>
#include <cmath>
#include <random>

namespace gfvc::gfc1d {

using kernels::KernelPair;
using quad::Fn;
using quad::QuadSpec;

namespace {

// Endpoint exponent of a convolution image (M*f): leading power is
// p_M + q_f + 1, clamped into (-1, 0].
double image_exponent(double p_kernel, double q_f) {
    return std::min(0.0, p_kernel + q_f + 1.0);
}

// f(0+) for a profile with q_f = 0; evaluated a hair inside the domain when
// the callable rejects 0 itself.
double value_at_origin(const Profile1D& prof) {
    try {
        return prof.f(0.0);
    } catch (...) {
        return prof.f(1e-300);
    }
}

// d/ds (M*g)(s) = M(s) g(0) + (M*g')(s) for g in C^1 with finite g(0).
// Returns an evaluator for the derivative of the GFI image together with its
// endpoint exponent.
struct ImageDerivative {
    Fn fn;
    double q = 0.0;
};

ImageDerivative gfi_image_derivative(const KernelPair& pair, const Profile1D& g,
                                     const QuadSpec& spec) {
    if (g.q_f != 0.0)
        throw DomainError("gfi image derivative needs g bounded at 0 (q_f = 0)");
    const double g0 = value_at_origin(g);
    const QuadSpec inner = spec.tightened();
    ImageDerivative out;
    if (pair.classical) {
        out.fn = [g](double s) { return g.f(s); };
        out.q = 0.0;
        return out;
    }
    const kernels::KernelSide M = pair.M;
    const Fn dg = g.df;
    const double q_dg = g.q_df;
    out.fn = [M, dg, q_dg, g0, inner](double s) {
        double v = quad::convolve(M.terms, dg, q_dg, s, inner).value;
        if (g0 != 0.0) v += M.eval(s) * g0;
        return v;
    };
    out.q = (g0 != 0.0) ? M.exponent() : image_exponent(M.exponent(), q_dg);
    return out;
}

}  // namespace

Profile1D profile_from_expr(const fieldlang::FieldExpr& e, int var) {
    Profile1D prof;
    const fieldlang::FieldExpr de = e.diff(var);
    prof.q_f = fieldlang::endpoint_exponent(e, var);
    prof.q_df = fieldlang::endpoint_exponent(de, var);
    prof.f = [e, var](double t) {
        std::array<double, 3> p = {0.0, 0.0, 0.0};
        p[static_cast<std::size_t>(var)] = t;
        return e.eval(p);
    };
    prof.df = [de, var](double t) {
        std::array<double, 3> p = {0.0, 0.0, 0.0};
        p[static_cast<std::size_t>(var)] = t;
        return de.eval(p);
    };
    const fieldlang::FieldExpr d2e = de.diff(var);
    double q2 = 0.0;
    try {
        q2 = fieldlang::endpoint_exponent(d2e, var);
    } catch (const DomainError&) {
        q2 = 0.0;  // second derivative may fall outside C_-1; only nested paths care
    }
    prof.d2f = [d2e, var](double t) {
        std::array<double, 3> p = {0.0, 0.0, 0.0};
        p[static_cast<std::size_t>(var)] = t;
        return d2e.eval(p);
    };
    prof.q_d2f = q2;
    return prof;
}

Profile1D profile_from_fn(Fn f, double q_f) {
    Profile1D prof;
    prof.f = f;
    prof.q_f = q_f;
    prof.q_df = 0.0;
    prof.fd_fallback = true;
    prof.df = [f](double t) {
        const double h = 1e-5 * std::max(1.0, std::abs(t));
        const double hh = std::min(h, t > 0.0 ? 0.5 * t : h);
        const double d1 = (f(t + hh) - f(t - hh)) / (2.0 * hh);
        const double d2 = (f(t + 0.5 * hh) - f(t - 0.5 * hh)) / hh;
        return (4.0 * d2 - d1) / 3.0;  // one Richardson step
    };
    return prof;
}

void verify_derivative(const Profile1D& prof, double lo, double hi, int points,
                       std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(lo, hi);
    for (int i = 0; i < points; ++i) {
        const double t = U(rng);
        const double h = 1e-5 * std::max(1.0, std::abs(t));
        const double fd = (prof.f(t + h) - prof.f(t - h)) / (2.0 * h);
        const double sym = prof.df(t);
        const double scale = std::max({1.0, std::abs(fd), std::abs(sym)});
        if (std::abs(fd - sym) > 1e-6 * scale)
            throw DomainError("profile derivative disagrees with central differences at t = " +
                              std::to_string(t));
    }
}

double gfi(const KernelPair& pair, const Profile1D& prof, double x, const QuadSpec& spec) {
    if (x < 0.0) throw DomainError("gfi: x must be nonnegative");
    if (x == 0.0) return 0.0;
    return quad::convolve(pair.M.terms, prof.f, prof.q_f, x, spec).value;
}

double gfd_caputo(const KernelPair& pair, const Profile1D& prof, double x, const QuadSpec& spec) {
    if (x < 0.0) throw DomainError("gfd_caputo: x must be nonnegative");
    if (pair.classical) return prof.df(x);
    if (x == 0.0) return 0.0;
    return quad::convolve(pair.K.terms, prof.df, prof.q_df, x, spec).value;
}

double gfd_rl(const KernelPair& pair, const Profile1D& prof, double x, const QuadSpec& spec) {
    if (pair.classical) return prof.df(x);
    if (prof.q_f < 0.0)
        throw DomainError("gfd_rl: f is unbounded at 0 (q_f < 0); the identity needs f(0)");
    const double f0 = value_at_origin(prof);
    return gfd_caputo(pair, prof, x, spec) + pair.K.eval(x) * f0;
}

double gfi_interval(const KernelPair& pair, const Profile1D& prof, double a, double b,
                    const QuadSpec& spec) {
    if (a < 0.0 || b < 0.0) throw DomainError("gfi_interval: limits must be nonnegative");
    if (a == b) return 0.0;
    const double sgn = b > a ? 1.0 : -1.0;
    const double lo = std::min(a, b), hi = std::max(a, b);
    const double upper = gfi(pair, prof, hi, spec);
    const double lower = lo == 0.0 ? 0.0 : gfi(pair, prof, lo, spec);
    return sgn * (upper - lower);
}

double gfd_interval(const KernelPair& pair, const Profile1D& prof, double a, double b,
                    const QuadSpec& spec) {
    if (a < 0.0 || b < 0.0) throw DomainError("gfd_interval: limits must be nonnegative");
    if (a == b) return 0.0;
    const double sgn = b > a ? 1.0 : -1.0;
    const double lo = std::min(a, b), hi = std::max(a, b);
    const double upper = gfd_caputo(pair, prof, hi, spec);
    const double lower = lo == 0.0 ? 0.0 : gfd_caputo(pair, prof, lo, spec);
    return sgn * (upper - lower);
}

AdditivityResidual additivity_residual(const KernelPair& pair, const Profile1D& prof, double a,
                                       double b, double c, const QuadSpec& spec) {
    if (!(a < b && b < c) || a < 0.0)
        throw DomainError("additivity_residual: needs 0 <= a < b < c");
    AdditivityResidual r;
    r.integral = std::abs(gfi_interval(pair, prof, a, b, spec) +
                          gfi_interval(pair, prof, b, c, spec) -
                          gfi_interval(pair, prof, a, c, spec));
    r.derivative = std::abs(gfd_interval(pair, prof, a, b, spec) +
                            gfd_interval(pair, prof, b, c, spec) -
                            gfd_interval(pair, prof, a, c, spec));
    return r;
}

FtResiduals ft_residuals(const KernelPair& pair, const Profile1D& prof_f, const Profile1D& prof_g,
                         double a, double x, const QuadSpec& spec) {
    if (!(x > a) || a < 0.0) throw DomainError("ft_residuals: needs 0 <= a < x");
    FtResiduals out;

    // FT2: I_[a,x] (D* f) vs f(x) - f(a).
    {
        const QuadSpec inner = spec.tightened();
        Profile1D w;
        const KernelPair* pp = &pair;
        const Profile1D* pf = &prof_f;
        w.f = [pp, pf, inner](double s) { return gfd_caputo(*pp, *pf, s, inner); };
        w.q_f = pair.classical ? 0.0 : image_exponent(pair.K.exponent(), prof_f.q_df);
        const double lhs = gfi_interval(pair, w, a, x, spec);
        const double rhs = prof_f.f(x) - prof_f.f(a);
        out.ft2 = std::abs(lhs - rhs);
    }

    // FT1: D* (I_[a,.] g) vs g(x); the lower-limit constant drops out of the
    // derivative, so the image derivative is the half-line one.
    {
        const ImageDerivative Fp = gfi_image_derivative(pair, prof_g, spec);
        double lhs;
        if (pair.classical)
            lhs = Fp.fn(x);
        else
            lhs = quad::convolve(pair.K.terms, Fp.fn, Fp.q, x, spec).value;
        out.ft1 = std::abs(lhs - prof_g.f(x));
    }
    return out;
}

double shifted_ft2_residual(const KernelPair& pair, const Profile1D& prof, double a, double x,
                            const QuadSpec& spec) {
    if (!(x > a) || !(a > 0.0)) throw DomainError("shifted_ft2_residual: needs 0 < a < x");
    const ImageDerivative Fp = gfi_image_derivative(pair, prof, spec);
    double lhs;
    if (pair.classical)
        lhs = Fp.fn(x);
    else
        lhs = quad::convolve(pair.K.terms, Fp.fn, Fp.q, x, spec).value;
    return std::abs(lhs - (prof.f(x) - prof.f(a)));
}

double leibniz_defect(const KernelPair& pair, const fieldlang::FieldExpr& f,
                      const fieldlang::FieldExpr& g, int var, double x, const QuadSpec& spec) {
    const Profile1D pf = profile_from_expr(f, var);
    const Profile1D pg = profile_from_expr(g, var);
    const fieldlang::FieldExpr prod = fieldlang::parse("(" + f.print() + ")*(" + g.print() + ")",
                                                       f.vars());
    const Profile1D pprod = profile_from_expr(prod, var);
    const double dfg = gfd_caputo(pair, pprod, x, spec);
    const double df = gfd_caputo(pair, pf, x, spec);
    const double dg = gfd_caputo(pair, pg, x, spec);
    return dfg - df * pg.f(x) - pf.f(x) * dg;
}

double semigroup_defect(const KernelPair& pair, const fieldlang::FieldExpr& f, int var, double x,
                        const QuadSpec& spec) {
    const Profile1D pf = profile_from_expr(f, var);
    double outer;
    if (pair.classical) {
        // Classical composition D1(D1 f) against the second derivative,
        // composed numerically so both routes stay independent.
        const Fn dfn = pf.df;
        const double h = 1e-5 * std::max(1.0, x);
        const double d1 = (dfn(x + h) - dfn(x - h)) / (2.0 * h);
        const double d2 = (dfn(x + 0.5 * h) - dfn(x - 0.5 * h)) / h;
        return (4.0 * d2 - d1) / 3.0 - pf.d2f(x);
    }

    const QuadSpec inner = spec.tightened();
    const KernelPair* pp = &pair;
    if (pf.q_df == 0.0) {
        // w = D* f and w'(s) = K(s) f'(0) + (K * f'')(s): exact path.
        const double df0 = [&] {
            try {
                return pf.df(0.0);
            } catch (...) {
                return pf.df(1e-300);
            }
        }();
        const kernels::KernelSide K = pair.K;
        const Fn d2 = pf.d2f;
        const double qd2 = pf.q_d2f;
        const Fn wp = [K, d2, qd2, df0, inner](double s) {
            double v = quad::convolve(K.terms, d2, qd2, s, inner).value;
            if (df0 != 0.0) v += K.eval(s) * df0;
            return v;
        };
        const double qwp = (df0 != 0.0) ? K.exponent() : image_exponent(K.exponent(), qd2);
        outer = quad::convolve(pair.K.terms, wp, qwp, x, spec).value;
    } else {
        // f' singular at 0: differentiate the inner GFD by flagged central
        // differences.  The inner quadrature runs near machine tolerance so
        // the difference quotient noise (~tol/h) stays below the outer
        // tolerance floor.
        QuadSpec fd_inner = spec;
        fd_inner.abs_tol = 1e-12;
        fd_inner.rel_tol = 1e-12;
        const Profile1D* pfp = &pf;
        const Fn w = [pp, pfp, fd_inner](double s) { return gfd_caputo(*pp, *pfp, s, fd_inner); };
        const Fn wp = [w](double s) {
            const double h = std::min(1e-3 * std::max(1.0, s), 0.5 * s);
            const double d1 = (w(s + h) - w(s - h)) / (2.0 * h);
            const double d2 = (w(s + 0.5 * h) - w(s - 0.5 * h)) / h;
            return (4.0 * d2 - d1) / 3.0;
        };
        QuadSpec outer_spec = spec;
        outer_spec.abs_tol = std::max(spec.abs_tol, 3e-8);
        outer = quad::convolve(pair.K.terms, wp, 0.0, x, outer_spec).value;
    }
    return outer - pf.df(x);
}

}  // namespace gfvc::gfc1d
