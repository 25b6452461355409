#include <gfvc/kernels.hpp>
#include <gfvc/specfun.hpp>

#include <algorithm>
#include <cmath>

namespace gfvc::kernels {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kPi = 3.14159265358979323846;

using specfun::erfcx;
using specfun::gamma;
using specfun::kummer;
using specfun::lower_incomplete_gamma;
using specfun::mittag_leffler;
using specfun::recip_gamma;

double param(const std::map<std::string, double>& params, const std::string& name) {
    auto it = params.find(name);
    if (it == params.end()) throw DomainError("make_pair: missing parameter '" + name + "'");
    return it->second;
}

void require(bool ok, const std::string& msg) {
    if (!ok) throw DomainError("make_pair: " + msg);
}

// sum_k s^k t^k / (k! Gamma(k + c)) -- the entire regular factor of the
// Bessel kernels (s = -1 gives the J side, s = +1 the I side).
double bessel_regular(double c, double t, double s) {
    double term = recip_gamma(c);
    double sum = term;
    for (int k = 1; k < 400; ++k) {
        term *= s * t / (k * (k + c - 1.0));
        sum += term;
        if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300) && k > 3) break;
    }
    return sum;
}

// S(w) = sum_k (-1)^k w^k / (k! (1 - alpha + k)) = gamma(1-alpha, w) w^(alpha-1)
double damped_gamma_factor(double alpha, double w) {
    if (w > 1.0)
        return lower_incomplete_gamma(1.0 - alpha, w) * std::pow(w, alpha - 1.0);
    double term = 1.0;
    double sum = 1.0 / (1.0 - alpha);
    for (int k = 1; k < 200; ++k) {
        term *= -w / k;
        sum += term / (1.0 - alpha + k);
        if (std::abs(term) < 1e-18) break;
    }
    return sum;
}

// E(w) = erf(sqrt(w)) / sqrt(w), analytic and positive.
double erf_ratio(double w) {
    if (w > 1e-4) {
        const double r = std::sqrt(w);
        return std::erf(r) / r;
    }
    double term = 2.0 / kSqrtPi;
    double sum = term;
    for (int k = 1; k < 30; ++k) {
        term *= -w / k;
        sum += term / (2.0 * k + 1.0);
        if (std::abs(term) < 1e-20) break;
    }
    return sum;
}

std::string fmt_param(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::PowerRL: return "power_rl";
        case Family::DampedPower: return "damped_power";
        case Family::BesselPair: return "bessel";
        case Family::KummerPair: return "kummer";
        case Family::ErfcPair: return "erfc";
        case Family::MittagLefflerPair: return "mittag_leffler";
        case Family::HanygaPair: return "hanyga";
        case Family::Classical: return "classical";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    for (Family f : {Family::PowerRL, Family::DampedPower, Family::BesselPair,
                     Family::KummerPair, Family::ErfcPair, Family::MittagLefflerPair,
                     Family::HanygaPair, Family::Classical})
        if (family_name(f) == name) return f;
    throw DomainError("unknown kernel family '" + name + "'");
}

double KernelSide::exponent() const {
    return terms.empty() ? 0.0 : terms.front().p;
}

double KernelSide::eval(double t) const {
    if (t <= 0.0) throw DomainError("kernel evaluation requires t > 0");
    double v = 0.0;
    for (const auto& term : terms) v += std::pow(t, term.p) * term.g(t);
    return v;
}

double KernelSide::regular(double t) const {
    const double p0 = exponent();
    if (t <= 0.0) {
        // continuous limit: only the leading term survives
        return terms.empty() ? 0.0 : terms.front().g(0.0);
    }
    double v = 0.0;
    for (const auto& term : terms) v += std::pow(t, term.p - p0) * term.g(t);
    return v;
}

std::string KernelPair::id() const {
    std::string s = family_name(family);
    if (!params.empty()) {
        s += "(";
        bool first = true;
        for (const auto& [k, v] : params) {
            if (!first) s += ",";
            s += k + "=" + fmt_param(v);
            first = false;
        }
        s += ")";
    }
    return s;
}

KernelPair make_pair(Family family, const std::map<std::string, double>& params) {
    KernelPair pair;
    pair.family = family;
    pair.params = params;

    switch (family) {
        case Family::Classical: {
            pair.classical = true;
            pair.M.terms = {{0.0, [](double) { return 1.0; }}};
            // K = h_0 is not a function; leave the side empty.
            return pair;
        }
        case Family::PowerRL: {
            const double a = param(params, "alpha");
            require(a > 0.0 && a < 1.0, "power_rl needs 0 < alpha < 1");
            pair.M.terms = {{a - 1.0, [a](double) { return recip_gamma(a); }}};
            pair.K.terms = {{-a, [a](double) { return recip_gamma(1.0 - a); }}};
            return pair;
        }
        case Family::DampedPower: {
            const double a = param(params, "alpha");
            const double l = param(params, "lambda");
            require(a > 0.0 && a < 1.0, "damped_power needs 0 < alpha < 1");
            require(l >= 0.0, "damped_power needs lambda >= 0");
            pair.M.terms = {{a - 1.0, [a, l](double t) { return recip_gamma(a) * std::exp(-l * t); }}};
            pair.K.terms = {
                {-a, [a, l](double t) { return recip_gamma(1.0 - a) * std::exp(-l * t); }},
                {1.0 - a,
                 [a, l](double t) { return l * recip_gamma(1.0 - a) * damped_gamma_factor(a, l * t); }},
            };
            return pair;
        }
        case Family::BesselPair: {
            const double a = param(params, "alpha");
            require(a > 0.0 && a < 1.0, "bessel needs 0 < alpha < 1");
            pair.M.terms = {{a - 1.0, [a](double t) { return bessel_regular(a, t, -1.0); }}};
            pair.K.terms = {{-a, [a](double t) { return bessel_regular(1.0 - a, t, +1.0); }}};
            return pair;
        }
        case Family::KummerPair: {
            const double a = param(params, "alpha");
            const double b = param(params, "beta");
            const double l = param(params, "lambda");
            require(a > 0.0 && a < 1.0, "kummer needs 0 < alpha < 1");
            require(l >= 0.0, "kummer needs lambda >= 0");
            const double front = std::sin(kPi * a) / kPi;
            pair.M.terms = {{a - 1.0, [b, a, l](double t) { return kummer(b, a, -l * t); }}};
            pair.K.terms = {{-a, [b, a, l, front](double t) { return front * kummer(-b, 1.0 - a, -l * t); }}};
            return pair;
        }
        case Family::ErfcPair: {
            const double l = param(params, "lambda");
            require(l > 0.0, "erfc needs lambda > 0");
            // M as printed with the Gamma(alpha) read as Gamma(1/2) = sqrt(pi);
            // the Sonin verifier decides admission (it passes at lambda = 1).
            pair.M.terms = {
                {-0.5, [l](double) { return l / kSqrtPi; }},
                {0.0, [](double) { return 1.0; }},
            };
            // K split into smooth pieces: t^-1/2/sqrt(pi) - l e^(l^2 t) + t^1/2 l^2 e^(l^2 t) E(l^2 t)
            pair.K.terms = {
                {-0.5, [](double) { return 1.0 / kSqrtPi; }},
                {0.0, [l](double t) { return -l * std::exp(l * l * t); }},
                {0.5, [l](double t) { return l * l * std::exp(l * l * t) * erf_ratio(l * l * t); }},
            };
            return pair;
        }
        case Family::MittagLefflerPair: {
            const double a = param(params, "alpha");
            const double l = param(params, "lambda");
            require(a > 0.0 && a < 1.0, "mittag_leffler needs 0 < alpha < 1");
            require(l > 0.0, "mittag_leffler needs lambda > 0");
            // Exactly as printed; the catalog gate decides whether it ships enabled.
            pair.M.terms = {
                {a - 1.0, [a, l](double) { return -l * recip_gamma(a); }},
                {0.0, [](double) { return 1.0; }},
            };
            pair.K.terms = {{-a, [a, l](double t) {
                                 return l * mittag_leffler(1.0 - a, 1.0 - a, l * std::pow(t, 1.0 - a));
                             }}};
            return pair;
        }
        case Family::HanygaPair: {
            const double a = param(params, "alpha");
            const double b = param(params, "beta");
            require(a > 0.0 && b > a && b < 1.0, "hanyga needs 0 < alpha < beta < 1");
            pair.M.terms = {
                {-b, [a, b](double) { return recip_gamma(1.0 - b); }},
                {a - b, [a, b](double) { return recip_gamma(1.0 - b + a); }},
            };
            pair.K.terms = {{b - 1.0, [a, b](double t) {
                                 return mittag_leffler(a, b, -std::pow(t, a));
                             }}};
            return pair;
        }
    }
    throw DomainError("make_pair: unknown family");
}

double eval_kernel(const KernelPair& pair, Side side, double t) {
    if (t <= 0.0) throw DomainError("eval_kernel: t must be positive");
    if (side == Side::M) return pair.M.eval(t);
    if (pair.classical)
        throw DomainError("eval_kernel: the Classical K kernel (h_0) is not a function");
    return pair.K.eval(t);
}

KernelPair swapped(const KernelPair& pair) {
    if (pair.classical) throw DomainError("swapped: Classical pair has no function K side");
    KernelPair out = pair;
    std::swap(out.M, out.K);
    return out;
}

SoninReport sonin_residual(const KernelPair& pair, const std::vector<double>& xs,
                           const quad::QuadSpec& spec) {
    if (xs.empty()) throw DomainError("sonin_residual: sample list empty");
    for (double x : xs)
        if (!(x > 0.0)) throw DomainError("sonin_residual: sample points must be positive");

    SoninReport report;
    report.pair_id = pair.id();
    report.xs = xs;
    report.residuals.reserve(xs.size());

    if (pair.classical) {
        // Degenerate pair: M*K = identity by definition of the alpha -> 1 limit.
        report.residuals.assign(xs.size(), 0.0);
        report.max_abs_residual = 0.0;
        return report;
    }

    const KernelSide& K = pair.K;
    const double qf = K.exponent();
    const quad::Fn f = [&K](double t) { return K.eval(t); };
    double worst = 0.0;
    for (double x : xs) {
        double r;
        try {
            r = quad::convolve(pair.M.terms, f, qf, x, spec).value - 1.0;
        } catch (const AccuracyError& e) {
            throw AccuracyError("sonin_residual: quadrature failed at x = " + fmt_param(x),
                                e.best_estimate, e.est_abs_error);
        }
        report.residuals.push_back(r);
        worst = std::max(worst, std::abs(r));
    }
    report.max_abs_residual = worst;
    return report;
}

std::vector<CatalogEntry> catalog() {
    std::vector<KernelPair> pairs = {
        make_pair(Family::PowerRL, {{"alpha", 0.5}}),
        make_pair(Family::DampedPower, {{"alpha", 0.5}, {"lambda", 0.5}}),
        make_pair(Family::BesselPair, {{"alpha", 0.5}}),
        make_pair(Family::KummerPair, {{"alpha", 0.5}, {"beta", 0.4}, {"lambda", 0.5}}),
        make_pair(Family::ErfcPair, {{"lambda", 1.0}}),
        make_pair(Family::MittagLefflerPair, {{"alpha", 0.5}, {"lambda", 0.5}}),
        make_pair(Family::HanygaPair, {{"alpha", 0.3}, {"beta", 0.7}}),
        make_pair(Family::Classical, {}),
    };

    quad::QuadSpec gate_spec;
    gate_spec.abs_tol = 1e-9;
    gate_spec.rel_tol = 1e-9;
    const std::vector<double> gate_xs = {0.5, 1.0, 2.0};

    std::vector<CatalogEntry> entries;
    entries.reserve(pairs.size());
    for (KernelPair& pair : pairs) {
        CatalogEntry entry;
        try {
            entry.gate_report = sonin_residual(pair, gate_xs, gate_spec);
            if (entry.gate_report.max_abs_residual > 1e-6) {
                pair.enabled = false;
                pair.disabled_reason = "Sonin verifier: max |M*K - 1| = " +
                                       fmt_param(entry.gate_report.max_abs_residual) +
                                       " on the gate grid";
            }
        } catch (const AccuracyError& e) {
            pair.enabled = false;
            pair.disabled_reason = std::string("Sonin verifier quadrature failure: ") + e.what();
            entry.gate_report.pair_id = pair.id();
        }
        entry.pair = pair;
        entries.push_back(std::move(entry));
    }
    return entries;
}

}  // namespace gfvc::kernels
