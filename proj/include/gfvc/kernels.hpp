#pragma once

#include <gfvc/quad.hpp>

#include <map>
#include <string>
#include <vector>

namespace gfvc::kernels {

enum class Family {
    PowerRL,
    DampedPower,
    BesselPair,
    KummerPair,
    ErfcPair,
    MittagLefflerPair,
    HanygaPair,
    Classical,
};

std::string family_name(Family f);
Family family_from_name(const std::string& name);

/// One side (M or K) of a kernel pair: a sum of terms t^p_i * g_i(t) with
/// g_i continuous on [0,inf), ordered by increasing exponent.  The leading
/// exponent lies in (-1, 0] (membership in C_{-1,0}); trailing terms may
/// have any exponent > leading.
struct KernelSide {
    std::vector<quad::KernelTerm> terms;

    double exponent() const;        ///< leading p
    double eval(double t) const;    ///< sum of t^p_i g_i(t), t > 0
    double regular(double t) const; ///< eval(t) * t^-p, continuous at 0
};

enum class Side { M, K };

struct KernelPair {
    Family family = Family::PowerRL;
    std::map<std::string, double> params;
    bool classical = false;  ///< degenerate alpha->1 pair: GFI = plain integral, GFD = d/dx
    KernelSide M;
    KernelSide K;            ///< empty for Classical (h_0 is not a function)
    bool enabled = true;     ///< catalog admission flag (Sonin verifier gate)
    std::string disabled_reason;

    std::string id() const;  ///< e.g. "power_rl(alpha=0.5)"
};

/// Build a pair from Examples 2.1-2.7 plus the Classical degenerate pair.
/// Throws DomainError when parameters leave the family's admissible range.
KernelPair make_pair(Family family, const std::map<std::string, double>& params);

/// M(t) or K(t); t > 0.  K of the Classical pair is not a function.
double eval_kernel(const KernelPair& pair, Side side, double t);

/// Pair with the roles of M and K exchanged (an associated pair is
/// symmetric, so the swap must pass the verifier too).
KernelPair swapped(const KernelPair& pair);

struct SoninReport {
    std::string pair_id;
    std::vector<double> xs;
    std::vector<double> residuals;  ///< (M*K)(x) - 1
    double max_abs_residual = 0.0;
};

/// Evaluate |(M*K)(x) - 1| at the sample points by doubly singular
/// convolution quadrature.  Classical reports zero residuals (the Sonin
/// relation holds in the degenerate sense M*K = identity).
SoninReport sonin_residual(const KernelPair& pair, const std::vector<double>& xs,
                           const quad::QuadSpec& spec);

/// Default catalog: one representative pair per family, each gated by the
/// Sonin verifier (a failing pair ships disabled with the report attached
/// rather than being silently altered or dropped).
struct CatalogEntry {
    KernelPair pair;
    SoninReport gate_report;
};
std::vector<CatalogEntry> catalog();

}  // namespace gfvc::kernels
