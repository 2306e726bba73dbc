#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "revsec/profile.hpp"
#include "revsec/section.hpp"
#include "revsec/symmetry.hpp"

namespace revsec {

struct CenterEntry {
    double beta = 0.0;
    double zeta = 0.0;
    double asymmetry = 0.0;
};

/// Center heights zeta(beta) of the sections cut by planes of one slope.
struct CenterCurve {
    double slope = 0.0;
    std::vector<CenterEntry> entries;  // ascending beta
};

/// Traces and tests each plane z = m x + beta. Work is spread over `workers`
/// threads; results are always assembled in ascending-beta order. Errors are
/// rethrown with the offending beta in the message.
[[nodiscard]] CenterCurve center_heights(const Profile& profile, double slope, std::span<const double> betas,
                                         std::size_t samples, double tol, unsigned workers = 1);

/// Height of the center of a quadric's section: solves 2 a zeta + b = 2 (zeta - beta) / m^2.
/// Throws SingularConfiguration when |1 - a m^2| < 1e-12.
[[nodiscard]] double predicted_center_height(const QuadricParams& params, const Plane& plane);

struct DerivativeSample {
    double zeta = 0.0;
    double fprime = 0.0;
};

/// F'(zeta) recovered from plane geometry alone as 2 (zeta - beta) / m^2.
[[nodiscard]] std::vector<DerivativeSample> derivative_from_centers(const CenterCurve& curve);

struct FitSample {
    double z = 0.0;
    double value = 0.0;
};

struct QuadraticFit {
    QuadricParams params;
    double residual = 0.0;  // RMS error / max(1, RMS value)
};

/// Least-squares a z^2 + b z + c on a centred and scaled abscissa.
/// Throws RankDeficient with fewer than three distinct abscissae.
[[nodiscard]] QuadraticFit fit_quadratic(std::span<const FitSample> samples);

/// n uniform intercepts in [-(q - 2 delta) + eta, (q - 2 delta) - eta] with
/// eta = (q - 2 delta) / (10 n).
[[nodiscard]] std::vector<double> sweep_intercepts(double q, double delta, std::size_t n);

struct DetectOptions {
    double delta = 0.0;
    std::size_t planes = 17;
    std::size_t samples = 1024;
    double tol = 1e-4;
    unsigned workers = 1;
};

/// Per-plane record kept for diagnostics and proof-quantity checks.
struct SectionRecord {
    Plane plane;
    Extent extent;
    double max_offset = 0.0;  // max |z - beta| over the traced points
    CentralityReport report;
};

struct Witness {
    Plane plane;
    CentralityReport report;
};

struct QuadricVerdict {
    bool is_quadric = false;
    std::optional<QuadricParams> params;
    double fit_residual = 0.0;
    std::optional<Witness> witness;
    std::size_t planes_tested = 0;
    /// Every section passed the centrality test but the profile fit did not.
    bool central_but_not_fit = false;
    double epsilon = 0.0;  // m * phi(delta)
    double delta = 0.0;
    double slope = 0.0;
    std::vector<SectionRecord> sections;
};

/// Decision procedure: cut the surface with planes of slope mu / 2 over a
/// sweep of intercepts, test every section for central symmetry, and, when all
/// pass, certify the profile by a quadratic fit over |z| <= q - 3 delta.
[[nodiscard]] QuadricVerdict detect_quadric(const Profile& profile, const DetectOptions& options);

}  // namespace revsec
