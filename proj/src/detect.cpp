#include "revsec/detect.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "revsec/error.hpp"

namespace revsec {

namespace {

// Runs job(i) for i in [0, count) on up to `workers` threads. Output slots are
// indexed by i, so the assembled result does not depend on scheduling.
template <typename Result, typename Job>
std::vector<Result> run_indexed(std::size_t count, unsigned workers, Job job) {
    std::vector<Result> results(count);
    std::vector<std::exception_ptr> errors(count);
    const auto work = [&](std::size_t start, std::size_t stride) {
        for (std::size_t i = start; i < count; i += stride) {
            try {
                results[i] = job(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    const std::size_t threads = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
    if (threads == 1) {
        work(0, 1);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(work, w, threads);
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return results;
}

SectionRecord analyze_section(const Profile& profile, const Plane& plane, std::size_t samples, double tol) {
    try {
        const SectionLoop loop = trace_section(profile, plane, samples);
        SectionRecord record;
        record.plane = plane;
        record.extent = {loop.z_lo, loop.z_hi};
        for (const Vec2& p : loop.points) {
            record.max_offset = std::max(record.max_offset, std::abs(p.v - plane.intercept));
        }
        record.report = centrality(loop, tol);
        return record;
    } catch (const Error& e) {
        throw Error(e.code(), fmt::format("beta = {}: {}", plane.intercept, e.what()));
    }
}

}  // namespace

CenterCurve center_heights(const Profile& profile, double slope, std::span<const double> betas,
                           std::size_t samples, double tol, unsigned workers) {
    if (!(slope > 0.0)) throw Error(ErrorCode::zero_slope, "center heights need a positive slope");
    for (std::size_t i = 1; i < betas.size(); ++i) {
        if (!(betas[i] > betas[i - 1])) throw Error(ErrorCode::invalid_domain, "intercepts must be strictly increasing");
    }
    const auto records = run_indexed<SectionRecord>(betas.size(), workers, [&](std::size_t i) {
        return analyze_section(profile, {slope, betas[i]}, samples, tol);
    });

    CenterCurve curve;
    curve.slope = slope;
    curve.entries.reserve(records.size());
    for (const auto& r : records) curve.entries.push_back({r.plane.intercept, r.report.center.v, r.report.asymmetry});
    return curve;
}

double predicted_center_height(const QuadricParams& params, const Plane& plane) {
    const double m = plane.slope;
    if (!(m > 0.0)) throw Error(ErrorCode::zero_slope, "predicted center height needs a positive slope");
    const double m2 = m * m;
    const double denom = 1.0 - params.a * m2;
    if (std::abs(denom) < 1e-12) {
        throw Error(ErrorCode::singular_configuration,
                    fmt::format("a m^2 = {} is 1: the plane is asymptotic and its section has no center",
                                params.a * m2));
    }
    return (params.b * m2 + 2.0 * plane.intercept) / (2.0 * denom);
}

std::vector<DerivativeSample> derivative_from_centers(const CenterCurve& curve) {
    std::vector<DerivativeSample> out;
    out.reserve(curve.entries.size());
    const double m2 = curve.slope * curve.slope;
    for (const CenterEntry& e : curve.entries) out.push_back({e.zeta, 2.0 * (e.zeta - e.beta) / m2});
    return out;
}

QuadraticFit fit_quadratic(std::span<const FitSample> samples) {
    std::vector<double> abscissae;
    abscissae.reserve(samples.size());
    for (const auto& s : samples) abscissae.push_back(s.z);
    std::sort(abscissae.begin(), abscissae.end());
    const auto distinct = std::unique(abscissae.begin(), abscissae.end()) - abscissae.begin();
    if (distinct < 3) {
        throw Error(ErrorCode::rank_deficient,
                    fmt::format("quadratic fit needs 3 distinct abscissae, got {}", distinct));
    }

    const double n = static_cast<double>(samples.size());
    double mean = 0.0;
    for (const auto& s : samples) mean += s.z;
    mean /= n;
    double spread = 0.0;
    for (const auto& s : samples) spread = std::max(spread, std::abs(s.z - mean));

    // Normal equations in s = (z - mean) / spread, unknowns (C, B, A).
    Eigen::Matrix3d gram = Eigen::Matrix3d::Zero();
    Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
    for (const auto& s : samples) {
        const double t = (s.z - mean) / spread;
        const Eigen::Vector3d phi(1.0, t, t * t);
        gram += phi * phi.transpose();
        rhs += phi * s.value;
    }
    const Eigen::Vector3d coef = gram.ldlt().solve(rhs);

    double err2 = 0.0;
    double val2 = 0.0;
    for (const auto& s : samples) {
        const double t = (s.z - mean) / spread;
        const double model = coef[0] + t * (coef[1] + t * coef[2]);
        err2 += (s.value - model) * (s.value - model);
        val2 += s.value * s.value;
    }

    const double A = coef[2] / (spread * spread);
    const double B = coef[1] / spread;
    QuadraticFit fit;
    fit.params.a = A;
    fit.params.b = B - 2.0 * A * mean;
    fit.params.c = coef[0] - B * mean + A * mean * mean;
    fit.residual = std::sqrt(err2 / n) / std::max(1.0, std::sqrt(val2 / n));
    return fit;
}

std::vector<double> sweep_intercepts(double q, double delta, std::size_t n) {
    const double reach = q - 2.0 * delta;
    const double eta = reach / (10.0 * static_cast<double>(n));
    const double lo = -reach + eta;
    const double hi = reach - eta;
    std::vector<double> betas(n);
    for (std::size_t i = 0; i < n; ++i) {
        betas[i] = n == 1 ? 0.0 : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return betas;
}

QuadricVerdict detect_quadric(const Profile& profile, const DetectOptions& options) {
    const double q = profile.half_width();
    const double delta = options.delta;
    if (!(delta > 0.0 && 3.0 * delta < q)) {
        throw Error(ErrorCode::invalid_domain, fmt::format("delta = {} must lie in (0, q/3 = {})", delta, q / 3.0));
    }
    if (options.planes < 5) throw Error(ErrorCode::invalid_domain, "need at least 5 planes");
    if (options.samples < 256) throw Error(ErrorCode::invalid_domain, "need at least 256 samples per branch");
    if (!(options.tol > 0.0)) throw Error(ErrorCode::invalid_domain, "tolerance must be positive");

    QuadricVerdict verdict;
    verdict.delta = delta;
    verdict.slope = slope_bound(profile, delta) / 2.0;
    verdict.epsilon = verdict.slope * infimum_radius(profile, delta);

    const auto betas = sweep_intercepts(q, delta, options.planes);
    verdict.sections = run_indexed<SectionRecord>(betas.size(), options.workers, [&](std::size_t i) {
        return analyze_section(profile, {verdict.slope, betas[i]}, options.samples, options.tol);
    });
    verdict.planes_tested = verdict.sections.size();

    for (const SectionRecord& r : verdict.sections) {
        if (!(r.max_offset < delta)) {
            throw Error(ErrorCode::slab_violation,
                        fmt::format("section at beta = {} leaves the slab: |z - beta| = {} >= {}",
                                    r.plane.intercept, r.max_offset, delta));
        }
    }

    const SectionRecord* worst = nullptr;
    for (const SectionRecord& r : verdict.sections) {
        if (!r.report.central && (worst == nullptr || r.report.asymmetry > worst->report.asymmetry)) worst = &r;
    }

    const double fit_reach = q - 3.0 * delta;
    const std::size_t grid = 4 * options.planes;
    std::vector<FitSample> samples;
    samples.reserve(grid);
    for (std::size_t i = 0; i < grid; ++i) {
        const double z = -fit_reach + 2.0 * fit_reach * static_cast<double>(i) / static_cast<double>(grid - 1);
        samples.push_back({z, profile.eval(z)});
    }
    const QuadraticFit fit = fit_quadratic(samples);
    verdict.fit_residual = fit.residual;

    if (worst != nullptr) {
        verdict.is_quadric = false;
        verdict.witness = Witness{worst->plane, worst->report};
        return verdict;
    }
    verdict.params = fit.params;
    verdict.is_quadric = fit.residual <= std::max(options.tol, 1e-8);
    verdict.central_but_not_fit = !verdict.is_quadric;
    return verdict;
}

}  // namespace revsec
