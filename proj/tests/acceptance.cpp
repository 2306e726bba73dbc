// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "revsec/detect.hpp"
#include "revsec/report.hpp"

using namespace revsec;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    if (!pass) ++failures;
    fmt::print("{} [{}] {}: {}\n", pass ? "PASS" : "FAIL", id, name, detail);
    std::fflush(stdout);
}

struct Preset {
    std::string spec;
    QuadricParams generator;
};

const std::vector<Preset> presets{
    {"sphere", {-1.0, 0.0, 1.0}},
    {"cylinder:1,10", {0.0, 0.0, 1.0}},
    {"hyperboloid:1,2", {1.0, 0.0, 1.0}},
    {"paraboloid:2,1", {0.0, 1.0, 2.0}},
};

DetectOptions options_for(const Profile& p, unsigned workers) {
    return {0.1 * p.half_width(), 17, 1024, 1e-4, workers};
}

bool within_rel(double got, double want, double tol) {
    return std::abs(got - want) <= tol * std::max(1.0, std::abs(want));
}

struct PolyFn {
    std::vector<double> c;
    double operator()(double z) const {
        double acc = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
        return acc;
    }
    double prime(double z) const {
        double acc = 0.0;
        for (std::size_t k = c.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * c[k];
        return acc;
    }
};

// k x k grid: zeta in [-1, 1], t in (0, 1].
template <class Visit>
void over_grid(std::size_t k, Visit visit) {
    for (std::size_t i = 0; i < k; ++i) {
        const double zeta = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(k - 1);
        for (std::size_t j = 1; j <= k; ++j) visit(zeta, static_cast<double>(j) / static_cast<double>(k));
    }
}

double max_grid_residual(const PolyFn& p, std::size_t k) {
    const RealFunction f = [&](double z) { return p(z); };
    const RealFunction fp = [&](double z) { return p.prime(z); };
    double worst = 0.0;
    over_grid(k, [&](double zeta, double t) { worst = std::max(worst, std::abs(midpoint_residual(f, fp, zeta, t))); });
    return worst;
}

}  // namespace

int main() {
    const auto suite_start = Clock::now();

    // 1. Quadric soundness.
    std::vector<Profile> profiles;
    for (const Preset& preset : presets) profiles.push_back(parse_profile(preset.spec));
    std::vector<QuadricVerdict> verdicts;
    {
        const auto start = Clock::now();
        for (const Profile& p : profiles) verdicts.push_back(detect_quadric(p, options_for(p, 1)));
        const double elapsed = seconds_since(start);

        bool pass = elapsed <= 10.0;
        double worst_param = 0.0;
        double worst_asym = 0.0;
        for (std::size_t i = 0; i < presets.size(); ++i) {
            const QuadricVerdict& v = verdicts[i];
            pass = pass && v.is_quadric && v.params.has_value();
            if (!v.params) continue;
            const QuadricParams& g = presets[i].generator;
            for (auto [got, want] : {std::pair{v.params->a, g.a}, {v.params->b, g.b}, {v.params->c, g.c}}) {
                worst_param = std::max(worst_param, std::abs(got - want) / std::max(1.0, std::abs(want)));
            }
            for (const SectionRecord& r : v.sections) worst_asym = std::max(worst_asym, r.report.asymmetry);
        }
        pass = pass && worst_param <= 1e-6 && worst_asym <= 1e-4;
        report(1, "quadric soundness", pass,
               fmt::format("4 presets quadric, max param error {:.3g} (<= 1e-6), max asymmetry {:.3g} (<= 1e-4), "
                           "{:.2f} s (<= 10 s)",
                           worst_param, worst_asym, elapsed));
    }

    // 2. Non-quadric completeness.
    {
        bool pass = true;
        std::string detail;
        for (const char* spec : {"poly:2,0,0,1;1", "poly:1,0,1,0,1;1"}) {
            const Profile p = parse_profile(spec);
            const DetectOptions opt = options_for(p, 1);
            const QuadricVerdict v = detect_quadric(p, opt);
            double worst_asym = 0.0;
            for (const SectionRecord& r : v.sections) worst_asym = std::max(worst_asym, r.report.asymmetry);
            bool ok = !v.is_quadric && v.witness.has_value();
            if (v.witness) {
                const double a = v.witness->report.asymmetry;
                const double again = centrality(trace_section(p, v.witness->plane, opt.samples), opt.tol).asymmetry;
                ok = ok && a > 10.0 * opt.tol && std::abs(again - a) <= 0.1 * a;
            }
            pass = pass && ok;
            detail += fmt::format("{}{}: is_quadric={}, witness={}, max asymmetry {:.3g} vs required > {:.3g}",
                                  detail.empty() ? "" : "; ", spec, v.is_quadric, v.witness ? "yes" : "none",
                                  worst_asym, 10.0 * opt.tol);
        }
        report(2, "non-quadric witness", pass, detail);
    }

    // 3. Center-height derivative relation and t-independence of the symmetric quotient.
    {
        double worst_relation = 0.0;
        double worst_variation = 0.0;
        std::size_t planes = 0;
        for (std::size_t i = 0; i < profiles.size(); ++i) {
            const Profile& p = profiles[i];
            const QuadricVerdict& v = verdicts[i];
            const RealFunction f = [&](double z) { return p.eval(z); };
            for (const SectionRecord& r : v.sections) {
                ++planes;
                const double zeta = r.report.center.v;
                const double fprime = p.derivative(zeta);
                const double chord = 2.0 * (zeta - r.plane.intercept) / (v.slope * v.slope);
                worst_relation = std::max(worst_relation, std::abs(fprime - chord) / std::max(1.0, std::abs(fprime)));

                double lo = INFINITY, hi = -INFINITY;
                for (int k = 1; k <= 5; ++k) {
                    const double sq = symmetric_quotient(f, zeta, 0.2 * k * v.epsilon);
                    lo = std::min(lo, sq);
                    hi = std::max(hi, sq);
                }
                worst_variation = std::max(worst_variation, (hi - lo) / std::max(1.0, std::max(std::abs(lo), std::abs(hi))));
            }
        }
        report(3, "derivative relation", planes > 0 && worst_relation <= 1e-4 && worst_variation <= 1e-10,
               fmt::format("{} planes, max relative relation error {:.3g} (<= 1e-4), max quotient variation {:.3g} "
                           "(<= 1e-10)",
                           planes, worst_relation, worst_variation));
    }

    // 4. Sphere centers against the foot of the perpendicular from the origin.
    {
        const Profile& sphere = profiles[0];
        double worst = 0.0;
        for (double m : {0.1, 0.3, 0.5}) {
            for (double beta : {-0.4, 0.0, 0.4}) {
                const double zeta = centrality(trace_section(sphere, {m, beta}, 1024), 1e-4).center.v;
                worst = std::max(worst, std::abs(zeta - beta / (1.0 + m * m)));
            }
        }
        report(4, "sphere center oracle", worst <= 1e-4, fmt::format("max error {:.3g} (<= 1e-4) over 9 planes", worst));
    }

    // 5. Midpoint mean-value residuals.
    {
        constexpr std::size_t k = 21;
        std::mt19937 gen(20240601);
        std::uniform_real_distribution<double> coeff(-5.0, 5.0);
        double worst_quadratic = 0.0;
        for (int i = 0; i < 50; ++i) {
            worst_quadratic = std::max(worst_quadratic, max_grid_residual({{coeff(gen), coeff(gen), coeff(gen)}}, k));
        }

        const PolyFn cube{{0.0, 0.0, 0.0, 1.0}};
        const RealFunction f = [&](double z) { return cube(z); };
        const RealFunction fp = [&](double z) { return cube.prime(z); };
        double worst_cube = 0.0;
        over_grid(k, [&](double zeta, double t) {
            worst_cube = std::max(worst_cube, std::abs(midpoint_residual(f, fp, zeta, t) + t * t));
        });

        std::uniform_real_distribution<double> lead(0.5, 3.0);
        double weakest = INFINITY;
        for (std::size_t degree = 3; degree <= 5; ++degree) {
            for (int i = 0; i < 10; ++i) {
                PolyFn p;
                for (std::size_t d = 0; d < degree; ++d) p.c.push_back(coeff(gen));
                p.c.push_back(i % 2 ? lead(gen) : -lead(gen));
                weakest = std::min(weakest, max_grid_residual(p, k));
            }
        }
        report(5, "midpoint mean-value suite", worst_quadratic <= 1e-12 && worst_cube <= 1e-9 && weakest > 1e-6,
               fmt::format("50 quadratics max {:.3g} (<= 1e-12), z^3 vs -t^2 max {:.3g} (<= 1e-9), "
                           "30 degree 3..5 polynomials min {:.3g} (> 1e-6)",
                           worst_quadratic, worst_cube, weakest));
    }

    // 6. Extent and slab containment, from independently re-traced loops.
    {
        std::size_t sections = 0;
        std::size_t violations = 0;
        for (std::size_t i = 0; i < profiles.size(); ++i) {
            const Profile& p = profiles[i];
            const QuadricVerdict& v = verdicts[i];
            const double phi = infimum_radius(p, v.delta);
            for (const SectionRecord& r : v.sections) {
                ++sections;
                const SectionLoop loop = trace_section(p, r.plane, 1024);
                double lo = INFINITY, hi = -INFINITY, offset = 0.0;
                for (const Vec2& q : loop.points) {
                    lo = std::min(lo, q.v);
                    hi = std::max(hi, q.v);
                    offset = std::max(offset, std::abs(q.v - r.plane.intercept));
                }
                if (hi - lo < 2.0 * v.slope * phi) ++violations;
                if (!(offset < v.delta)) ++violations;
            }
        }
        report(6, "extent and slab containment", sections > 0 && violations == 0,
               fmt::format("{} sections, {} violations", sections, violations));
    }

    // 7. Determinism across worker counts.
    {
        bool identical = true;
        for (std::size_t i = 0; i < profiles.size(); ++i) {
            const std::string serial = verdict_json(verdicts[i]);
            const std::string parallel = verdict_json(detect_quadric(profiles[i], options_for(profiles[i], 8)));
            identical = identical && serial == parallel;
        }
        report(7, "determinism across workers", identical, "verdict JSON with 1 and 8 workers byte-identical");
    }

    const double total = seconds_since(suite_start);
    report(8, "suite runtime", total < 60.0, fmt::format("{:.2f} s (< 60 s)", total));

    fmt::print("{} of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
