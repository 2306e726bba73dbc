#include "revsec/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "revsec/detect.hpp"
#include "revsec/error.hpp"
#include "revsec/profile.hpp"
#include "revsec/report.hpp"
#include "revsec/section.hpp"
#include "revsec/symmetry.hpp"

namespace revsec::cli {

namespace {

struct Flags {
    std::string profile;
    std::optional<double> z;
    bool list = false;
    bool json = false;
    double slope = 0.0;
    double intercept = 0.0;
    std::optional<double> slope_opt;
    std::optional<double> delta;
    std::size_t samples = 1024;
    std::size_t planes = 17;
    double tol = 1e-4;
    unsigned workers = 0;
    std::string format = "csv";
    bool embed = false;
    bool free_center = false;
    std::string out_path;
    std::string poly;
    std::size_t grid = 21;
};

// Writes to --out when given, otherwise to the command's standard output.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw Error(ErrorCode::io_error, "cannot open output file '" + path + "'");
            stream_ = &file_;
        }
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

std::vector<double> parse_coefficients(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string item = text.substr(pos, comma - pos);
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (item.empty() || used != item.size() || !std::isfinite(value)) {
            throw ParseError(pos, "expected a number in coefficient list");
        }
        out.push_back(value);
        pos = comma + 1;
    }
    return out;
}

double default_delta(const Flags& f, const Profile& p) { return f.delta.value_or(0.1 * p.half_width()); }

unsigned worker_count(const Flags& f) {
    if (f.workers > 0) return f.workers;
    return std::max(1u, std::thread::hardware_concurrency());
}

int cmd_profile(const Flags& f, std::ostream& out) {
    if (f.list) {
        for (const PresetInfo& preset : profile_presets()) out << preset.name << " = " << preset.expansion << '\n';
        return success;
    }
    if (f.profile.empty() || !f.z) throw Error(ErrorCode::invalid_domain, "profile needs --profile and --z (or --list)");
    const Profile p = parse_profile(f.profile);
    const double value = p.eval(*f.z);
    const double slope = p.derivative(*f.z);
    if (f.json) {
        nlohmann::ordered_json j;
        j["z"] = *f.z;
        j["F"] = value;
        j["F_prime"] = slope;
        out << j.dump(2) << '\n';
    } else {
        out << format_number(value) << '\n' << format_number(slope) << '\n';
    }
    return success;
}

int cmd_section(const Flags& f, std::ostream& out) {
    const Profile p = parse_profile(f.profile);
    const SectionLoop loop = trace_section(p, {f.slope, f.intercept}, f.samples);
    Sink sink(f.out_path, out);
    if (f.format == "svg") {
        const CentralityReport report = centrality(loop, f.tol);
        write_loop_svg(*sink, loop, report.center);
    } else {
        write_loop_csv(*sink, loop, f.embed);
    }
    return success;
}

int cmd_center(const Flags& f, std::ostream& out) {
    const Profile p = parse_profile(f.profile);
    const SectionLoop loop = trace_section(p, {f.slope, f.intercept}, f.samples);
    const CentralityReport report =
        centrality(loop, f.tol, f.free_center ? CenterSearch::free : CenterSearch::pinned_y);
    Sink sink(f.out_path, out);
    *sink << centrality_json(report) << '\n';
    return report.central ? success : negative;
}

int cmd_detect(const Flags& f, std::ostream& out) {
    const Profile p = parse_profile(f.profile);
    DetectOptions options;
    options.delta = default_delta(f, p);
    options.planes = f.planes;
    options.samples = f.samples;
    options.tol = f.tol;
    options.workers = worker_count(f);
    const QuadricVerdict verdict = detect_quadric(p, options);
    Sink sink(f.out_path, out);
    *sink << verdict_json(verdict) << '\n';
    return verdict.is_quadric ? success : negative;
}

int cmd_reconstruct(const Flags& f, std::ostream& out) {
    const Profile p = parse_profile(f.profile);
    const double delta = default_delta(f, p);
    const double slope = f.slope_opt.value_or(slope_bound(p, delta) / 2.0);
    const auto betas = sweep_intercepts(p.half_width(), delta, f.planes);
    const CenterCurve curve = center_heights(p, slope, betas, f.samples, f.tol, worker_count(f));
    const auto derivative = derivative_from_centers(curve);

    Sink sink(f.out_path, out);
    *sink << "beta,zeta,fprime_reconstructed,fprime_analytic,abs_error\n";
    for (std::size_t i = 0; i < derivative.size(); ++i) {
        const double analytic = p.derivative(derivative[i].zeta);
        *sink << format_number(curve.entries[i].beta) << ',' << format_number(derivative[i].zeta) << ','
              << format_number(derivative[i].fprime) << ',' << format_number(analytic) << ','
              << format_number(std::abs(derivative[i].fprime - analytic)) << '\n';
    }
    return success;
}

int cmd_mvt(const Flags& f, std::ostream& out) {
    constexpr double threshold = 1e-9;
    if (f.grid < 2) throw Error(ErrorCode::invalid_domain, "--grid must be at least 2");
    const std::vector<double> coeffs = parse_coefficients(f.poly);
    const auto poly = [&](double z) {
        double acc = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
        return acc;
    };
    const auto poly_prime = [&](double z) {
        double acc = 0.0;
        for (std::size_t k = coeffs.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * coeffs[k];
        return acc;
    };

    double worst = 0.0;
    const double k = static_cast<double>(f.grid);
    for (std::size_t i = 0; i < f.grid; ++i) {
        const double zeta = -1.0 + 2.0 * static_cast<double>(i) / (k - 1.0);
        for (std::size_t j = 1; j <= f.grid; ++j) {
            const double t = static_cast<double>(j) / k;
            worst = std::max(worst, std::abs(midpoint_residual(poly, poly_prime, zeta, t)));
        }
    }
    const bool quadratic = worst <= threshold;
    if (f.json) {
        nlohmann::ordered_json j;
        j["max_residual"] = worst;
        j["threshold"] = threshold;
        j["quadratic"] = quadratic;
        out << j.dump(2) << '\n';
    } else {
        out << format_number(worst) << '\n' << (quadratic ? "quadratic" : "not-quadratic") << '\n';
    }
    return success;
}

void add_profile_flag(CLI::App* cmd, Flags& f, bool required = true) {
    auto* opt = cmd->add_option("--profile", f.profile, "Profile spec, e.g. sphere or quadric:a,b,c,q");
    if (required) opt->required();
}

void add_plane_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--slope", f.slope, "Plane slope m")->required()->check(CLI::NonNegativeNumber);
    cmd->add_option("--intercept", f.intercept, "Plane intercept beta")->required();
    cmd->add_option("--samples", f.samples, "Samples per branch")->check(CLI::Range(16, 1 << 22));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Flags f;
    CLI::App app{"Cross-sections of surfaces of revolution and quadric detection", "revsec"};
    app.require_subcommand(1, 1);

    auto* profile = app.add_subcommand("profile", "Evaluate F(z) and F'(z), or list presets");
    add_profile_flag(profile, f, false);
    profile->add_option("--z", f.z, "Height");
    profile->add_flag("--list", f.list, "List presets");
    profile->add_flag("--json", f.json, "Emit JSON");

    auto* section = app.add_subcommand("section", "Trace a plane section as CSV or SVG");
    add_profile_flag(section, f);
    add_plane_flags(section, f);
    section->add_option("--format", f.format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));
    section->add_flag("--embed", f.embed, "Emit embedded x,y,z instead of chart y,z");
    section->add_option("--tol", f.tol, "Centrality tolerance (svg center)")->check(CLI::PositiveNumber);
    section->add_option("--out", f.out_path, "Output path (default: stdout)");

    auto* center = app.add_subcommand("center", "Centrality report of one section as JSON");
    add_profile_flag(center, f);
    add_plane_flags(center, f);
    center->add_option("--tol", f.tol, "Centrality tolerance")->check(CLI::PositiveNumber);
    center->add_flag("--free", f.free_center, "Refine both center coordinates");
    center->add_flag("--json", f.json, "Emit JSON (always on)");
    center->add_option("--out", f.out_path, "Output path (default: stdout)");

    auto* detect = app.add_subcommand("detect", "Decide whether the surface is quadric");
    add_profile_flag(detect, f);
    detect->add_option("--delta", f.delta, "Boundary margin delta (default 0.1 q)")->check(CLI::PositiveNumber);
    detect->add_option("--planes", f.planes, "Number of intercepts")->check(CLI::Range(5, 1 << 16));
    detect->add_option("--samples", f.samples, "Samples per branch")->check(CLI::Range(256, 1 << 22));
    detect->add_option("--tol", f.tol, "Centrality tolerance")->check(CLI::PositiveNumber);
    detect->add_option("--workers", f.workers, "Worker threads (default: all cores)");
    detect->add_flag("--json", f.json, "Emit JSON (always on)");
    detect->add_option("--out", f.out_path, "Output path (default: stdout)");

    auto* reconstruct = app.add_subcommand("reconstruct", "Recover F' from section center heights");
    add_profile_flag(reconstruct, f);
    reconstruct->add_option("--slope", f.slope_opt, "Plane slope (default mu / 2)")->check(CLI::PositiveNumber);
    reconstruct->add_option("--delta", f.delta, "Boundary margin delta (default 0.1 q)")->check(CLI::PositiveNumber);
    reconstruct->add_option("--planes", f.planes, "Number of intercepts")->check(CLI::Range(1, 1 << 16));
    reconstruct->add_option("--samples", f.samples, "Samples per branch")->check(CLI::Range(16, 1 << 22));
    reconstruct->add_option("--tol", f.tol, "Centrality tolerance")->check(CLI::PositiveNumber);
    reconstruct->add_option("--workers", f.workers, "Worker threads (default: all cores)");
    reconstruct->add_option("--out", f.out_path, "Output path (default: stdout)");

    auto* mvt = app.add_subcommand("mvt", "Midpoint mean-value residual of a polynomial over a grid");
    mvt->add_option("--poly", f.poly, "Coefficients c0,c1,...")->required();
    mvt->add_option("--grid", f.grid, "Grid size per axis")->check(CLI::Range(2, 10000));
    mvt->add_flag("--json", f.json, "Emit JSON");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? success : failure;
    }

    try {
        if (*profile) return cmd_profile(f, out);
        if (*section) return cmd_section(f, out);
        if (*center) return cmd_center(f, out);
        if (*detect) return cmd_detect(f, out);
        if (*reconstruct) return cmd_reconstruct(f, out);
        if (*mvt) return cmd_mvt(f, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return failure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return failure;
    }
    return failure;
}

}  // namespace revsec::cli
