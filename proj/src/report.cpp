#include "revsec/report.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

#include "json.hpp"

namespace revsec {

using ordered_json = nlohmann::ordered_json;

std::string format_number(double value) { return fmt::format("{:.17g}", value); }

void write_loop_csv(std::ostream& out, const SectionLoop& loop, bool embedded) {
    if (loop.points.empty()) return;
    if (embedded) {
        const auto points = embed_3d(loop);
        out << "x,y,z\n";
        for (std::size_t i = 0; i <= points.size(); ++i) {
            const Vec3& p = points[i % points.size()];
            out << format_number(p.x) << ',' << format_number(p.y) << ',' << format_number(p.z) << '\n';
        }
        return;
    }
    out << (loop.plane.slope == 0.0 ? "x,y\n" : "y,z\n");
    for (std::size_t i = 0; i <= loop.points.size(); ++i) {
        const Vec2& p = loop.points[i % loop.points.size()];
        out << format_number(p.u) << ',' << format_number(p.v) << '\n';
    }
}

void write_loop_svg(std::ostream& out, const SectionLoop& loop, Vec2 center) {
    constexpr double canvas = 640.0;
    constexpr double margin = 20.0;

    std::vector<Vec2> reflected;
    reflected.reserve(loop.points.size());
    for (const Vec2& p : loop.points) reflected.push_back({2.0 * center.u - p.u, 2.0 * center.v - p.v});

    double min_u = std::numeric_limits<double>::infinity();
    double min_v = min_u;
    double max_u = -min_u;
    double max_v = -min_u;
    for (const std::vector<Vec2>* set : std::initializer_list<const std::vector<Vec2>*>{&loop.points, &reflected}) {
        for (const Vec2& p : *set) {
            min_u = std::min(min_u, p.u);
            max_u = std::max(max_u, p.u);
            min_v = std::min(min_v, p.v);
            max_v = std::max(max_v, p.v);
        }
    }
    const double su = (canvas - 2.0 * margin) / std::max(max_u - min_u, 1e-300);
    const double sv = (canvas - 2.0 * margin) / std::max(max_v - min_v, 1e-300);
    const auto px = [&](Vec2 p) {
        return fmt::format("{:.6f},{:.6f}", margin + (p.u - min_u) * su, canvas - margin - (p.v - min_v) * sv);
    };
    const auto polygon = [&](const std::vector<Vec2>& pts, std::string_view style) {
        out << "  <polygon points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) out << (i ? " " : "") << px(pts[i]);
        out << "\" " << style << "/>\n";
    };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">\n",
                       canvas);
    out << fmt::format("  <title>section m={} beta={}</title>\n", format_number(loop.plane.slope),
                       format_number(loop.plane.intercept));
    polygon(loop.points, "fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"");
    polygon(reflected, "fill=\"none\" stroke=\"#d62728\" stroke-width=\"1\" stroke-dasharray=\"4 3\"");
    const std::string c = px(center);
    const auto comma = c.find(',');
    out << "  <circle cx=\"" << c.substr(0, comma) << "\" cy=\"" << c.substr(comma + 1)
        << "\" r=\"4\" fill=\"#2ca02c\"/>\n";
    out << "</svg>\n";
}

std::string centrality_json(const CentralityReport& report) {
    ordered_json j;
    j["center_y"] = report.center.u;
    j["center_z"] = report.center.v;
    j["asymmetry"] = report.asymmetry;
    j["tol"] = report.tolerance;
    j["central"] = report.central;
    return j.dump(2);
}

std::string verdict_json(const QuadricVerdict& verdict) {
    ordered_json j;
    j["is_quadric"] = verdict.is_quadric;
    if (verdict.params) {
        j["a"] = verdict.params->a;
        j["b"] = verdict.params->b;
        j["c"] = verdict.params->c;
    } else {
        j["a"] = nullptr;
        j["b"] = nullptr;
        j["c"] = nullptr;
    }
    j["fit_residual"] = verdict.fit_residual;
    if (verdict.witness) {
        ordered_json w;
        w["m"] = verdict.witness->plane.slope;
        w["beta"] = verdict.witness->plane.intercept;
        w["asymmetry"] = verdict.witness->report.asymmetry;
        w["center_z"] = verdict.witness->report.center.v;
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    j["planes_tested"] = verdict.planes_tested;
    j["epsilon"] = verdict.epsilon;
    j["delta"] = verdict.delta;
    j["slope"] = verdict.slope;
    j["diagnostic"] = verdict.central_but_not_fit ? ordered_json("central-sections-but-fit-failed") : ordered_json();
    return j.dump(2);
}

}  // namespace revsec
