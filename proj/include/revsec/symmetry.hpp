#pragma once

#include <functional>
#include <span>
#include <vector>

#include "revsec/section.hpp"

namespace revsec {

/// Outcome of a point-reflection symmetry test on one loop.
struct CentralityReport {
    Vec2 center;
    double asymmetry = 0.0;  // diameter-normalized, in [0, 1]
    double tolerance = 0.0;
    bool central = false;
};

enum class CenterSearch {
    /// Only the height is refined; valid for traced loops, which are exactly
    /// mirror symmetric in y.
    pinned_y,
    /// Both chart coordinates are refined (externally supplied loops).
    free,
};

/// Arclength-weighted centroid of the closed polyline through `points`.
/// Throws DegenerateLoop if the total length is zero.
[[nodiscard]] Vec2 centroid(std::span<const Vec2> points);
[[nodiscard]] inline Vec2 centroid(const SectionLoop& loop) { return centroid(loop.points); }

/// Largest distance between two vertices.
[[nodiscard]] double chart_diameter(std::span<const Vec2> points);

/// Nearest-distance queries against a fixed closed polyline, accelerated by
/// a bounding-box tree over runs of consecutive segments.
class PolylineDistance {
public:
    explicit PolylineDistance(std::span<const Vec2> points);

    [[nodiscard]] double operator()(Vec2 query) const;

private:
    struct Node {
        double min_u, min_v, max_u, max_v;
        std::size_t first, last;  // segment range [first, last)
        std::size_t left, right;  // children, 0 for a leaf
    };

    std::size_t build(std::size_t first, std::size_t last);
    [[nodiscard]] double segment_distance2(std::size_t i, Vec2 q) const;

    std::vector<Vec2> points_;
    std::vector<Node> nodes_;
};

/// Precomputed scorer for repeated asymmetry evaluations on one loop.
class ReflectionScore {
public:
    explicit ReflectionScore(std::span<const Vec2> points);

    /// max_p dist(2 c - p, loop) / diameter, clamped to 1.
    [[nodiscard]] double operator()(Vec2 center) const;
    [[nodiscard]] double diameter() const noexcept { return diameter_; }

private:
    std::span<const Vec2> points_;
    PolylineDistance distance_;
    double diameter_;
};

[[nodiscard]] double asymmetry_at(std::span<const Vec2> points, Vec2 center);
[[nodiscard]] inline double asymmetry_at(const SectionLoop& loop, Vec2 center) {
    return asymmetry_at(loop.points, center);
}

/// Seeds the center at the centroid, then runs one coordinate-descent pass
/// (initial step diameter / 8, halved 20 times) on the asymmetry score.
[[nodiscard]] CentralityReport centrality(std::span<const Vec2> points, double tol,
                                          CenterSearch search = CenterSearch::pinned_y);
[[nodiscard]] inline CentralityReport centrality(const SectionLoop& loop, double tol,
                                                 CenterSearch search = CenterSearch::pinned_y) {
    return centrality(loop.points, tol, search);
}

using RealFunction = std::function<double(double)>;

/// (f(zeta + t) - f(zeta - t)) / (2 t)
[[nodiscard]] double symmetric_quotient(const RealFunction& f, double zeta, double t);

/// f'(zeta) minus the symmetric quotient; identically zero exactly for quadratics.
[[nodiscard]] double midpoint_residual(const RealFunction& f, const RealFunction& f_prime,
                                       double zeta, double t);

}  // namespace revsec
