#include "revsec/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "revsec/error.hpp"

namespace revsec {

namespace {

constexpr std::size_t leaf_segments = 8;

void require_loop(std::span<const Vec2> points) {
    if (points.size() < 2) throw Error(ErrorCode::degenerate_loop, "loop needs at least two points");
}

double box_distance2(double min_u, double min_v, double max_u, double max_v, Vec2 q) {
    const double du = std::max({min_u - q.u, 0.0, q.u - max_u});
    const double dv = std::max({min_v - q.v, 0.0, q.v - max_v});
    return du * du + dv * dv;
}

}  // namespace

Vec2 centroid(std::span<const Vec2> points) {
    require_loop(points);
    double total = 0.0;
    double su = 0.0;
    double sv = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Vec2& a = points[i];
        const Vec2& b = points[(i + 1) % points.size()];
        const double len = std::hypot(b.u - a.u, b.v - a.v);
        total += len;
        su += 0.5 * (a.u + b.u) * len;
        sv += 0.5 * (a.v + b.v) * len;
    }
    if (!(total > 0.0)) throw Error(ErrorCode::degenerate_loop, "loop has zero length");
    return {su / total, sv / total};
}

double chart_diameter(std::span<const Vec2> points) {
    double best = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            const double du = points[i].u - points[j].u;
            const double dv = points[i].v - points[j].v;
            best = std::max(best, du * du + dv * dv);
        }
    }
    return std::sqrt(best);
}

PolylineDistance::PolylineDistance(std::span<const Vec2> points) : points_(points.begin(), points.end()) {
    require_loop(points);
    nodes_.reserve(4 * (points_.size() / leaf_segments + 1));
    build(0, points_.size());
}

std::size_t PolylineDistance::build(std::size_t first, std::size_t last) {
    const std::size_t index = nodes_.size();
    nodes_.push_back({});

    Node node{};
    node.min_u = node.min_v = std::numeric_limits<double>::infinity();
    node.max_u = node.max_v = -std::numeric_limits<double>::infinity();
    node.first = first;
    node.last = last;
    for (std::size_t i = first; i <= last; ++i) {
        const Vec2& p = points_[i % points_.size()];
        node.min_u = std::min(node.min_u, p.u);
        node.min_v = std::min(node.min_v, p.v);
        node.max_u = std::max(node.max_u, p.u);
        node.max_v = std::max(node.max_v, p.v);
    }
    node.left = node.right = 0;
    if (last - first > leaf_segments) {
        const std::size_t split = first + (last - first) / 2;
        node.left = build(first, split);
        node.right = build(split, last);
    }
    nodes_[index] = node;
    return index;
}

double PolylineDistance::segment_distance2(std::size_t i, Vec2 q) const {
    const Vec2& a = points_[i];
    const Vec2& b = points_[(i + 1) % points_.size()];
    const double eu = b.u - a.u;
    const double ev = b.v - a.v;
    const double len2 = eu * eu + ev * ev;
    double t = 0.0;
    if (len2 > 0.0) t = std::clamp(((q.u - a.u) * eu + (q.v - a.v) * ev) / len2, 0.0, 1.0);
    const double du = a.u + t * eu - q.u;
    const double dv = a.v + t * ev - q.v;
    return du * du + dv * dv;
}

double PolylineDistance::operator()(Vec2 query) const {
    double best = std::numeric_limits<double>::infinity();
    std::size_t stack[64];
    std::size_t top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const Node& node = nodes_[stack[--top]];
        if (box_distance2(node.min_u, node.min_v, node.max_u, node.max_v, query) >= best) continue;
        if (node.left == 0) {
            for (std::size_t i = node.first; i < node.last; ++i) best = std::min(best, segment_distance2(i, query));
            continue;
        }
        // Visit the nearer child first.
        const Node& l = nodes_[node.left];
        const Node& r = nodes_[node.right];
        const double dl = box_distance2(l.min_u, l.min_v, l.max_u, l.max_v, query);
        const double dr = box_distance2(r.min_u, r.min_v, r.max_u, r.max_v, query);
        if (dl < dr) {
            stack[top++] = node.right;
            stack[top++] = node.left;
        } else {
            stack[top++] = node.left;
            stack[top++] = node.right;
        }
    }
    return std::sqrt(best);
}

ReflectionScore::ReflectionScore(std::span<const Vec2> points)
    : points_(points), distance_(points), diameter_(chart_diameter(points)) {
    if (!(diameter_ > 0.0)) throw Error(ErrorCode::degenerate_loop, "loop has zero diameter");
}

double ReflectionScore::operator()(Vec2 center) const {
    double worst = 0.0;
    for (const Vec2& p : points_) {
        worst = std::max(worst, distance_({2.0 * center.u - p.u, 2.0 * center.v - p.v}));
    }
    return std::min(1.0, worst / diameter_);
}

double asymmetry_at(std::span<const Vec2> points, Vec2 center) {
    require_loop(points);
    if (!std::isfinite(center.u) || !std::isfinite(center.v)) {
        throw Error(ErrorCode::invalid_domain, "center must be finite");
    }
    return ReflectionScore(points)(center);
}

CentralityReport centrality(std::span<const Vec2> points, double tol, CenterSearch search) {
    require_loop(points);
    const ReflectionScore score(points);

    Vec2 center = centroid(points);
    if (search == CenterSearch::pinned_y) center.u = 0.0;
    double best = score(center);

    double step = score.diameter() / 8.0;
    for (int level = 0; level <= 20; ++level) {
        for (int axis = search == CenterSearch::pinned_y ? 1 : 0; axis < 2; ++axis) {
            for (double direction : {1.0, -1.0}) {
                for (int moves = 0; moves < 64; ++moves) {
                    Vec2 candidate = center;
                    (axis == 0 ? candidate.u : candidate.v) += direction * step;
                    const double s = score(candidate);
                    if (!(s < best)) break;
                    best = s;
                    center = candidate;
                }
            }
        }
        step *= 0.5;
    }
    return {center, best, tol, best <= tol};
}

double symmetric_quotient(const RealFunction& f, double zeta, double t) {
    if (t == 0.0 || !std::isfinite(t)) throw Error(ErrorCode::invalid_domain, "t must be non-zero and finite");
    return (f(zeta + t) - f(zeta - t)) / (2.0 * t);
}

double midpoint_residual(const RealFunction& f, const RealFunction& f_prime, double zeta, double t) {
    return f_prime(zeta) - symmetric_quotient(f, zeta, t);
}

}  // namespace revsec
