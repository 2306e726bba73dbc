#include "revsec/section.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "revsec/error.hpp"

namespace revsec {

namespace {

void require_slope(const Plane& plane) {
    if (plane.slope == 0.0) throw Error(ErrorCode::zero_slope, "horizontal plane has no (y, z) chart");
    if (!(plane.slope > 0.0) || !std::isfinite(plane.slope)) {
        throw Error(ErrorCode::invalid_domain, fmt::format("slope must be non-negative, got {}", plane.slope));
    }
}

// Walk from beta in `direction` until g <= 0, then bisect the bracket.
double nearest_root(const Profile& profile, const Plane& plane, double direction) {
    const double q = profile.half_width();
    const double beta = plane.intercept;
    const double step = plane.slope * std::sqrt(profile.eval(beta)) / 8.0;

    double inside = beta;
    double outside = beta;
    for (long k = 1;; ++k) {
        const double z = beta + direction * step * static_cast<double>(k);
        if (!(std::abs(z) < q)) {
            throw Error(ErrorCode::loop_escapes_domain,
                        fmt::format("section of plane m = {:.17g}, beta = {:.17g} does not close before |z| = q",
                                    plane.slope, beta));
        }
        if (section_gap(profile, plane, z) <= 0.0) {
            outside = z;
            break;
        }
        inside = z;
    }

    // Invariant: g(inside) > 0 >= g(outside). Runs until the bracket can no
    // longer be split, far below the 1e-13 q requirement.
    for (;;) {
        const double mid = 0.5 * (inside + outside);
        if (mid == inside || mid == outside) break;
        if (section_gap(profile, plane, mid) > 0.0) {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    // Prefer the side that admits a real y unless the other is an exact root.
    return section_gap(profile, plane, outside) == 0.0 ? outside : inside;
}

}  // namespace

double section_gap(const Profile& profile, const Plane& plane, double z) {
    require_slope(plane);
    const double x = (z - plane.intercept) / plane.slope;
    return profile.eval(z) - x * x;
}

Extent section_extent(const Profile& profile, const Plane& plane) {
    require_slope(plane);
    if (!(std::abs(plane.intercept) < profile.half_width())) {
        throw Error(ErrorCode::out_of_domain,
                    fmt::format("intercept {} outside (-q, q)", plane.intercept));
    }
    return {nearest_root(profile, plane, -1.0), nearest_root(profile, plane, +1.0)};
}

SectionLoop trace_section(const Profile& profile, const Plane& plane, std::size_t n) {
    if (n < 16) throw Error(ErrorCode::invalid_domain, fmt::format("need at least 16 samples per branch, got {}", n));
    if (!(std::abs(plane.intercept) < profile.half_width())) {
        throw Error(ErrorCode::out_of_domain, fmt::format("intercept {} outside (-q, q)", plane.intercept));
    }

    SectionLoop loop;
    loop.plane = plane;
    loop.points.reserve(2 * n - 2);

    if (plane.slope == 0.0) {
        const double r = std::sqrt(profile.eval(plane.intercept));
        const std::size_t count = 2 * n - 2;
        for (std::size_t k = 0; k < count; ++k) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
            loop.points.push_back({r * std::cos(theta), r * std::sin(theta)});
        }
        loop.z_lo = loop.z_hi = plane.intercept;
        return loop;
    }

    const Extent extent = section_extent(profile, plane);
    loop.z_lo = extent.lo;
    loop.z_hi = extent.hi;
    const double mid = 0.5 * (extent.lo + extent.hi);
    const double rad = 0.5 * (extent.hi - extent.lo);

    // Ascending Chebyshev-Lobatto heights; both ends pinned to the roots.
    std::vector<double> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double theta = std::numbers::pi * static_cast<double>(n - 1 - k) / static_cast<double>(n - 1);
        z[k] = mid + rad * std::cos(theta);
    }
    z.front() = extent.lo;
    z.back() = extent.hi;

    std::vector<double> y(n, 0.0);
    for (std::size_t k = 1; k + 1 < n; ++k) {
        y[k] = std::sqrt(std::max(0.0, section_gap(profile, plane, z[k])));
    }

    for (std::size_t k = 0; k < n; ++k) loop.points.push_back({y[k], z[k]});
    for (std::size_t k = n - 2; k >= 1; --k) loop.points.push_back({-y[k], z[k]});
    return loop;
}

std::vector<Vec3> embed_3d(const SectionLoop& loop) {
    std::vector<Vec3> out;
    out.reserve(loop.points.size());
    const Plane& plane = loop.plane;
    if (plane.slope == 0.0) {
        for (const Vec2& p : loop.points) out.push_back({p.u, p.v, plane.intercept});
        return out;
    }
    for (const Vec2& p : loop.points) out.push_back({(p.v - plane.intercept) / plane.slope, p.u, p.v});
    return out;
}

double slope_bound(const Profile& profile, double delta) {
    const double q = profile.half_width();
    if (!(delta > 0.0 && delta < q)) {
        throw Error(ErrorCode::invalid_domain, fmt::format("delta = {} must lie in (0, q = {})", delta, q));
    }
    const double reach = q - 0.5 * delta;
    double max_radius = 0.0;
    for (std::size_t i = 0; i < scan_points; ++i) {
        const double z = -reach + 2.0 * reach * static_cast<double>(i) / static_cast<double>(scan_points - 1);
        max_radius = std::max(max_radius, std::sqrt(profile.eval(z)));
    }
    return delta / (2.0 * max_radius);
}

void check_slab(const SectionLoop& loop, double delta) {
    const double beta = loop.plane.intercept;
    double worst = 0.0;
    if (loop.plane.slope != 0.0) {
        for (const Vec2& p : loop.points) worst = std::max(worst, std::abs(p.v - beta));
    }
    if (!(worst < delta)) {
        throw Error(ErrorCode::slab_violation,
                    fmt::format("section at beta = {:.17g} reaches |z - beta| = {:.17g} >= delta = {:.17g}",
                                beta, worst, delta));
    }
}

}  // namespace revsec
