#pragma once

#include <cstddef>
#include <vector>

#include "revsec/profile.hpp"

namespace revsec {

/// Cutting plane z = m x + beta. The circle of tilt directions sharing the
/// same slope is collapsed onto the x-z plane by rotational symmetry.
struct Plane {
    double slope = 0.0;      // m >= 0
    double intercept = 0.0;  // beta
};

/// A point in a plane chart: (y, z) for tilted planes, in-plane (x, y) for
/// horizontal ones.
struct Vec2 {
    double u = 0.0;
    double v = 0.0;

    friend bool operator==(const Vec2&, const Vec2&) = default;
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

struct Extent {
    double lo = 0.0;
    double hi = 0.0;
};

/// Closed cross-section in the plane's chart.
///
/// For m > 0 the points run along the upper branch (y >= 0) from z_lo to z_hi
/// and back along the mirrored lower branch; the closing segment joins the
/// last point to the first, which is not repeated. For m = 0 the loop is the
/// horizontal circle and z_lo = z_hi = beta.
struct SectionLoop {
    Plane plane;
    std::vector<Vec2> points;
    double z_lo = 0.0;
    double z_hi = 0.0;
    bool closed = true;
};

/// g(z) = F(z) - ((z - beta) / m)^2, which equals y^2 on the section.
[[nodiscard]] double section_gap(const Profile& profile, const Plane& plane, double z);

/// Roots of g nearest beta on either side. Steps outward by m sqrt(F(beta)) / 8
/// until g changes sign, then bisects to full double precision.
/// Throws LoopEscapesDomain when a step reaches |z| >= q first.
[[nodiscard]] Extent section_extent(const Profile& profile, const Plane& plane);

/// Trace the section with n Chebyshev-Lobatto heights per branch (2n - 2
/// distinct points). n >= 16.
[[nodiscard]] SectionLoop trace_section(const Profile& profile, const Plane& plane, std::size_t n);

/// Chart points placed back in space: (y, z) -> ((z - beta) / m, y, z).
[[nodiscard]] std::vector<Vec3> embed_3d(const SectionLoop& loop);

/// mu = delta / (2 max sqrt(F)) over |z| <= q - delta / 2. Requires 0 < delta < q;
/// detection further restricts delta below q / 3.
[[nodiscard]] double slope_bound(const Profile& profile, double delta);

/// Throws SlabViolation unless every traced height satisfies |z - beta| < delta.
void check_slab(const SectionLoop& loop, double delta);

}  // namespace revsec
