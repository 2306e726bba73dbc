#pragma once

#include <ostream>
#include <string>

#include "revsec/detect.hpp"
#include "revsec/section.hpp"
#include "revsec/symmetry.hpp"

namespace revsec {

/// 17 significant digits; parses back to the same double.
[[nodiscard]] std::string format_number(double value);

/// Loop CSV: header `y,z` (tilted chart), `x,y` (horizontal chart) or `x,y,z`
/// when embedded; rows in traversal order, first row repeated at the end.
void write_loop_csv(std::ostream& out, const SectionLoop& loop, bool embedded);

/// SVG overlay of the loop, its reflection through `center`, and a center
/// marker. Axes are scaled independently to fill the canvas; point reflection
/// commutes with axis scaling, so the overlay stays a faithful centrality check.
void write_loop_svg(std::ostream& out, const SectionLoop& loop, Vec2 center);

/// {"center_y", "center_z", "asymmetry", "tol", "central"}
[[nodiscard]] std::string centrality_json(const CentralityReport& report);

/// {"is_quadric", "a", "b", "c", "fit_residual", "witness", "planes_tested",
///  "epsilon", "delta", "slope", "diagnostic"}
[[nodiscard]] std::string verdict_json(const QuadricVerdict& verdict);

}  // namespace revsec
