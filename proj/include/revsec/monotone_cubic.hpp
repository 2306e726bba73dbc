#pragma once

#include <span>
#include <vector>

namespace revsec {

/// Shape-preserving piecewise-cubic Hermite interpolant.
///
/// Node slopes start from the three-point parabolic finite difference (exact
/// for quadratic data, one-sided at the two ends) and are then limited with
/// the Fritsch-Carlson conditions: a node between secants of opposite sign
/// gets slope zero, and each interval's slope pair is pulled inside the
/// radius-3 circle so the cubic stays monotone wherever the data is.
class MonotoneCubic {
public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> x, std::vector<double> y);

    [[nodiscard]] double operator()(double x) const;

    [[nodiscard]] std::span<const double> knots() const noexcept { return x_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return y_; }
    [[nodiscard]] std::span<const double> slopes() const noexcept { return d_; }

private:
    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> d_;
};

}  // namespace revsec
