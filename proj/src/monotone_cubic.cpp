#include "revsec/monotone_cubic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace revsec {

namespace {

// Derivative at x[1] of the parabola through three points.
double parabolic_slope(double x0, double x1, double x2, double y0, double y1, double y2) {
    const double h0 = x1 - x0;
    const double h1 = x2 - x1;
    const double s0 = (y1 - y0) / h0;
    const double s1 = (y2 - y1) / h1;
    return (h1 * s0 + h0 * s1) / (h0 + h1);
}

// One-sided derivative at x0 of the parabola through three points.
double parabolic_end_slope(double x0, double x1, double x2, double y0, double y1, double y2) {
    const double h0 = x1 - x0;
    const double h1 = x2 - x1;
    const double s0 = (y1 - y0) / h0;
    const double s1 = (y2 - y1) / h1;
    return ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
}

}  // namespace

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 3 || y_.size() != n) {
        throw std::invalid_argument("MonotoneCubic needs at least 3 knots and matching values");
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (!(x_[i] > x_[i - 1])) {
            throw std::invalid_argument("MonotoneCubic knots must be strictly increasing");
        }
    }

    std::vector<double> secant(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        secant[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
    }

    d_.resize(n);
    d_[0] = parabolic_end_slope(x_[0], x_[1], x_[2], y_[0], y_[1], y_[2]);
    d_[n - 1] = -parabolic_end_slope(-x_[n - 1], -x_[n - 2], -x_[n - 3],
                                     y_[n - 1], y_[n - 2], y_[n - 3]);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (secant[i - 1] * secant[i] <= 0.0) {
            d_[i] = 0.0;
        } else {
            d_[i] = parabolic_slope(x_[i - 1], x_[i], x_[i + 1], y_[i - 1], y_[i], y_[i + 1]);
        }
    }

    // Endpoint slopes must not point against the first/last secant.
    if (d_[0] * secant[0] < 0.0) d_[0] = 0.0;
    if (d_[n - 1] * secant[n - 2] < 0.0) d_[n - 1] = 0.0;

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (secant[i] == 0.0) {
            d_[i] = 0.0;
            d_[i + 1] = 0.0;
            continue;
        }
        const double alpha = d_[i] / secant[i];
        const double beta = d_[i + 1] / secant[i];
        if (alpha < 0.0) d_[i] = 0.0;
        if (beta < 0.0) d_[i + 1] = 0.0;
        const double r2 = alpha * alpha + beta * beta;
        if (r2 > 9.0) {
            const double tau = 3.0 / std::sqrt(r2);
            d_[i] = tau * alpha * secant[i];
            d_[i + 1] = tau * beta * secant[i];
        }
    }
}

double MonotoneCubic::operator()(double x) const {
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    i = std::min(i, x_.size() - 2);

    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
}

}  // namespace revsec
