#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "revsec/monotone_cubic.hpp"

namespace revsec {

/// Euler's triple for the quadric x^2 + y^2 = a z^2 + b z + c.
struct QuadricParams {
    double a = 0.0;  // dimensionless
    double b = 0.0;  // length
    double c = 0.0;  // length squared
};

enum class ProfileKind { quadratic, polynomial, sampled };

/// Number of points in the uniform scans used for positivity certification,
/// the infimum radius and the slope bound.
inline constexpr std::size_t scan_points = 4097;

/// Profile F of a surface of revolution x^2 + y^2 = F(z), |z| < q, in
/// standard position. Immutable after construction; construction certifies
/// F > 0 on a dense scan of the open domain.
class Profile {
public:
    static Profile quadric(const QuadricParams& params, double q);
    /// F(z) = c0 + c1 z + ... + cn z^n on |z| < q.
    static Profile polynomial(std::vector<double> coefficients, double q);
    /// Samples must be strictly increasing in z with z.front() < 0 < z.back();
    /// the domain half-width is min(-z.front(), z.back()).
    static Profile sampled(std::vector<double> z, std::vector<double> f);

    [[nodiscard]] ProfileKind kind() const noexcept { return kind_; }
    [[nodiscard]] double half_width() const noexcept { return q_; }
    /// Step used for the numeric derivative of sampled profiles.
    [[nodiscard]] double derivative_step() const noexcept { return h_; }

    /// Ascending coefficients (quadratic and polynomial kinds); empty for sampled.
    [[nodiscard]] std::span<const double> coefficients() const noexcept { return coeffs_; }
    /// Present for the quadratic kind only.
    [[nodiscard]] std::optional<QuadricParams> quadric_params() const;

    /// F(z). Throws OutOfDomain for |z| >= q and NonPositiveProfile if the
    /// value is not strictly positive.
    [[nodiscard]] double eval(double z) const;
    [[nodiscard]] double operator()(double z) const { return eval(z); }

    /// F'(z): exact for the polynomial kinds, a central difference with step
    /// min(h, (q - |z|) / 2) on the interpolant for sampled profiles.
    [[nodiscard]] double derivative(double z) const;

private:
    Profile() = default;
    void certify_positive() const;
    void check_domain(double z) const;
    [[nodiscard]] double raw(double z) const;

    ProfileKind kind_ = ProfileKind::quadratic;
    double q_ = 0.0;
    double h_ = 0.0;
    std::vector<double> coeffs_;
    MonotoneCubic table_;
};

/// phi(delta) = inf { sqrt(F(z)) : |z| < q - delta }: grid minimum over
/// scan_points nodes, refined by golden-section search in the best cell.
[[nodiscard]] double infimum_radius(const Profile& profile, double delta);

/// Parse the profile mini-language:
///   quadric:a,b,c,q | poly:c0,...,cn;q | samples:<csv path> |
///   sphere | cylinder:r,q | hyperboloid:r,q | paraboloid:c,q
[[nodiscard]] Profile parse_profile(std::string_view spec);

struct PresetInfo {
    std::string_view name;
    std::string_view expansion;
};

/// The four presets and what they expand to.
[[nodiscard]] std::span<const PresetInfo> profile_presets() noexcept;

}  // namespace revsec
