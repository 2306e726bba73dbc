#include "revsec/profile.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/format.h>

#include "revsec/error.hpp"

namespace revsec {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::invalid_domain: return "InvalidDomain";
        case ErrorCode::out_of_domain: return "OutOfDomain";
        case ErrorCode::non_positive_profile: return "NonPositiveProfile";
        case ErrorCode::parse_error: return "ParseError";
        case ErrorCode::zero_slope: return "ZeroSlope";
        case ErrorCode::loop_escapes_domain: return "LoopEscapesDomain";
        case ErrorCode::slab_violation: return "SlabViolation";
        case ErrorCode::degenerate_loop: return "DegenerateLoop";
        case ErrorCode::singular_configuration: return "SingularConfiguration";
        case ErrorCode::rank_deficient: return "RankDeficient";
        case ErrorCode::io_error: return "IoError";
    }
    return "Unknown";
}

namespace {

double horner(std::span<const double> c, double z) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

double horner_derivative(std::span<const double> c, double z) {
    double acc = 0.0;
    for (std::size_t k = c.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * c[k];
    return acc;
}

void require_positive_width(double q) {
    if (!(q > 0.0) || !std::isfinite(q)) {
        throw Error(ErrorCode::invalid_domain, fmt::format("half-width q must be positive, got {}", q));
    }
}

}  // namespace

Profile Profile::quadric(const QuadricParams& params, double q) {
    require_positive_width(q);
    Profile p;
    p.kind_ = ProfileKind::quadratic;
    p.q_ = q;
    p.h_ = 1e-5 * q;
    p.coeffs_ = {params.c, params.b, params.a};
    p.certify_positive();
    // A quadratic can only dip between scan nodes at its vertex.
    if (params.a > 0.0) {
        const double vertex = -params.b / (2.0 * params.a);
        if (std::abs(vertex) < q && !(p.raw(vertex) > 0.0)) {
            throw Error(ErrorCode::non_positive_profile,
                        fmt::format("F({:.17g}) = {:.17g} <= 0", vertex, p.raw(vertex)));
        }
    }
    return p;
}

Profile Profile::polynomial(std::vector<double> coefficients, double q) {
    require_positive_width(q);
    if (coefficients.empty()) {
        throw Error(ErrorCode::non_positive_profile, "polynomial has no coefficients");
    }
    Profile p;
    p.kind_ = ProfileKind::polynomial;
    p.q_ = q;
    p.h_ = 1e-5 * q;
    p.coeffs_ = std::move(coefficients);
    p.certify_positive();
    return p;
}

Profile Profile::sampled(std::vector<double> z, std::vector<double> f) {
    if (z.size() != f.size() || z.size() < 3) {
        throw Error(ErrorCode::invalid_domain, "sampled profile needs at least 3 (z, F) pairs");
    }
    for (std::size_t i = 1; i < z.size(); ++i) {
        if (!(z[i] > z[i - 1])) {
            throw Error(ErrorCode::invalid_domain, "sample abscissae must be strictly increasing");
        }
    }
    for (double v : f) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw Error(ErrorCode::non_positive_profile, "sample ordinates must be strictly positive");
        }
    }
    const double q = std::min(-z.front(), z.back());
    require_positive_width(q);

    Profile p;
    p.kind_ = ProfileKind::sampled;
    p.q_ = q;
    p.h_ = 1e-5 * q;
    p.table_ = MonotoneCubic(std::move(z), std::move(f));
    p.certify_positive();
    return p;
}

std::optional<QuadricParams> Profile::quadric_params() const {
    if (kind_ != ProfileKind::quadratic) return std::nullopt;
    return QuadricParams{coeffs_[2], coeffs_[1], coeffs_[0]};
}

void Profile::certify_positive() const {
    const double span = q_ * (1.0 - std::ldexp(1.0, -20));
    for (std::size_t i = 0; i < scan_points; ++i) {
        const double z = -span + 2.0 * span * static_cast<double>(i) / static_cast<double>(scan_points - 1);
        const double v = raw(z);
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw Error(ErrorCode::non_positive_profile, fmt::format("F({:.17g}) = {:.17g} <= 0", z, v));
        }
    }
}

void Profile::check_domain(double z) const {
    if (!(std::abs(z) < q_)) {
        throw Error(ErrorCode::out_of_domain, fmt::format("|z| = {:.17g} is not below q = {:.17g}", std::abs(z), q_));
    }
}

double Profile::raw(double z) const {
    if (kind_ == ProfileKind::sampled) return table_(z);
    return horner(coeffs_, z);
}

double Profile::eval(double z) const {
    check_domain(z);
    const double v = raw(z);
    if (!(v > 0.0)) {
        throw Error(ErrorCode::non_positive_profile, fmt::format("F({:.17g}) = {:.17g} <= 0", z, v));
    }
    return v;
}

double Profile::derivative(double z) const {
    check_domain(z);
    if (kind_ != ProfileKind::sampled) return horner_derivative(coeffs_, z);
    const double step = std::min(h_, 0.5 * (q_ - std::abs(z)));
    return (table_(z + step) - table_(z - step)) / (2.0 * step);
}

double infimum_radius(const Profile& profile, double delta) {
    const double q = profile.half_width();
    if (!(delta > 0.0 && delta < q)) {
        throw Error(ErrorCode::invalid_domain, fmt::format("delta = {} must lie in (0, q = {})", delta, q));
    }
    const double reach = q - delta;
    const auto node = [&](std::size_t i) {
        return -reach + 2.0 * reach * static_cast<double>(i) / static_cast<double>(scan_points - 1);
    };
    const auto radius = [&](double z) { return std::sqrt(profile.eval(z)); };

    std::size_t best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < scan_points; ++i) {
        const double v = radius(node(i));
        if (v < best_value) {
            best_value = v;
            best = i;
        }
    }

    // Golden-section refinement over the two cells adjacent to the best node.
    double lo = node(best == 0 ? 0 : best - 1);
    double hi = node(std::min(best + 1, scan_points - 1));
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = radius(x1);
    double f2 = radius(x2);
    for (int iter = 0; iter < 80 && hi - lo > 1e-15 * q; ++iter) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = radius(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = radius(x2);
        }
    }
    return std::min({best_value, f1, f2});
}

// ---------------------------------------------------------------------------
// Mini-language

namespace {

class SpecReader {
public:
    SpecReader(std::string_view text, std::size_t offset) : text_(text), offset_(offset) {}

    double number() {
        skip_spaces();
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        double value = 0.0;
        // from_chars rejects a leading '+', accept it here.
        if (first != last && *first == '+') ++first;
        const auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || !std::isfinite(value)) {
            throw ParseError(offset_ + pos_, "expected a number");
        }
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        skip_spaces();
        return value;
    }

    void expect(char c) {
        if (pos_ >= text_.size() || text_[pos_] != c) {
            throw ParseError(offset_ + pos_, fmt::format("expected '{}'", c));
        }
        ++pos_;
    }

    [[nodiscard]] bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

    void finish() {
        skip_spaces();
        if (pos_ != text_.size()) throw ParseError(offset_ + pos_, "unexpected trailing characters");
    }

    std::vector<double> list(std::size_t count) {
        std::vector<double> out;
        for (std::size_t i = 0; i < count; ++i) {
            if (i > 0) expect(',');
            out.push_back(number());
        }
        return out;
    }

private:
    void skip_spaces() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    std::string_view text_;
    std::size_t offset_;
    std::size_t pos_ = 0;
};

constexpr std::array<PresetInfo, 4> presets{{
    {"sphere", "quadric:-1,0,1,1"},
    {"cylinder:r,q", "quadric:0,0,r^2,q"},
    {"hyperboloid:r,q", "quadric:1,0,r^2,q"},
    {"paraboloid:c,q", "quadric:0,1,c,q (requires c > q)"},
}};

Profile read_samples_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io_error, "cannot open samples file '" + path + "'");
    std::string line;
    std::size_t offset = 0;
    if (!std::getline(in, line)) throw ParseError(0, "samples file is empty");
    std::string header = line;
    header.erase(std::remove_if(header.begin(), header.end(),
                                [](char ch) { return ch == ' ' || ch == '\r'; }),
                 header.end());
    if (header != "z,F") throw ParseError(0, "samples header must be 'z,F'");
    offset += line.size() + 1;

    std::vector<double> z;
    std::vector<double> f;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") != std::string::npos) {
            SpecReader row(line, offset);
            z.push_back(row.number());
            row.expect(',');
            f.push_back(row.number());
            row.finish();
        }
        offset += line.size() + 1;
    }
    return Profile::sampled(std::move(z), std::move(f));
}

}  // namespace

std::span<const PresetInfo> profile_presets() noexcept { return presets; }

Profile parse_profile(std::string_view spec) {
    const std::size_t colon = spec.find(':');
    const std::string_view head = spec.substr(0, colon);
    const std::size_t body_at = colon == std::string_view::npos ? spec.size() : colon + 1;
    const std::string_view body = spec.substr(body_at);
    SpecReader reader(body, body_at);

    if (head == "sphere") {
        if (colon != std::string_view::npos) throw ParseError(colon, "'sphere' takes no arguments");
        return Profile::quadric({-1.0, 0.0, 1.0}, 1.0);
    }
    if (colon == std::string_view::npos) throw ParseError(0, fmt::format("unknown profile '{}'", spec));

    if (head == "quadric") {
        const auto v = reader.list(4);
        reader.finish();
        return Profile::quadric({v[0], v[1], v[2]}, v[3]);
    }
    if (head == "poly") {
        std::vector<double> coeffs{reader.number()};
        while (reader.peek(',')) {
            reader.expect(',');
            coeffs.push_back(reader.number());
        }
        reader.expect(';');
        const double q = reader.number();
        reader.finish();
        return Profile::polynomial(std::move(coeffs), q);
    }
    if (head == "samples") {
        if (body.empty()) throw ParseError(body_at, "expected a file path");
        return read_samples_csv(std::string(body));
    }
    if (head == "cylinder" || head == "hyperboloid" || head == "paraboloid") {
        const auto v = reader.list(2);
        reader.finish();
        if (head == "cylinder") return Profile::quadric({0.0, 0.0, v[0] * v[0]}, v[1]);
        if (head == "hyperboloid") return Profile::quadric({1.0, 0.0, v[0] * v[0]}, v[1]);
        if (!(v[0] > v[1])) {
            throw Error(ErrorCode::non_positive_profile,
                        fmt::format("paraboloid needs c > q (F = z + c), got c = {}, q = {}", v[0], v[1]));
        }
        return Profile::quadric({0.0, 1.0, v[0]}, v[1]);
    }
    throw ParseError(0, fmt::format("unknown profile kind '{}'", head));
}

}  // namespace revsec
