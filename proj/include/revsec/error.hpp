#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace revsec {

enum class ErrorCode {
    invalid_domain,
    out_of_domain,
    non_positive_profile,
    parse_error,
    zero_slope,
    loop_escapes_domain,
    slab_violation,
    degenerate_loop,
    singular_configuration,
    rank_deficient,
    io_error,
};

[[nodiscard]] std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto its exit-code contract without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Parse failure in the profile mini-language; `position` is a 0-based offset.
class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& what)
        : Error(ErrorCode::parse_error, "at position " + std::to_string(position) + ": " + what),
          position_(position) {}

    [[nodiscard]] std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace revsec
