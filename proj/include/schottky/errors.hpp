#pragma once

#include <stdexcept>
#include <string>

namespace schottky {

// Failure modes surfaced by the library. Each operation documents which
// codes it can raise; everything else is a plain std::logic_error.
enum class errc {
    parabolic_or_elliptic,
    not_diagonal,
    not_loxodromic,
    bad_determinant,
    fixes_infinity,
    degenerate_circle,
    nonpositive_length,
    degenerate_fixed_point,
    shared_fixed_point,
    nonpositive_displacement,
    search_exhausted,
    budget_exceeded,
    multiplier_too_close,
    out_of_range,
    inapplicable_move,
    degenerate_input,
    not_normalized,
    missing_constant,
    parse_error,
    io_error,
    bad_config,
};

inline const char* to_string(errc code) noexcept {
    switch (code) {
        case errc::parabolic_or_elliptic: return "parabolic_or_elliptic";
        case errc::not_diagonal: return "not_diagonal";
        case errc::not_loxodromic: return "not_loxodromic";
        case errc::bad_determinant: return "bad_determinant";
        case errc::fixes_infinity: return "fixes_infinity";
        case errc::degenerate_circle: return "degenerate_circle";
        case errc::nonpositive_length: return "nonpositive_length";
        case errc::degenerate_fixed_point: return "degenerate_fixed_point";
        case errc::shared_fixed_point: return "shared_fixed_point";
        case errc::nonpositive_displacement: return "nonpositive_displacement";
        case errc::search_exhausted: return "search_exhausted";
        case errc::budget_exceeded: return "budget_exceeded";
        case errc::multiplier_too_close: return "multiplier_too_close";
        case errc::out_of_range: return "out_of_range";
        case errc::inapplicable_move: return "inapplicable_move";
        case errc::degenerate_input: return "degenerate_input";
        case errc::not_normalized: return "not_normalized";
        case errc::missing_constant: return "missing_constant";
        case errc::parse_error: return "parse_error";
        case errc::io_error: return "io_error";
        case errc::bad_config: return "bad_config";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
    throw Error(code, what);
}

} // namespace schottky
