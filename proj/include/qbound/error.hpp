#pragma once

#include <stdexcept>
#include <string>

namespace qbound {

/// Failure carrying a short machine-readable code ("cannot-factor",
/// "pw-precondition", ...) next to the human-readable detail.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)), detail_(detail)
    {
    }

    const std::string& code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string code_;
    std::string detail_;
};

namespace errc {
inline constexpr const char* cannot_factor = "cannot-factor";
inline constexpr const char* mixed_field = "mixed-field";
inline constexpr const char* not_quadratic_irrational = "not-quadratic-irrational";
inline constexpr const char* precondition = "precondition";
inline constexpr const char* indeterminate = "indeterminate";
inline constexpr const char* pw_precondition = "pw-precondition";
inline constexpr const char* g2l_domain = "g2l-domain";
inline constexpr const char* no_convergence = "no-convergence";
inline constexpr const char* inapplicable = "inapplicable";
inline constexpr const char* malformed_path = "malformed-path";
inline constexpr const char* budget_exceeded = "budget-exceeded";
inline constexpr const char* malformed_input = "malformed-input";
} // namespace errc

} // namespace qbound
