#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace martinet {

enum class ErrorCode {
    zero_constant_term,
    nonzero_inner_constant,
    non_unit_linear_term,
    not_mu_preserving,
    inadmissible_psi,
    insufficient_order,
    leading_coefficient_zero,
    bad_arity,
    invalid_argument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Error raised by every library operation. The code identifies the violated precondition.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace martinet
