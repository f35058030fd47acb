#include "martinet/error.hpp"

namespace martinet {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::zero_constant_term: return "ZeroConstantTerm";
    case ErrorCode::nonzero_inner_constant: return "NonzeroInnerConstant";
    case ErrorCode::non_unit_linear_term: return "NonUnitLinearTerm";
    case ErrorCode::not_mu_preserving: return "NotMuPreserving";
    case ErrorCode::inadmissible_psi: return "InadmissiblePsi";
    case ErrorCode::insufficient_order: return "InsufficientOrder";
    case ErrorCode::leading_coefficient_zero: return "LeadingCoefficientZero";
    case ErrorCode::bad_arity: return "BadArity";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
{}

}  // namespace martinet
