#include "bohr/error.hpp"

namespace bohr {

std::string_view error_name(ErrorCode code)
{
    switch (code) {
    case ErrorCode::EmptyPolynomial: return "EmptyPolynomial";
    case ErrorCode::NoRootInInterval: return "NoRootInInterval";
    case ErrorCode::FamilyConstraint: return "FamilyConstraint";
    case ErrorCode::ParamRange: return "ParamRange";
    case ErrorCode::NotInDisk: return "NotInDisk";
    case ErrorCode::RadiusRange: return "RadiusRange";
    case ErrorCode::SupportMismatch: return "SupportMismatch";
    case ErrorCode::RequiresVanishingOrigin: return "RequiresVanishingOrigin";
    case ErrorCode::OutsidePolydisk: return "OutsidePolydisk";
    case ErrorCode::ZeroDirection: return "ZeroDirection";
    case ErrorCode::HypothesisUnmet: return "HypothesisUnmet";
    case ErrorCode::NoCrossover: return "NoCrossover";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code)
{
}

} // namespace bohr
