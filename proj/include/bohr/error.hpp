#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bohr {

enum class ErrorCode {
    EmptyPolynomial,
    NoRootInInterval,
    FamilyConstraint,
    ParamRange,
    NotInDisk,
    RadiusRange,
    SupportMismatch,
    RequiresVanishingOrigin,
    OutsidePolydisk,
    ZeroDirection,
    HypothesisUnmet,
    NoCrossover,
};

std::string_view error_name(ErrorCode code);

// Every failure raised by the library carries one of the codes above; the
// message is prefixed with the code name so logs stay greppable.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace bohr
