#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace toricap {

enum class ErrorCode {
    NonConcave,
    NotMonotone,
    BadEndpoints,
    ZeroDirection,
    PreconditionViolated,
    UnsupportedShape,
    IrrationalRatio,
    LengthMismatch,
    SlopeConditionUnreachable,
    AxisPoint,
    DirectionOutsideGaussImage,
    NotSupported,
    NegativePunctureUnsupported,
    EpsilonTooLarge,
    ParseError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::NonConcave: return "NonConcave";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::BadEndpoints: return "BadEndpoints";
    case ErrorCode::ZeroDirection: return "ZeroDirection";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::UnsupportedShape: return "UnsupportedShape";
    case ErrorCode::IrrationalRatio: return "IrrationalRatio";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::SlopeConditionUnreachable: return "SlopeConditionUnreachable";
    case ErrorCode::AxisPoint: return "AxisPoint";
    case ErrorCode::DirectionOutsideGaussImage: return "DirectionOutsideGaussImage";
    case ErrorCode::NotSupported: return "NotSupported";
    case ErrorCode::NegativePunctureUnsupported: return "NegativePunctureUnsupported";
    case ErrorCode::EpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace toricap
