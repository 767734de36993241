#include "wentzell/errors.hpp"

namespace wentzell {

std::string_view error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::AllZero: return "AllZero";
        case ErrorCode::PureDirichlet: return "PureDirichlet";
        case ErrorCode::NegativeStart: return "NegativeStart";
        case ErrorCode::BadEps: return "BadEps";
        case ErrorCode::NotAdditiveFunctional: return "NotAdditiveFunctional";
        case ErrorCode::StartOutOfRange: return "StartOutOfRange";
        case ErrorCode::NonPositiveTime: return "NonPositiveTime";
        case ErrorCode::NonPositiveLambda: return "NonPositiveLambda";
        case ErrorCode::SingularSystem: return "SingularSystem";
        case ErrorCode::GridTooShort: return "GridTooShort";
        case ErrorCode::BadGrid: return "BadGrid";
        case ErrorCode::UnknownKey: return "UnknownKey";
        case ErrorCode::MissingRequired: return "MissingRequired";
        case ErrorCode::TypeMismatch: return "TypeMismatch";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

}  // namespace wentzell
