#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wentzell {

enum class ErrorCode {
    AllZero,
    PureDirichlet,
    NegativeStart,
    BadEps,
    NotAdditiveFunctional,
    StartOutOfRange,
    NonPositiveTime,
    NonPositiveLambda,
    SingularSystem,
    GridTooShort,
    BadGrid,
    UnknownKey,
    MissingRequired,
    TypeMismatch,
    Io,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace wentzell
