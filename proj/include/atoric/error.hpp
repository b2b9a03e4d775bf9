#pragma once

#include <stdexcept>
#include <string>

namespace atoric {

enum class ErrorCode {
    ZeroVector,
    NotPrimitive,
    IdentityMonodromy,
    NotParabolic,
    OrientationReversing,
    InvalidBase,
    IndexOutOfRange,
    MovePrecondition,
    WindingViolation,
    IterationCap,
    Parse,
    Unrenderable,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace atoric
