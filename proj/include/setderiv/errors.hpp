#pragma once

#include <stdexcept>
#include <string>

namespace setderiv {

/// Error categories carried by all library exceptions. The CLI maps each
/// category to a distinct exit code.
enum class ErrorCode {
    Other = 1,
    ConfigParse = 2,
    UnknownExperiment = 3,
    VerdictMismatch = 4,
    EmptySet = 10,
    ModeViolation = 11,
    MarginTooSmall = 12,
    OutOfDomain = 13,
    OnSet = 14,
    NonConvex = 15,
    ResolutionTooCoarse = 16,
    NormalDecompositionFails = 17,
    ConditionBViolated = 18,
    BundleMismatch = 19,
    UnsupportedSet = 20,
    EmptyBundle = 21,
    InvalidDirection = 22,
    DensityConditionFails = 23,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

}  // namespace setderiv
