#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ddesim {

// Error codes name the first violated invariant or failure condition
// (e.g. "ProbSumMismatch", "PositiveDelayTooSmall").
class CodedError : public std::runtime_error {
public:
    CodedError(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// Malformed specs and configs. The CLI maps these to exit code 2.
class ValidationError : public CodedError {
public:
    using CodedError::CodedError;
};

// Failures while solving or evaluating. The CLI maps these to exit code 3.
class SolverError : public CodedError {
public:
    using CodedError::CodedError;
};

}  // namespace ddesim
