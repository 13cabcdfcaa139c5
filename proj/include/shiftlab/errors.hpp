#pragma once

#include <stdexcept>
#include <string>

namespace shiftlab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};

struct NonPrimeModulus : Error {
    explicit NonPrimeModulus(const std::string& what) : Error(what) {}
};

struct CtxMismatch : Error {
    CtxMismatch() : Error("operands belong to different field contexts") {}
};

struct ZeroElement : Error {
    explicit ZeroElement(const std::string& what = "zero element not allowed here") : Error(what) {}
};

struct ZeroDilation : Error {
    ZeroDilation() : Error("dilation by zero") {}
};

struct ZeroParameter : Error {
    ZeroParameter() : Error("line parameter must be nonzero") {}
};

struct SetTooSmall : Error {
    explicit SetTooSmall(const std::string& what) : Error(what) {}
};

struct EmptyHistogram : Error {
    EmptyHistogram() : Error("empty histogram") {}
};

struct TooLarge : Error {
    explicit TooLarge(const std::string& what) : Error(what) {}
};

struct BadParams : Error {
    explicit BadParams(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

/// An exact (constant-free) theorem identity failed. This is always a bug,
/// either here or in the inputs handed to a verifier; the CLI maps it to
/// exit code 1.
struct ExactStepViolation : Error {
    explicit ExactStepViolation(const std::string& what) : Error(what) {}
};

} // namespace shiftlab
