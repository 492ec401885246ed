#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace warpcurv {

/// Raised when a closed-form evaluation leaves the real domain of an
/// elementary operation (log of a nonpositive value, division by zero, ...).
/// Carries the operation name and the offending value so callers can report
/// which chart point failed instead of aborting.
class EvalError : public std::runtime_error {
public:
    EvalError(std::string op, double value, const std::string& detail)
        : std::runtime_error("evaluation error in '" + op + "' (value " +
                             std::to_string(value) + "): " + detail),
          op_(std::move(op)),
          value_(value) {}

    const std::string& op() const noexcept { return op_; }
    double value() const noexcept { return value_; }

private:
    std::string op_;
    double value_;
};

/// Syntax or name-resolution failure while parsing an expression.
/// `offset` is the byte offset into the source text.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, const std::string& detail)
        : std::runtime_error("parse error at offset " + std::to_string(offset) +
                             ": " + detail),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// A scenario or geometric precondition failed (metric not positive definite,
/// immersion not isometric, degenerate plane, rank deficiency, ...).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& detail)
        : std::runtime_error(detail) {}
};

}  // namespace warpcurv
