#pragma once

#include <stdexcept>
#include <string>

namespace gfvc {

/// Argument outside the mathematical domain of an operator.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A numerical routine could not reach the requested tolerance.
/// Carries the best available estimate and its error bound instead of
/// silently returning a wrong value.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double best, double est_error)
        : std::runtime_error(what), best_estimate(best), est_abs_error(est_error) {}

    double best_estimate;
    double est_abs_error;
};

/// Expression text failed to parse.  `offset` is the byte position of the
/// failure, `expected` a human-readable token-set description.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset, std::string expected)
        : std::runtime_error(what), offset(offset), expected(std::move(expected)) {}

    std::size_t offset;
    std::string expected;
};

/// Expression evaluation hit an invalid operation (division by zero,
/// fractional power of a negative base).  `offset` locates the
/// subexpression in the original source text.
class EvalError : public std::runtime_error {
public:
    EvalError(const std::string& what, std::size_t offset)
        : std::runtime_error(what), offset(offset) {}

    std::size_t offset;
};

/// Configuration file problem (missing reference, bad schema, unreadable path).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gfvc
