#pragma once

#include <stdexcept>
#include <string>

namespace muntz {

/// Thrown when an operation's input violates its documented precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A sup-norm certificate could not reach the requested tolerance within budget.
class CertificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The Bernstein estimator could not produce a bounded estimate.
class EstimationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
    if (!condition) throw PreconditionError(message);
}

} // namespace detail
} // namespace muntz
