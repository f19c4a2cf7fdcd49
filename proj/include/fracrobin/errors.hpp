#pragma once

#include <stdexcept>
#include <string>

namespace fracrobin {

// Precondition violations use std::invalid_argument directly. The classes
// below carry extra diagnostics that callers (mostly the CLI) report.

/// Raised when an evaluation cannot certify the requested accuracy.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double achieved)
        : std::runtime_error(what + " (achieved relative accuracy ~" + std::to_string(achieved) + ")"),
          achieved_(achieved) {}

    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

/// Initial/boundary data that violate the Robin compatibility condition.
class CompatibilityError : public std::invalid_argument {
public:
    CompatibilityError(const std::string& what, double violation)
        : std::invalid_argument(what), violation_(violation) {}

    double violation() const noexcept { return violation_; }

private:
    double violation_;
};

/// A construction invariant broke (asymmetric matrix, singular 2x2 system, ...).
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace fracrobin
