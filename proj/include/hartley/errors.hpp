#pragma once

#include <stdexcept>
#include <string>

namespace hartley {

// Argument outside an operation's domain (negative Fresnel argument, |tau| > 200, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Adaptive quadrature ran out of budget. best_estimate holds the last total.
struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& what, double best, double err)
        : std::runtime_error(what), best_estimate(best), error_estimate(err) {}
    double best_estimate;
    double error_estimate;
};

// Inconsistent configuration, e.g. a PV window reaching the origin.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Unknown catalog / operator / equation name.
struct NotFoundError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Route not available for an operator.
struct CapabilityError : std::logic_error {
    using std::logic_error::logic_error;
};

// A series evaluator was asked for an argument beyond its validated range;
// callers switch to the fallback representation.
struct RangeNotice : std::range_error {
    using std::range_error::range_error;
};

}  // namespace hartley
