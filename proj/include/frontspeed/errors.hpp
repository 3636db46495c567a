#ifndef FRONTSPEED_ERRORS_HPP
#define FRONTSPEED_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace frontspeed {

// Bad user-supplied parameter (theta out of range, non-unit direction, ...).
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Tabulated data whose lattice does not match the declared shape.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Operation asked of a reaction it does not classify for.
struct ClassificationError : std::domain_error {
    using std::domain_error::domain_error;
};

// Time step too large for the scheme to keep the iterate positive / bounded.
struct StepSizeError : std::runtime_error {
    StepSizeError(const std::string& msg, double suggested_dt_)
        : std::runtime_error(msg), suggested_dt(suggested_dt_) {}
    double suggested_dt = 0;
};

// Power iteration failed to settle within max_iter periods.
struct NonConvergenceError : std::runtime_error {
    NonConvergenceError(const std::string& msg, double mu_prev_, double mu_last_)
        : std::runtime_error(msg), mu_prev(mu_prev_), mu_last(mu_last_) {}
    double mu_prev = 0;
    double mu_last = 0;
};

// Bracket expansion exhausted without certifying the descent/ascent pattern.
struct StructureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested speed incompatible with the computed minimal speed.
struct OrderingError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Initial data or front outside the usable part of the channel.
struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// No level-set crossing in the current state.
struct FrontAbsentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Too few samples for a requested fit.
struct InsufficientDataError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Config file could not be parsed or is missing required keys.
struct ConfigError : std::runtime_error {
    ConfigError(const std::string& msg, int line_ = 0)
        : std::runtime_error(msg), line(line_) {}
    int line = 0;
};

}  // namespace frontspeed

#endif
