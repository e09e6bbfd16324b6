#pragma once

#include <stdexcept>
#include <string>

namespace bioecon {

// Base class for all simulator failures so callers can map them to exit codes.
class SimError : public std::runtime_error {
public:
    explicit SimError(const std::string& msg) : std::runtime_error(msg) {}
};

// A state or parameter set violated a type invariant (non-finite, negative, ...).
class InvalidStateError : public SimError {
public:
    explicit InvalidStateError(const std::string& msg) : SimError(msg) {}
};

// The integrator produced a non-finite value; names the field and step.
class IntegrationDivergedError : public SimError {
public:
    IntegrationDivergedError(const std::string& field, long step, const std::string& context = "")
        : SimError("integration diverged: field '" + field + "' became non-finite at step " +
                   std::to_string(step) + (context.empty() ? "" : " (" + context + ")")),
          field_name(field), step_index(step) {}

    std::string field_name;
    long step_index;
};

// The household optimizer failed to converge after the retry ladder.
// Carries the best incumbent utility and its KKT residual for diagnosis.
class SolverFailedError : public SimError {
public:
    SolverFailedError(const std::string& msg, double incumbent_utility, double kkt_residual)
        : SimError(msg), incumbent_utility(incumbent_utility), kkt_residual(kkt_residual) {}

    double incumbent_utility;
    double kkt_residual;
};

// A decision handed to kkt_residuals violates its binding constraints.
class InfeasibleDecisionError : public SimError {
public:
    explicit InfeasibleDecisionError(const std::string& msg) : SimError(msg) {}
};

// Config file problem; carries the 1-based line number when known.
class ConfigError : public SimError {
public:
    ConfigError(const std::string& msg, long line = 0)
        : SimError(line > 0 ? "config line " + std::to_string(line) + ": " + msg : msg),
          line_number(line) {}

    long line_number;
};

// I/O failure (missing input file, unwritable sink, malformed CSV, ...).
class IoError : public SimError {
public:
    explicit IoError(const std::string& msg) : SimError(msg) {}
};

} // namespace bioecon
