#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace nosreg {

// Base for every error raised by the library. The CLI maps categories onto
// exit codes, so every concrete error names its category.
enum class ErrorCategory {
    Validation,  // bad input shapes, orders, poles, config
    Synthesis,   // singular systems, failed certificates
    Search,      // pole search exhausted its budget
    Simulation,  // non-finite states
};

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, std::string module, const std::string& what)
        : std::runtime_error(module + ": " + what), category_(category), module_(std::move(module)) {}

    ErrorCategory category() const noexcept { return category_; }
    const std::string& module() const noexcept { return module_; }

private:
    ErrorCategory category_;
    std::string module_;
};

class DimensionMismatch : public Error {
public:
    DimensionMismatch(std::string module, const std::string& what)
        : Error(ErrorCategory::Validation, std::move(module), "dimension mismatch: " + what) {}
};

class InvalidOrder : public Error {
public:
    explicit InvalidOrder(const std::string& what)
        : Error(ErrorCategory::Validation, "chainmodel", "invalid order: " + what) {}
};

class InvalidArgument : public Error {
public:
    InvalidArgument(std::string module, const std::string& what)
        : Error(ErrorCategory::Validation, std::move(module), what) {}
};

class InvalidPoles : public Error {
public:
    explicit InvalidPoles(const std::string& what)
        : Error(ErrorCategory::Validation, "modal", "invalid pole set: " + what) {}
};

class NonFiniteValue : public Error {
public:
    NonFiniteValue(std::string module, const std::string& what)
        : Error(ErrorCategory::Validation, std::move(module), "non-finite value: " + what) {}
};

class SingularMatrix : public Error {
public:
    SingularMatrix(std::size_t pivot_index, double pivot)
        : Error(ErrorCategory::Synthesis, "numerics",
                "singular matrix at pivot " + std::to_string(pivot_index) + " (|pivot| = " +
                    std::to_string(pivot) + ")"),
          pivot_index_(pivot_index) {}

    std::size_t pivot_index() const noexcept { return pivot_index_; }

private:
    std::size_t pivot_index_;
};

class NoRegulatorSolution : public Error {
public:
    explicit NoRegulatorSolution(const std::string& what)
        : Error(ErrorCategory::Synthesis, "regulation", "no regulator solution: " + what) {}
};

class CertificateFailed : public Error {
public:
    CertificateFailed(std::size_t subsystem, double p_value)
        : Error(ErrorCategory::Synthesis, "regulation",
                "nonovershoot certificate failed for subsystem " + std::to_string(subsystem) +
                    " (p = " + std::to_string(p_value) + ")"),
          subsystem_(subsystem), p_value_(p_value) {}

    std::size_t subsystem() const noexcept { return subsystem_; }
    double p_value() const noexcept { return p_value_; }

private:
    std::size_t subsystem_;
    double p_value_;
};

class SearchExhausted : public Error {
public:
    SearchExhausted(std::size_t max_trials, double best_p)
        : Error(ErrorCategory::Search, "polesearch",
                "no certified pole set within " + std::to_string(max_trials) +
                    " trials (best p = " + std::to_string(best_p) + ")"),
          max_trials_(max_trials), best_p_(best_p) {}

    std::size_t max_trials() const noexcept { return max_trials_; }
    // -inf when no candidate satisfied the ordering constraints.
    double best_p() const noexcept { return best_p_; }

private:
    std::size_t max_trials_;
    double best_p_;
};

class NonFiniteState : public Error {
public:
    explicit NonFiniteState(double t)
        : Error(ErrorCategory::Simulation, "sim", "state became non-finite at t = " + std::to_string(t)),
          t_(t) {}

    double time() const noexcept { return t_; }

private:
    double t_;
};

class ConfigError : public Error {
public:
    ConfigError(const std::string& field, const std::string& what)
        : Error(ErrorCategory::Validation, "config", field + ": " + what), field_(field) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace nosreg
