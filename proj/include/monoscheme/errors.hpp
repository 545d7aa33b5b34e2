#pragma once

#include <stdexcept>
#include <string>

namespace monoscheme {

enum class ErrorKind {
    InvalidMesh,
    Index,
    Solver,
    IterationFailure,
    Configuration,
    EmptySet,
    PremiseViolation,
    DegenerateInput,
    UndefinedInterval,
    SingularScheme,
    Divergence,
    StepFailure,
    Comparison,
    Parse,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base for every failure raised by the toolkit. The kind is stable and
/// machine-readable; the message is for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// An iterative method stopped before reaching its tolerance.
class IterationError : public Error {
public:
    IterationError(const std::string& what, double residual, int iterations)
        : Error(ErrorKind::IterationFailure, what), residual_(residual), iterations_(iterations) {}

    double residual() const noexcept { return residual_; }
    int iterations() const noexcept { return iterations_; }

private:
    double residual_;
    int iterations_;
};

/// A difference scheme produced a (numerically) singular matrix at step h.
class SingularSchemeError : public Error {
public:
    SingularSchemeError(const std::string& what, double h)
        : Error(ErrorKind::SingularScheme, what), h_(h) {}

    double h() const noexcept { return h_; }

private:
    double h_;
};

/// A time step whose implicit part could not be solved to tolerance.
class StepError : public Error {
public:
    StepError(const std::string& what, double residual)
        : Error(ErrorKind::StepFailure, what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

}  // namespace monoscheme
