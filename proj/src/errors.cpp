#include "monoscheme/errors.hpp"

namespace monoscheme {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidMesh: return "invalid-mesh";
        case ErrorKind::Index: return "index";
        case ErrorKind::Solver: return "solver";
        case ErrorKind::IterationFailure: return "iteration-failure";
        case ErrorKind::Configuration: return "configuration";
        case ErrorKind::EmptySet: return "empty-set";
        case ErrorKind::PremiseViolation: return "premise-violation";
        case ErrorKind::DegenerateInput: return "degenerate-input";
        case ErrorKind::UndefinedInterval: return "undefined-interval";
        case ErrorKind::SingularScheme: return "singular-scheme";
        case ErrorKind::Divergence: return "divergence";
        case ErrorKind::StepFailure: return "step-failure";
        case ErrorKind::Comparison: return "comparison";
        case ErrorKind::Parse: return "parse";
    }
    return "unknown";
}

}  // namespace monoscheme
