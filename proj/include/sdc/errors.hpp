#ifndef SDC_ERRORS_HPP
#define SDC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sdc {

// Parsing / format problems (CLI exit code 2).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A stated precondition or structural invariant does not hold (CLI exit code 3).
struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotSelfDualError : InvariantError {
    using InvariantError::InvariantError;
};

struct WrongDimensionError : InvariantError {
    using InvariantError::InvariantError;
};

struct TypeIIInputError : InvariantError {
    using InvariantError::InvariantError;
};

struct HypothesisViolatedError : InvariantError {
    using InvariantError::InvariantError;
};

struct EvenWeightVectorError : InvariantError {
    using InvariantError::InvariantError;
};

struct ShapeMismatchError : InvariantError {
    using InvariantError::InvariantError;
};

struct NoSolutionError : InvariantError {
    using InvariantError::InvariantError;
};

struct IncompleteSeedsError : InvariantError {
    using InvariantError::InvariantError;
};

// Work refused or aborted because it exceeds the configured budget.
struct BudgetExceededError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sdc

#endif
