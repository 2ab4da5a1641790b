#pragma once

#include <stdexcept>
#include <string>

namespace pairnorm {

// Thrown when a matrix has a nonpositive dimension.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when operand shapes do not match the operation's contract.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a (A1, A2) pair fails validation (shape mismatch or linear
// dependence below the independence threshold).
struct InvalidPair : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a matrix expected to be unitary is not, within tolerance.
struct NotUnitary : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when an input sits on a degenerate stratum where the requested
// computation is ill-posed (identically singular pencil, vanishing pivot).
struct DegenerateInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when the witness search cannot complete a stage; the message names
// the stage and carries the diagnostic values.
struct SearchFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when the search is requested for a pair class that admits no
// witness (simultaneously diagonalizable pairs).
struct NotApplicable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown on malformed input files; message includes position info.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace pairnorm
