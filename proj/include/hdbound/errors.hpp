#pragma once

#include <stdexcept>
#include <string>

namespace hdbound {

// Error taxonomy mirrored by the CLI exit codes: parse -> 2, numeric -> 3,
// io -> 4.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Degenerate inputs, singular systems, violated hypotheses.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shape mismatches and empty inputs.
struct DimensionError : NumericError {
    using NumericError::NumericError;
};

} // namespace hdbound
