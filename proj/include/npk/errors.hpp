#pragma once

#include <stdexcept>
#include <string>

namespace npk {

struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Raised when a certified computation cannot resolve a sign/comparison even
// at max_bits working precision.
struct EscalationExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IndeterminateComparison : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace npk
