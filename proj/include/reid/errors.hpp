#pragma once

#include <stdexcept>
#include <string>

namespace reid {

// Operand shapes do not fit the operation (non-square, mismatched sizes).
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of the operation.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A documented precondition does not hold for the given input.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// User-supplied data contradicts a structural relation (group relation,
// commutator structure constant, relation lattice).
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace reid
