#pragma once

#include <stdexcept>
#include <string>

namespace singlet {

// Shape of an operand does not fit the operation.
class DimensionError : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

// Argument outside the closed interval an operation is defined on.
class DomainError : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

class NotHermitianError : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

class NotPSDError : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

class ConvergenceError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

class ZeroDivisionError : public std::domain_error {
 public:
    using std::domain_error::domain_error;
};

// A 2x2 filter matrix that is singular (or not finite).
class InvalidFilterError : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

// Filtering succeeded with probability indistinguishable from zero.
class AnnihilatedStateError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

}  // namespace singlet
