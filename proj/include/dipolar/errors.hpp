#pragma once

#include <stdexcept>
#include <string>

namespace dipolar {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The requested tolerance cannot be certified within the configured
/// truncation caps.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A lattice sum whose weights do not satisfy the growth contract.
class DivergenceError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class RootNotFound : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class QuadratureFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Straight-line configuration whose cut sets cannot close on the torus.
class ParityViolation : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Minimum of a windowed search sits on the window boundary.
class WindowExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Certificates overlap where a strict comparison was requested.
class Inconclusive : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dipolar
