#pragma once

#include <stdexcept>
#include <string>

namespace flqft {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// input outside the mathematical domain of the operation
struct DomainError : Error {
  using Error::Error;
};

// quadrature failed to reach the requested tolerance within its budget
struct ConvergenceError : Error {
  using Error::Error;
};

// evaluation point too close to a pole of the decomposition
struct SingularityError : Error {
  using Error::Error;
};

struct SizeMismatchError : Error {
  using Error::Error;
};

// enumeration size exceeds the brute-force budget
struct BudgetError : Error {
  using Error::Error;
};

// a derivative contraction channel was required but not supplied
struct MissingChannelError : Error {
  using Error::Error;
};

// determinant crossed zero along the square-root continuation path
struct BranchError : Error {
  BranchError(const std::string& msg, double s_cross) : Error(msg), s(s_cross) {}
  double s;  // path parameter of the crossing
};

struct IndexError : Error {
  using Error::Error;
};

struct MarginError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

struct RadiusError : Error {
  using Error::Error;
};

struct EmptyWindowError : Error {
  using Error::Error;
};

struct AlgebraError : Error {
  using Error::Error;
};

}  // namespace flqft
