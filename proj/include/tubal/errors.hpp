#pragma once

#include <stdexcept>
#include <string>

namespace tubal {

// Shape disagreement between operands.
struct DimMismatch : std::invalid_argument {
  explicit DimMismatch(const std::string& what) : std::invalid_argument(what) {}
};

// Frequency-domain data that should be conjugate-symmetric is not.
struct SymmetryViolation : std::runtime_error {
  explicit SymmetryViolation(const std::string& what) : std::runtime_error(what) {}
};

// Requested truncation rank outside [1, min(n1,n2)].
struct BadRank : std::invalid_argument {
  explicit BadRank(const std::string& what) : std::invalid_argument(what) {}
};

// f-diagonal square root of a tensor with a negative frequency-domain diagonal.
struct NegativeDiagonal : std::runtime_error {
  explicit NegativeDiagonal(const std::string& what) : std::runtime_error(what) {}
};

// Undamped Gram matrix is numerically singular in some frequency slice.
struct SingularPreconditioner : std::runtime_error {
  explicit SingularPreconditioner(const std::string& what) : std::runtime_error(what) {}
};

// A dense factorization kernel failed to converge.
struct NumericalFailure : std::runtime_error {
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

// Invalid synthetic problem description.
struct BadSpec : std::invalid_argument {
  explicit BadSpec(const std::string& what) : std::invalid_argument(what) {}
};

// A ratio diagnostic was requested with a zero denominator.
struct ZeroError : std::runtime_error {
  explicit ZeroError(const std::string& what) : std::runtime_error(what) {}
};

// File I/O or format failure.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tubal
