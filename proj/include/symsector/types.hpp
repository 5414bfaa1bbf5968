#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace symsector {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

enum class ErrorCode {
  DimensionMismatch,
  OddDimension,
  NonSymmetricInput,
  NotPsd,
  SingularMatrix,
  NotSymplectic,
  BlockSingular,
  NotMonotone,
  NotStrictlyMonotone,
  NotTransversal,
  NotInLagC,
  ImageNotGraph,
  DegenerateBasis,
  NotOrdered,
  DistanceTooLarge,
  NotInterior,
  ProbeOnBoundary,
  NoContraction,
  NotMonotoneElement,
  SpecViolation,
  InvalidArgument,
  IoError,
  ParseError,
};

const char* to_string(ErrorCode code);

/// Exception carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

/// Tolerance policy. Every predicate scales its threshold by
/// (1 + max-abs entry) of the matrix it inspects, so all comparisons are
/// relative at unit scale and absolute near zero.
struct Tol {
  static constexpr double kSym = 1e-10;          // symmetry drift
  static constexpr double kDefiniteness = 1e-9;  // eigenvalue sign decisions
  static constexpr double kSymplectic = 1e-9;    // form preservation
  static constexpr double kCondLimit = 1e12;     // singularity cutoff
};

double max_abs(const Matrix& m);
bool is_symmetric(const Matrix& m, double tol = Tol::kSym);
Matrix symmetrized(const Matrix& m);

/// 2-norm condition number estimate (SVD based; dense, desk scale).
double condition_estimate(const Matrix& m);

}  // namespace symsector
