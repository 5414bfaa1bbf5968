#include "symsector/types.hpp"

namespace symsector {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::NonSymmetricInput: return "NonSymmetricInput";
    case ErrorCode::NotPsd: return "NotPSD";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NotSymplectic: return "NotSymplectic";
    case ErrorCode::BlockSingular: return "BlockSingular";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::NotStrictlyMonotone: return "NotStrictlyMonotone";
    case ErrorCode::NotTransversal: return "NotTransversal";
    case ErrorCode::NotInLagC: return "NotInLagC";
    case ErrorCode::ImageNotGraph: return "ImageNotGraph";
    case ErrorCode::DegenerateBasis: return "DegenerateBasis";
    case ErrorCode::NotOrdered: return "NotOrdered";
    case ErrorCode::DistanceTooLarge: return "DistanceTooLarge";
    case ErrorCode::NotInterior: return "NotInterior";
    case ErrorCode::ProbeOnBoundary: return "ProbeOnBoundary";
    case ErrorCode::NoContraction: return "NoContraction";
    case ErrorCode::NotMonotoneElement: return "NotMonotoneElement";
    case ErrorCode::SpecViolation: return "SpecViolation";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, std::string(to_string(code)) + ": " + message);
}

double max_abs(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

bool is_symmetric(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  double drift = max_abs(m - m.transpose());
  return drift <= tol * (1.0 + max_abs(m));
}

Matrix symmetrized(const Matrix& m) {
  return 0.5 * (m + m.transpose());
}

double condition_estimate(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0)
    fail(ErrorCode::DimensionMismatch, "condition of an empty matrix");
  Eigen::JacobiSVD<Matrix> svd(m);
  double smin = svd.singularValues().minCoeff();
  double smax = svd.singularValues().maxCoeff();
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return smax / smin;
}

}  // namespace symsector
