#include "symsector/linalg.hpp"

namespace symsector {

namespace {

void require_symmetric(const Matrix& m, ErrorCode code) {
  if (m.rows() == 0)
    fail(ErrorCode::DimensionMismatch, "empty matrix");
  if (m.rows() != m.cols())
    fail(ErrorCode::DimensionMismatch, "matrix is not square");
  if (!is_symmetric(m)) fail(code, "symmetry drift exceeds tolerance");
}

}  // namespace

const char* to_string(Definiteness d) {
  switch (d) {
    case Definiteness::PositiveDefinite: return "PositiveDefinite";
    case Definiteness::PositiveSemidefinite: return "PositiveSemidefinite";
    case Definiteness::Indefinite: return "Indefinite";
    case Definiteness::NegativeSemidefinite: return "NegativeSemidefinite";
    case Definiteness::NegativeDefinite: return "NegativeDefinite";
  }
  return "Unknown";
}

DefinitenessReport classify_definiteness(const Matrix& m, double tol) {
  require_symmetric(m, ErrorCode::NonSymmetricInput);
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(m),
                                           Eigen::EigenvaluesOnly);
  const Vector& ev = es.eigenvalues();
  double lo = ev.minCoeff();
  double hi = ev.maxCoeff();
  double tau = tol * (1.0 + std::max(std::abs(lo), std::abs(hi)));

  Definiteness cls;
  if (lo > tau) {
    cls = Definiteness::PositiveDefinite;
  } else if (lo >= -tau) {
    cls = Definiteness::PositiveSemidefinite;  // ties resolve to the PSD side
  } else if (hi < -tau) {
    cls = Definiteness::NegativeDefinite;
  } else if (hi <= tau) {
    cls = Definiteness::NegativeSemidefinite;
  } else {
    cls = Definiteness::Indefinite;
  }
  return {cls, lo, hi};
}

bool is_psd(const DefinitenessReport& r) {
  return r.cls == Definiteness::PositiveDefinite ||
         r.cls == Definiteness::PositiveSemidefinite;
}

Vector sym_eigenvalues(const Matrix& m) {
  require_symmetric(m, ErrorCode::NonSymmetricInput);
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(m),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Matrix psd_sqrt(const Matrix& m) {
  auto rep = classify_definiteness(m);
  if (!is_psd(rep))
    fail(ErrorCode::NotPsd, "matrix is indefinite beyond tolerance");
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(m));
  Vector lam = es.eigenvalues().cwiseMax(0.0);
  Matrix s = es.eigenvectors() * lam.cwiseSqrt().asDiagonal() *
             es.eigenvectors().transpose();
  return symmetrized(s);
}

Matrix checked_inverse(const Matrix& m, ErrorCode code) {
  if (m.rows() != m.cols())
    fail(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
  if (condition_estimate(m) > Tol::kCondLimit)
    fail(code, "condition estimate exceeds 1e12");
  return m.partialPivLu().solve(Matrix::Identity(m.rows(), m.cols()));
}

}  // namespace symsector
