#include "symsector/factorization.hpp"

namespace symsector {

const char* to_string(MonotoneClass c) {
  switch (c) {
    case MonotoneClass::NotMonotone: return "NotMonotone";
    case MonotoneClass::Monotone: return "Monotone";
    case MonotoneClass::StrictlyMonotone: return "StrictlyMonotone";
  }
  return "Unknown";
}

Matrix QprFactorization::reassembled() const {
  Index d = a.rows();
  Matrix iso(2 * d, 2 * d);
  iso.setZero();
  iso.topLeftCorner(d, d) = a;
  iso.bottomRightCorner(d, d) = checked_inverse(a.transpose());
  return iso * shear_lower(p).full() * shear_upper(r).full();
}

BlockMap q_isometry(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0)
    fail(ErrorCode::DimensionMismatch, "Q-isometry block must be square");
  Matrix a_inv_t =
      checked_inverse(a, ErrorCode::SingularMatrix).transpose();
  Index d = a.rows();
  Matrix zero = Matrix::Zero(d, d);
  return BlockMap::from_blocks(a, zero, zero, a_inv_t);
}

BlockMap shear_lower(const Matrix& p) {
  if (!is_symmetric(p))
    fail(ErrorCode::NonSymmetricInput, "shear block must be symmetric");
  Index d = p.rows();
  return BlockMap::from_blocks(Matrix::Identity(d, d), Matrix::Zero(d, d), p,
                               Matrix::Identity(d, d));
}

BlockMap shear_upper(const Matrix& r) {
  if (!is_symmetric(r))
    fail(ErrorCode::NonSymmetricInput, "shear block must be symmetric");
  Index d = r.rows();
  return BlockMap::from_blocks(Matrix::Identity(d, d), r, Matrix::Zero(d, d),
                               Matrix::Identity(d, d));
}

QprFactorization factor_qpr(const BlockMap& map, double tol) {
  if (!is_symplectic(map))
    fail(ErrorCode::NotSymplectic, "input map does not preserve omega");

  Matrix a = map.a();
  double cond_a = condition_estimate(a);
  // A singular or D singular means LV1 (resp. LV2) fails to be transversal
  // to V2 (resp. V1): the map cannot be monotone.
  if (cond_a > Tol::kCondLimit)
    fail(ErrorCode::BlockSingular, "A block numerically singular");
  if (condition_estimate(map.d()) > Tol::kCondLimit)
    fail(ErrorCode::BlockSingular, "D block numerically singular");

  Matrix r_raw = a.partialPivLu().solve(map.b());
  Matrix p_raw = a.transpose() * map.c();

  // Symplecticity of the input forces both factors symmetric; drift beyond
  // tolerance means the input was not symplectic to working precision.
  if (!is_symmetric(r_raw) || !is_symmetric(p_raw))
    fail(ErrorCode::NotSymplectic, "extracted P or R drifts from symmetry");

  QprFactorization f;
  f.a = std::move(a);
  f.p = symmetrized(p_raw);
  f.r = symmetrized(r_raw);
  f.p_class = classify_definiteness(f.p, tol);
  f.r_class = classify_definiteness(f.r, tol);
  f.condition_a = cond_a;
  return f;
}

MonotoneClass monotonicity_class(const BlockMap& map, double tol) {
  QprFactorization f;
  try {
    f = factor_qpr(map, tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::BlockSingular) return MonotoneClass::NotMonotone;
    throw;
  }
  bool p_pd = f.p_class.cls == Definiteness::PositiveDefinite;
  bool r_pd = f.r_class.cls == Definiteness::PositiveDefinite;
  if (p_pd && r_pd) return MonotoneClass::StrictlyMonotone;
  if (is_psd(f.p_class) && is_psd(f.r_class)) return MonotoneClass::Monotone;
  return MonotoneClass::NotMonotone;
}

CanonicalForm canonical_form(const BlockMap& map) {
  if (monotonicity_class(map) != MonotoneClass::StrictlyMonotone)
    fail(ErrorCode::NotStrictlyMonotone,
         "canonical form requires a strictly monotone map");
  QprFactorization f = factor_qpr(map);

  Matrix r_half = psd_sqrt(f.r);
  Matrix r_half_inv = checked_inverse(r_half);
  Matrix k = symmetrized(r_half * f.p * r_half);

  Eigen::SelfAdjointEigenSolver<Matrix> es(k);
  Vector t = es.eigenvalues();  // ascending
  Matrix f_mat = es.eigenvectors();

  Matrix a_inv = checked_inverse(f.a, ErrorCode::BlockSingular);
  BlockMap left = q_isometry(f_mat.transpose() * r_half_inv * a_inv);
  BlockMap right = q_isometry(r_half * f_mat);

  Index d = map.dim();
  Matrix t_diag = t.asDiagonal();
  BlockMap core = BlockMap::from_blocks(Matrix::Identity(d, d),
                                        Matrix::Identity(d, d), t_diag,
                                        Matrix::Identity(d, d) + t_diag);
  return {std::move(t), std::move(left), std::move(right), std::move(core)};
}

}  // namespace symsector
