#pragma once

#include "symsector/linalg.hpp"
#include "symsector/symplectic.hpp"

namespace symsector {

enum class MonotoneClass { NotMonotone, Monotone, StrictlyMonotone };

const char* to_string(MonotoneClass c);

/// The unique factorization of a symplectic map with invertible A, D blocks:
///
///   L = [[A,0],[0,A^-T]] * [[I,0],[P,I]] * [[I,R],[0,I]]
///
/// with P = A^T C and R = A^-1 B, both symmetric. L is monotone exactly when
/// P and R are positive semidefinite, strictly monotone when both are
/// positive definite.
struct QprFactorization {
  Matrix a;
  Matrix p;
  Matrix r;
  DefinitenessReport p_class;
  DefinitenessReport r_class;
  /// Condition estimate of the A block. P and R inherit its conditioning, so
  /// a large value warns that their entries (not the classification
  /// thresholds) may be inaccurate.
  double condition_a;

  Matrix reassembled() const;
};

/// Q-isometry [[A,0],[0,A^-T]]; preserves the standard sector's quadratic
/// form exactly.
BlockMap q_isometry(const Matrix& a);

/// [[I,0],[P,I]] for symmetric P.
BlockMap shear_lower(const Matrix& p);

/// [[I,R],[0,I]] for symmetric R.
BlockMap shear_upper(const Matrix& r);

QprFactorization factor_qpr(const BlockMap& map,
                            double tol = Tol::kDefiniteness);

MonotoneClass monotonicity_class(const BlockMap& map,
                                 double tol = Tol::kDefiniteness);

/// Conjugation of a strictly monotone map to [[I,I],[T,I+T]] with T diagonal
/// carrying the (ascending) spectrum of C^T B:
///
///   left_iso * L * right_iso = core.
///
/// The conjugators are Q-isometries, so the core has the same expansion
/// behaviour as L. T's entries are obtained as the eigenvalues of the
/// symmetric K = R^{1/2} P R^{1/2}, never through a nonsymmetric eigensolver.
struct CanonicalForm {
  Vector t;
  BlockMap left_iso;
  BlockMap right_iso;
  BlockMap core;
};

CanonicalForm canonical_form(const BlockMap& map);

}  // namespace symsector
