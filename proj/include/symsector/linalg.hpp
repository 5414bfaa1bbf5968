#pragma once

#include "symsector/types.hpp"

namespace symsector {

enum class Definiteness {
  PositiveDefinite,
  PositiveSemidefinite,
  Indefinite,
  NegativeSemidefinite,
  NegativeDefinite,
};

const char* to_string(Definiteness d);

struct DefinitenessReport {
  Definiteness cls;
  double min_eig;
  double max_eig;
};

/// Classifies a symmetric matrix by its spectrum. The decision threshold is
/// tau = tol * (1 + max |eigenvalue|). Positive classes win ties, so the zero
/// matrix reports PositiveSemidefinite.
DefinitenessReport classify_definiteness(const Matrix& m,
                                         double tol = Tol::kDefiniteness);

bool is_psd(const DefinitenessReport& r);

/// Eigenvalues of a symmetric matrix, ascending.
Vector sym_eigenvalues(const Matrix& m);

/// Symmetric PSD square root. Eigenvalues below the classification threshold
/// are clamped to zero; inputs indefinite beyond tolerance are rejected.
Matrix psd_sqrt(const Matrix& m);

/// Inverse through an LU solve; rejects inputs with condition estimate above
/// Tol::kCondLimit.
Matrix checked_inverse(const Matrix& m,
                       ErrorCode code = ErrorCode::SingularMatrix);

}  // namespace symsector
