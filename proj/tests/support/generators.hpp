#pragma once

// Random builders for exactly-symplectic test maps. Every draw composes a
// Q-isometry with unit shears, so symplecticity holds by construction and
// the monotonicity class is known from the chosen shear blocks. Definite
// blocks are drawn with a spectral margin and semidefinite ones with exact
// zero eigenvalues, keeping the classes well separated numerically.

#include "symsector/factorization.hpp"
#include "symsector/lagrangian.hpp"
#include "symsector/rng.hpp"

namespace symsector::testing {

inline Matrix random_invertible(Rng& rng, Index d, double lo = 0.5,
                                double hi = 2.0) {
  Matrix u = random_orthogonal(rng, d);
  Matrix v = random_orthogonal(rng, d);
  Vector s(d);
  for (Index i = 0; i < d; ++i) s(i) = rng.uniform(lo, hi);
  return u * s.asDiagonal() * v.transpose();
}

inline Matrix random_pd(Rng& rng, Index d, double lo = 0.1, double hi = 3.0) {
  return random_spectrum(rng, d, lo, hi);
}

inline Matrix random_psd_singular(Rng& rng, Index d) {
  Matrix q = random_orthogonal(rng, d);
  Vector lam(d);
  lam(0) = 0.0;
  for (Index i = 1; i < d; ++i) lam(i) = rng.uniform(0.2, 2.0);
  return symmetrized(q * lam.asDiagonal() * q.transpose());
}

/// At least one eigenvalue <= -margin (indefinite for d >= 2, negative for
/// d = 1); never PSD.
inline Matrix random_non_psd(Rng& rng, Index d, double margin = 0.3) {
  Matrix q = random_orthogonal(rng, d);
  Vector lam(d);
  lam(0) = -rng.uniform(margin, 2.0);
  for (Index i = 1; i < d; ++i) lam(i) = rng.uniform(margin, 2.0);
  return symmetrized(q * lam.asDiagonal() * q.transpose());
}

inline BlockMap assemble(const Matrix& a, const Matrix& p, const Matrix& r) {
  return q_isometry(a) * shear_lower(p) * shear_upper(r);
}

inline BlockMap random_strictly_monotone(Rng& rng, Index d) {
  return assemble(random_invertible(rng, d), random_pd(rng, d),
                  random_pd(rng, d));
}

inline BlockMap random_monotone_nonstrict(Rng& rng, Index d) {
  Matrix a = random_invertible(rng, d);
  switch (rng.next_u64() % 4) {
    case 0:
      return assemble(a, random_psd_singular(rng, d), random_pd(rng, d));
    case 1:
      return assemble(a, random_pd(rng, d), random_psd_singular(rng, d));
    case 2:
      return q_isometry(a);  // P = R = 0
    default:
      return assemble(a, random_psd_singular(rng, d),
                      random_psd_singular(rng, d));
  }
}

inline BlockMap random_non_monotone(Rng& rng, Index d) {
  Matrix a = random_invertible(rng, d);
  switch (rng.next_u64() % 3) {
    case 0:
      return assemble(a, random_non_psd(rng, d), random_pd(rng, d));
    case 1:
      return assemble(a, random_pd(rng, d), random_non_psd(rng, d));
    default:
      // rotated cone: sends the sector onto its complement
      return sector_rotation(d) * random_strictly_monotone(rng, d);
  }
}

struct ClassifiedMap {
  BlockMap map;
  MonotoneClass expected;
};

inline ClassifiedMap random_mixed(Rng& rng, Index d) {
  switch (rng.next_u64() % 3) {
    case 0:
      return {random_strictly_monotone(rng, d),
              MonotoneClass::StrictlyMonotone};
    case 1:
      return {random_monotone_nonstrict(rng, d), MonotoneClass::Monotone};
    default:
      return {random_non_monotone(rng, d), MonotoneClass::NotMonotone};
  }
}

inline LagrangianSubspace random_lag_c(Rng& rng, Index d, double lo = 0.2,
                                       double hi = 3.0) {
  return LagrangianSubspace::from_graph(random_pd(rng, d, lo, hi));
}

inline PhaseVector random_interior(Rng& rng, Index d) {
  Vector xi = normal_vector(rng, d);
  if (xi.norm() < 1e-9) xi = Vector::Unit(d, 0);
  xi.normalize();
  Matrix u = random_pd(rng, d, 0.2, 2.0);
  return {xi, u * xi};
}

/// Any vector of the closed sector (eta sign flipped when needed).
inline PhaseVector random_in_cone(Rng& rng, Index d) {
  Vector xi = normal_vector(rng, d);
  Vector eta = normal_vector(rng, d);
  if (xi.dot(eta) < 0.0) eta = -eta;
  return {xi, eta};
}

inline PhaseVector random_phase(Rng& rng, Index d) {
  return {normal_vector(rng, d), normal_vector(rng, d)};
}

/// Matrix S with Q(w) = w^T S w; the form difference Q(Lw) - Q(w) is the
/// quadratic form of L^T S L - S, whose extreme eigendirections make
/// targeted samples for the monotonicity check.
inline Matrix q_form_matrix(Index d) {
  Matrix s = Matrix::Zero(2 * d, 2 * d);
  s.topRightCorner(d, d) = 0.5 * Matrix::Identity(d, d);
  s.bottomLeftCorner(d, d) = 0.5 * Matrix::Identity(d, d);
  return s;
}

struct SampledMonotonicity {
  bool monotone;
  bool strict;
};

/// Sampled test of Q(Lw) >= Q(w): random vectors plus the eigendirections
/// of the difference form. The checks themselves go through q_standard, not
/// through the eigen decomposition.
inline SampledMonotonicity sampled_monotonicity(const BlockMap& map, Rng& rng,
                                                int n_samples,
                                                double tol = 1e-9) {
  Index d = map.dim();
  Matrix s = q_form_matrix(d);
  Matrix delta =
      symmetrized(map.full().transpose() * s * map.full() - s);
  Eigen::SelfAdjointEigenSolver<Matrix> es(delta);

  std::vector<Vector> samples;
  samples.reserve(n_samples + 2 * d);
  for (Index i = 0; i < 2 * d; ++i) samples.push_back(es.eigenvectors().col(i));
  while (static_cast<int>(samples.size()) < n_samples) {
    Vector v = normal_vector(rng, 2 * d);
    double norm = v.norm();
    if (norm > 1e-9) samples.push_back(v / norm);
  }

  SampledMonotonicity out{true, true};
  for (const Vector& v : samples) {
    PhaseVector w = PhaseVector::from_stacked(v);
    double q0 = q_standard(w);
    double q1 = q_standard(map.apply(w));
    double slack = tol * (1.0 + std::abs(q0));
    if (q1 < q0 - slack) out.monotone = false;
    if (q1 <= q0 + slack) out.strict = false;
  }
  if (!out.monotone) out.strict = false;
  return out;
}

}  // namespace symsector::testing
