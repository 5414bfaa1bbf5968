#include "symsector/lagrangian.hpp"

#include <cmath>

#include "symsector/rng.hpp"

namespace symsector {

namespace {

constexpr double kMembershipTol = 1e-9;

bool order_at_most(Order o) {
  return o == Order::Less || o == Order::LessOrEqual || o == Order::Equal;
}

void require_in_lag_c(const LagrangianSubspace& e) {
  if (!e.strictly_inside_c())
    fail(ErrorCode::NotInLagC,
         "subspace is not strictly inside the standard sector");
}

/// 1/2 max |ln lambda| over the pencil (ub, ua) with ua positive definite.
double pencil_distance(const Matrix& ua, const Matrix& ub) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> es(ub, ua);
  double worst = 0.0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    double lam = es.eigenvalues()(i);
    if (lam <= 0.0)
      fail(ErrorCode::NotInLagC, "pencil produced a nonpositive eigenvalue");
    worst = std::max(worst, std::abs(std::log(lam)));
  }
  return 0.5 * worst;
}

}  // namespace

LagrangianSubspace LagrangianSubspace::from_graph(const Matrix& u) {
  if (u.rows() == 0 || u.rows() != u.cols())
    fail(ErrorCode::DimensionMismatch, "graph matrix must be square");
  if (!is_symmetric(u))
    fail(ErrorCode::NonSymmetricInput,
         "graph of a non-symmetric matrix is not Lagrangian");
  LagrangianSubspace e;
  e.d_ = u.rows();
  e.has_graph_ = true;
  e.u_ = symmetrized(u);
  return e;
}

LagrangianSubspace LagrangianSubspace::from_basis(const Matrix& basis) {
  if (basis.rows() == 0 || basis.rows() != 2 * basis.cols())
    fail(ErrorCode::DimensionMismatch, "basis must be 2d x d");
  Index d = basis.cols();

  Eigen::JacobiSVD<Matrix> svd(basis);
  double smax = svd.singularValues().maxCoeff();
  double smin = svd.singularValues().minCoeff();
  if (smin <= smax / Tol::kCondLimit)
    fail(ErrorCode::DegenerateBasis, "basis columns are rank deficient");

  double scale = max_abs(basis);
  Matrix gram = basis.transpose() * omega_matrix(d) * basis;
  if (max_abs(gram) > 1e-10 * (1.0 + scale * scale))
    fail(ErrorCode::DegenerateBasis, "omega does not vanish on the span");

  Matrix x = basis.topRows(d);
  if (d > 0 && condition_estimate(x) <= Tol::kCondLimit) {
    Matrix u = x.transpose().partialPivLu().solve(basis.bottomRows(d).transpose()).transpose();
    LagrangianSubspace e = from_graph(symmetrized(u));
    e.converted_ = true;
    return e;
  }
  LagrangianSubspace e;
  e.d_ = d;
  e.has_graph_ = false;
  e.basis_ = basis;
  return e;
}

LagrangianSubspace LagrangianSubspace::v1(Index d) {
  return from_graph(Matrix::Zero(d, d));
}

LagrangianSubspace LagrangianSubspace::v2(Index d) {
  LagrangianSubspace e;
  e.d_ = d;
  e.has_graph_ = false;
  e.basis_ = Matrix::Zero(2 * d, d);
  e.basis_.bottomRows(d) = Matrix::Identity(d, d);
  return e;
}

const Matrix& LagrangianSubspace::graph() const {
  if (!has_graph_)
    fail(ErrorCode::ImageNotGraph, "subspace is not transversal to V2");
  return u_;
}

Matrix LagrangianSubspace::basis() const {
  if (!has_graph_) return basis_;
  Matrix b(2 * d_, d_);
  b.topRows(d_) = Matrix::Identity(d_, d_);
  b.bottomRows(d_) = u_;
  return b;
}

bool LagrangianSubspace::strictly_inside_c(double tol) const {
  if (!has_graph_) return false;
  return classify_definiteness(u_, tol).cls == Definiteness::PositiveDefinite;
}

LagrangianSubspace subspace_from_graph(const Matrix& u) {
  return LagrangianSubspace::from_graph(u);
}

LagrangianSubspace apply(const BlockMap& map, const LagrangianSubspace& e) {
  if (map.dim() != e.dim())
    fail(ErrorCode::DimensionMismatch, "map and subspace dimensions differ");
  return LagrangianSubspace::from_basis(map.full() * e.basis());
}

LagrangianSubspace z_subspace(double u, Index d) {
  return LagrangianSubspace::from_graph(std::exp(u) *
                                        Matrix::Identity(d, d));
}

GeneralSector::GeneralSector(LagrangianSubspace e1, LagrangianSubspace e2)
    : e1_(std::move(e1)), e2_(std::move(e2)) {
  if (e1_.dim() != e2_.dim())
    fail(ErrorCode::DimensionMismatch, "sector sides of different dimension");
  Index d = e1_.dim();
  basis1_ = e1_.basis();
  basis2_ = e2_.basis();
  Matrix stacked(2 * d, 2 * d);
  stacked << basis1_, basis2_;
  condition_ = condition_estimate(stacked);
  if (!std::isfinite(condition_) || condition_ > Tol::kCondLimit)
    fail(ErrorCode::NotTransversal, "sector sides are not transversal");
  solver_ = stacked.partialPivLu();
}

double GeneralSector::q(const PhaseVector& w) const {
  Index d = e1_.dim();
  if (w.dim() != d)
    fail(ErrorCode::DimensionMismatch, "vector does not match sector");
  Vector coeff = solver_.solve(w.stacked());
  PhaseVector v1 = PhaseVector::from_stacked(basis1_ * coeff.head(d));
  PhaseVector v2 = PhaseVector::from_stacked(basis2_ * coeff.tail(d));
  return omega(v1, v2);
}

double general_sector_q(const GeneralSector& s, const PhaseVector& w) {
  return s.q(w);
}

const char* to_string(Order o) {
  switch (o) {
    case Order::Less: return "Less";
    case Order::LessOrEqual: return "LessOrEqual";
    case Order::Equal: return "Equal";
    case Order::GreaterOrEqual: return "GreaterOrEqual";
    case Order::Greater: return "Greater";
    case Order::Incomparable: return "Incomparable";
  }
  return "Unknown";
}

Order order_compare(const LagrangianSubspace& ea, const LagrangianSubspace& eb,
                    double tol) {
  require_in_lag_c(ea);
  require_in_lag_c(eb);
  Matrix diff = symmetrized(eb.graph() - ea.graph());
  Vector ev = sym_eigenvalues(diff);
  double lo = ev.minCoeff();
  double hi = ev.maxCoeff();
  double tau = tol * (1.0 + std::max(std::abs(lo), std::abs(hi)));
  if (std::abs(lo) <= tau && std::abs(hi) <= tau) return Order::Equal;
  if (lo > tau) return Order::Less;
  if (lo >= -tau) return Order::LessOrEqual;
  if (hi < -tau) return Order::Greater;
  if (hi <= tau) return Order::GreaterOrEqual;
  return Order::Incomparable;
}

namespace {

bool lex_less(const Matrix& a, const Matrix& b) {
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) < b(i, j)) return true;
      if (a(i, j) > b(i, j)) return false;
    }
  return false;
}

}  // namespace

double distance(const LagrangianSubspace& ea, const LagrangianSubspace& eb) {
  require_in_lag_c(ea);
  require_in_lag_c(eb);
  const Matrix& ua = ea.graph();
  const Matrix& ub = eb.graph();
  // Canonical argument order makes the metric exactly symmetric in floating
  // point; the value itself does not depend on the order.
  if (lex_less(ub, ua)) return pencil_distance(ub, ua);
  return pencil_distance(ua, ub);
}

double complementary_distance(const LagrangianSubspace& ea,
                              const LagrangianSubspace& eb) {
  Matrix na = -ea.graph();
  Matrix nb = -eb.graph();
  if (classify_definiteness(na).cls != Definiteness::PositiveDefinite ||
      classify_definiteness(nb).cls != Definiteness::PositiveDefinite)
    fail(ErrorCode::NotInLagC,
         "subspace is not strictly inside the complementary sector");
  return pencil_distance(na, nb);
}

LagrangianSubspace mobius(const BlockMap& map, const LagrangianSubspace& e) {
  if (map.dim() != e.dim())
    fail(ErrorCode::DimensionMismatch, "map and subspace dimensions differ");
  Index d = map.dim();
  Matrix image = map.full() * e.basis();
  Matrix x = image.topRows(d);
  if (condition_estimate(x) > Tol::kCondLimit)
    fail(ErrorCode::ImageNotGraph, "image subspace not transversal to V2");
  Matrix u =
      x.transpose().partialPivLu().solve(image.bottomRows(d).transpose()).transpose();
  return LagrangianSubspace::from_graph(symmetrized(u));
}

namespace {

/// Deterministic vectors of the sector C(E1,E2): every +-basis ray of both
/// sides, random interior points, and rays aimed along the eigendirections
/// where the graph order E1 <= E2 fails (those carry the standard-sector
/// violations whenever the sector sticks out).
std::vector<PhaseVector> sample_sector_vectors(const GeneralSector& s,
                                               std::uint64_t seed,
                                               int n_samples) {
  Index d = s.e1().dim();
  Matrix b1 = s.e1().basis();
  Matrix b2 = s.e2().basis();
  std::vector<PhaseVector> out;
  out.reserve(n_samples + 4 * d + 8);

  for (Index i = 0; i < d; ++i) {
    out.push_back(PhaseVector::from_stacked(b1.col(i)));
    out.push_back(PhaseVector::from_stacked(-b1.col(i)));
    out.push_back(PhaseVector::from_stacked(b2.col(i)));
    out.push_back(PhaseVector::from_stacked(-b2.col(i)));
  }

  if (s.e1().has_graph() && s.e2().has_graph()) {
    Matrix u1 = s.e1().graph();
    Matrix u2 = s.e2().graph();
    Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(u2 - u1));
    for (Index i = 0; i < d; ++i) {
      if (es.eigenvalues()(i) >= 0.0) continue;
      Vector xi = es.eigenvectors().col(i);
      double p = xi.dot(u1 * xi);
      double q2 = xi.dot(u2 * xi);
      if (p <= 0.0 || q2 <= 0.0) continue;
      // w(c) = c*(xi, U2 xi) - (xi, U1 xi) stays in C(E1,E2) for c >= 0 and
      // leaves the standard sector for c strictly between 1 and p/q2.
      for (double f : {0.5, 0.25, 0.75}) {
        double c = 1.0 + f * (p / q2 - 1.0);
        PhaseVector w{(c - 1.0) * xi, c * (u2 * xi) - u1 * xi};
        out.push_back(std::move(w));
      }
    }
  }

  Rng rng(seed);
  while (static_cast<int>(out.size()) < n_samples) {
    Vector a = normal_vector(rng, d);
    Vector b = normal_vector(rng, d);
    PhaseVector v1 = PhaseVector::from_stacked(b1 * a);
    PhaseVector v2 = PhaseVector::from_stacked(b2 * b);
    if (omega(v1, v2) < 0.0) {
      v2.xi = -v2.xi;
      v2.eta = -v2.eta;
    }
    out.push_back(PhaseVector{v1.xi + v2.xi, v1.eta + v2.eta});
  }
  return out;
}

bool subspace_in_sector_sampled(const GeneralSector& s,
                                const LagrangianSubspace& e,
                                std::uint64_t seed, int n_samples) {
  Index d = e.dim();
  Matrix b = e.basis();

  // Gram matrix of the sector form restricted to the span of e; its most
  // negative eigendirection is the worst vector, so membership cannot be
  // missed by sampling.
  Matrix gram(d, d);
  std::vector<double> diag(d);
  for (Index i = 0; i < d; ++i) {
    diag[i] = s.q(PhaseVector::from_stacked(b.col(i)));
    gram(i, i) = diag[i];
  }
  for (Index i = 0; i < d; ++i)
    for (Index j = i + 1; j < d; ++j) {
      double qij =
          s.q(PhaseVector::from_stacked(b.col(i) + b.col(j)));
      gram(i, j) = gram(j, i) = 0.5 * (qij - diag[i] - diag[j]);
    }
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(gram));

  std::vector<Vector> coords;
  coords.reserve(n_samples + 3 * d);
  for (Index i = 0; i < d; ++i) {
    coords.push_back(Vector::Unit(d, i));
    coords.push_back(-Vector::Unit(d, i));
    coords.push_back(es.eigenvectors().col(i));
  }
  Rng rng(seed);
  while (static_cast<int>(coords.size()) < n_samples)
    coords.push_back(normal_vector(rng, d));

  double kappa = s.transversality_condition();
  for (const Vector& x : coords) {
    PhaseVector v = PhaseVector::from_stacked(b * x);
    double tol = kMembershipTol * (1.0 + v.stacked().squaredNorm()) *
                 (1.0 + 1e-3 * kappa);
    if (s.q(v) < -tol) return false;
  }
  return true;
}

}  // namespace

InclusionReport inclusion_predicates(const LagrangianSubspace& e1,
                                     const LagrangianSubspace& e2,
                                     const LagrangianSubspace& e,
                                     std::uint64_t seed, int n_samples) {
  require_in_lag_c(e1);
  require_in_lag_c(e2);
  require_in_lag_c(e);
  GeneralSector s(e1, e2);

  InclusionReport rep{};
  rep.order_less = (order_compare(e1, e2) == Order::Less);
  rep.e_between = order_at_most(order_compare(e1, e)) &&
                  order_at_most(order_compare(e, e2));

  rep.sector_in_c = true;
  for (const PhaseVector& w : sample_sector_vectors(s, seed, n_samples)) {
    double tol = kMembershipTol * (1.0 + w.stacked().squaredNorm());
    if (q_standard(w) < -tol) {
      rep.sector_in_c = false;
      break;
    }
  }

  rep.e_in_sector = subspace_in_sector_sampled(s, e, Rng::mix(seed, 1), n_samples);
  return rep;
}

BlockMap normalize_to_rho(const LagrangianSubspace& e1,
                          const LagrangianSubspace& e2, double rho) {
  if (!(rho > 0.0 && rho < 1.0))
    fail(ErrorCode::InvalidArgument, "rho must lie in (0,1)");
  require_in_lag_c(e1);
  require_in_lag_c(e2);
  if (order_compare(e1, e2) != Order::Less)
    fail(ErrorCode::NotOrdered, "normalization requires E1 < E2");

  double u = std::log((1.0 + rho * rho) / (1.0 - rho * rho));
  double dist = distance(e1, e2);
  if (dist > u * (1.0 + 1e-12) + 1e-12)
    fail(ErrorCode::DistanceTooLarge,
         "d(E1,E2) exceeds ln((1+rho^2)/(1-rho^2))");

  // Q-isometry sending E1 to Z_{-u}; the whole sector C(E1,E2) then lands
  // inside C(Z_{-u}, Z_u) because d(E1,E2) <= u.
  Matrix a_g = std::exp(0.5 * u) * psd_sqrt(e1.graph());
  BlockMap g = q_isometry(a_g);

  Index d = e1.dim();
  double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Matrix eye = Matrix::Identity(d, d);
  BlockMap l_rho = BlockMap::from_blocks(
      inv_sqrt2 * std::sqrt(rho) * eye, inv_sqrt2 * std::sqrt(rho) * eye,
      -inv_sqrt2 / std::sqrt(rho) * eye, inv_sqrt2 / std::sqrt(rho) * eye);

  return l_rho * g;
}

bool in_c_rho(const PhaseVector& w, double rho, double tol) {
  return w.eta.norm() <= rho * w.xi.norm() + tol;
}

}  // namespace symsector
