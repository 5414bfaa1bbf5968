#include "symsector/expansion.hpp"

#include <cmath>

#include "symsector/rng.hpp"

namespace symsector {

namespace {

double beta_unchecked(const PhaseVector& w, const BlockMap& map) {
  double q0 = q_standard(w);
  return std::sqrt(q_standard(map.apply(w)) / q0);
}

void require_monotone(const BlockMap& map) {
  if (monotonicity_class(map) == MonotoneClass::NotMonotone)
    fail(ErrorCode::NotMonotone, "map is not monotone");
}

}  // namespace

double beta(const PhaseVector& w, const BlockMap& map) {
  if (q_standard(w) <= 0.0)
    fail(ErrorCode::NotInterior, "w is not in the sector interior");
  require_monotone(map);
  return beta_unchecked(w, map);
}

ExpansionResult sigma(const BlockMap& map) {
  MonotoneClass cls = monotonicity_class(map);
  if (cls == MonotoneClass::NotMonotone)
    fail(ErrorCode::NotMonotone, "sigma is defined for monotone maps");

  QprFactorization f = factor_qpr(map);
  Matrix r_half = psd_sqrt(f.r);
  Matrix k = symmetrized(r_half * f.p * r_half);
  Vector ev = sym_eigenvalues(k);
  double t1 = ev(0);
  double tau =
      Tol::kDefiniteness * (1.0 + std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1))));
  // Negative noise in t1 must not reach sqrt; a non-strict map gets exactly 1.
  if (t1 <= tau) t1 = 0.0;

  ExpansionResult result;
  result.t1 = t1;
  result.sigma = std::sqrt(1.0 + t1) + std::sqrt(t1);

  if (cls == MonotoneClass::StrictlyMonotone && t1 > 0.0) {
    CanonicalForm cf = canonical_form(map);
    double tt = cf.t(0);
    if (tt > 0.0) {
      Index d = map.dim();
      Vector xi = Vector::Zero(d);
      Vector eta = Vector::Zero(d);
      xi(0) = std::pow((1.0 + tt) / tt, 0.25);
      eta(0) = std::pow(tt / (1.0 + tt), 0.25);
      // In canonical coordinates this vector attains the infimum; pulling it
      // back through the right conjugator preserves both Q values.
      result.witness = cf.right_iso.apply({xi, eta});
    }
  }
  return result;
}

double sigma_complementary(const BlockMap& map) {
  BlockMap rot = sector_rotation(map.dim());
  BlockMap l1 = rot.symplectic_inverse() * map.symplectic_inverse() * rot;
  return sigma(l1).sigma;
}

double image_distance(const BlockMap& map) {
  ExpansionResult er = sigma(map);
  if (er.t1 <= 0.0)
    fail(ErrorCode::NotStrictlyMonotone,
         "images touch the sector boundary; distance undefined");
  // ln((sigma^2+1)/(sigma^2-1)) with sigma^2 - 1 = 2(t1 + sqrt(t1(1+t1))).
  double s2m1 = 2.0 * (er.t1 + std::sqrt(er.t1 * (1.0 + er.t1)));
  return std::log1p(2.0 / s2m1);
}

double mc_inf_beta(const BlockMap& map, long samples, std::uint64_t seed) {
  if (samples < 1)
    fail(ErrorCode::InvalidArgument, "need at least one sample");
  require_monotone(map);

  const Index d = map.dim();
  constexpr long kChunk = 4096;

  double best = std::numeric_limits<double>::infinity();
  PhaseVector best_w{Vector::Zero(d), Vector::Zero(d)};

  long remaining = samples;
  for (std::uint64_t chunk = 0; remaining > 0; ++chunk) {
    Rng rng(Rng::mix(seed, chunk));
    long count = std::min(remaining, kChunk);
    remaining -= count;
    for (long i = 0; i < count; ++i) {
      Vector xi = normal_vector(rng, d);
      double norm = xi.norm();
      if (norm < 1e-300) {
        xi = Vector::Unit(d, 0);
        norm = 1.0;
      }
      xi /= norm;
      Matrix g = normal_matrix(rng, d, d);
      Matrix u = g.transpose() * g + kOracleEps * Matrix::Identity(d, d);
      PhaseVector w{xi, u * xi};
      double b = beta_unchecked(w, map);
      if (b < best) {
        best = b;
        best_w = w;
      }
    }
  }

  // Local refinement: multiplicative coordinate descent from the best draw.
  Vector s = best_w.stacked();
  double cur = best;
  for (int sweep = 0; sweep < kOracleRefineSweeps; ++sweep) {
    bool improved = false;
    for (Index j = 0; j < 2 * d; ++j) {
      for (double factor : {kOracleStep, 1.0 / kOracleStep}) {
        Vector trial = s;
        trial(j) *= factor;
        PhaseVector w = PhaseVector::from_stacked(trial);
        if (q_standard(w) <= 0.0) continue;
        double b = beta_unchecked(w, map);
        if (b < cur) {
          cur = b;
          s = trial;
          improved = true;
        }
      }
    }
    if (!improved) break;
  }
  return std::min(best, cur);
}

}  // namespace symsector
