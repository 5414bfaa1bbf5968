#include "symsector/sequence.hpp"

#include <cmath>

#include "symsector/rng.hpp"

namespace symsector {

namespace {

double stable_diameter(double sigma_value, double t1) {
  if (t1 <= 0.0) return std::numeric_limits<double>::infinity();
  (void)sigma_value;
  double s2m1 = 2.0 * (t1 + std::sqrt(t1 * (1.0 + t1)));
  return std::log1p(2.0 / s2m1);
}

/// Standard strict prefix: the core map with unit diagonal, [[I,I],[I,2I]].
BlockMap standard_prefix(Index d) {
  Matrix eye = Matrix::Identity(d, d);
  return BlockMap::from_blocks(eye, eye, eye, 2.0 * eye);
}

}  // namespace

MapSequence MapSequence::constant(const BlockMap& map, int count) {
  if (count < 1) fail(ErrorCode::InvalidArgument, "count must be positive");
  MapSequence seq;
  seq.maps.assign(static_cast<std::size_t>(count), map);
  return seq;
}

const BlockMap& MapSequence::at_step(int n) const {
  if (maps.empty()) fail(ErrorCode::InvalidArgument, "empty sequence");
  if (n < 1) fail(ErrorCode::InvalidArgument, "steps are 1-based");
  return maps[static_cast<std::size_t>((n - 1) % maps.size())];
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::CertifiedGrowth: return "CertifiedGrowth";
    case Verdict::NoVerdict: return "NoVerdict";
  }
  return "Unknown";
}

SequenceReport analyze_sequence(const MapSequence& seq, int n_max,
                                const std::vector<PhaseVector>& probes,
                                double growth_threshold) {
  if (n_max < 1) fail(ErrorCode::InvalidArgument, "n_max must be positive");
  if (seq.maps.empty()) fail(ErrorCode::InvalidArgument, "empty sequence");
  Index d = seq.maps.front().dim();

  for (std::size_t i = 0; i < seq.maps.size(); ++i) {
    if (seq.maps[i].dim() != d)
      fail(ErrorCode::DimensionMismatch, "sequence maps of mixed dimension");
    if (monotonicity_class(seq.maps[i]) == MonotoneClass::NotMonotone)
      fail(ErrorCode::NotMonotoneElement,
           "sequence element " + std::to_string(i + 1) + " is not monotone");
  }
  for (const PhaseVector& p : probes) {
    if (p.dim() != d)
      fail(ErrorCode::DimensionMismatch, "probe dimension mismatch");
    if (p.norm() == 0.0 || q_standard(p) < 0.0)
      fail(ErrorCode::InvalidArgument, "probes must be nonzero sector vectors");
  }

  SequenceReport report;
  report.growth_threshold = growth_threshold;

  Matrix product = Matrix::Identity(2 * d, 2 * d);
  std::vector<PhaseVector> w = probes;
  LagrangianSubspace v1 = LagrangianSubspace::v1(d);
  LagrangianSubspace v2 = LagrangianSubspace::v2(d);

  int last_recorded = 0;
  for (int n = 1; n <= n_max; ++n) {
    product = seq.at_step(n).full() * product;
    BlockMap ln(product);

    StepRecord rec;
    rec.n = n;
    try {
      ExpansionResult er = sigma(ln);
      rec.sigma_n = er.sigma;
      rec.t1_n = er.t1;
      rec.diameter_n = stable_diameter(er.sigma, er.t1);
      rec.image_v1 = apply(ln, v1);
      rec.image_v2 = apply(ln, v2);
    } catch (const Error&) {
      // Conditioning ran out before the horizon; stop with what we have.
      report.flags.conditioning_stop_at = n;
      break;
    }
    for (std::size_t k = 0; k < w.size(); ++k) {
      w[k] = seq.at_step(n).apply(w[k]);
      rec.probe_q.push_back(q_standard(w[k]));
    }

    if (!report.flags.strict_at_step && rec.sigma_n > 1.0)
      report.flags.strict_at_step = n;

    report.per_step.push_back(std::move(rec));
    last_recorded = n;

    if (report.per_step.back().sigma_n > kConditioningStopSigma) {
      report.flags.conditioning_stop_at = n;
      break;
    }
  }

  if (last_recorded > 0) {
    const StepRecord& last = report.per_step.back();
    report.flags.sigma_final = last.sigma_n;
    report.flags.certified_growth = last.sigma_n >= growth_threshold;

    try {
      BlockMap prepended(product * standard_prefix(d).full());
      report.flags.sigma_prepended_final = sigma(prepended).sigma;
    } catch (const Error&) {
      report.flags.sigma_prepended_final = last.sigma_n;
    }
    report.flags.certified_growth_prepended =
        report.flags.sigma_prepended_final >= growth_threshold;

    if (last.t1_n > 0.0) {
      try {
        LimitResult lim = limit_subspace(seq, last_recorded);
        report.flags.limit_estimate = lim.estimate;
        report.flags.limit_diameter_bound = lim.bound;
      } catch (const Error&) {
        // Image graphs degenerated; the bound stays infinite.
      }
    }
  }
  return report;
}

LimitResult limit_subspace(const MapSequence& seq, int n_max) {
  if (n_max < 1) fail(ErrorCode::InvalidArgument, "n_max must be positive");
  if (seq.maps.empty()) fail(ErrorCode::InvalidArgument, "empty sequence");
  Index d = seq.maps.front().dim();
  for (std::size_t i = 0; i < seq.maps.size(); ++i)
    if (monotonicity_class(seq.maps[i]) == MonotoneClass::NotMonotone)
      fail(ErrorCode::NotMonotoneElement,
           "sequence element " + std::to_string(i + 1) + " is not monotone");

  Matrix product = Matrix::Identity(2 * d, 2 * d);
  for (int n = 1; n <= n_max; ++n) product = seq.at_step(n).full() * product;
  BlockMap ln(product);

  ExpansionResult er = sigma(ln);
  if (er.t1 <= 0.0)
    fail(ErrorCode::NoContraction,
         "sigma(L^n) = 1; nested sectors do not contract");

  // Sides of the pulled-back complementary sector (L^n)^-1 C(V2,V1); both
  // are graphs of negative definite matrices strictly inside C'.
  BlockMap inv = ln.symplectic_inverse();
  LagrangianSubspace f1 = apply(inv, LagrangianSubspace::v2(d));
  LagrangianSubspace f2 = apply(inv, LagrangianSubspace::v1(d));

  LimitResult out{
      LagrangianSubspace::from_graph(0.5 * (f1.graph() + f2.graph())),
      stable_diameter(er.sigma, er.t1)};
  return out;
}

void Example69Spec::derive_r(std::uint64_t seed) {
  r_list.clear();
  r_list.reserve(tau_list.size());
  for (std::size_t n = 0; n < tau_list.size(); ++n) {
    Index d = a_list.empty() ? 1 : a_list[n % a_list.size()].rows();
    auto [lo, hi] = tau_list[n];
    if (hi <= lo) {
      r_list.push_back(lo * Matrix::Identity(d, d));
      continue;
    }
    Rng rng(Rng::mix(seed, n));
    r_list.push_back(random_spectrum(rng, d, lo, hi));
  }
}

void Example69Spec::validate() const {
  std::size_t n = a_list.size();
  if (n == 0) fail(ErrorCode::SpecViolation, "empty family");
  if (p_list.size() != n || tau_list.size() != n || r_list.size() != n)
    fail(ErrorCode::SpecViolation, "family lists have mismatched lengths");
  if (!(c_bound > 0.0))
    fail(ErrorCode::SpecViolation, "c_bound must be positive");

  Index d = a_list.front().rows();
  for (std::size_t i = 0; i < n; ++i) {
    const Matrix& a = a_list[i];
    if (a.rows() != d || a.cols() != d)
      fail(ErrorCode::SpecViolation, "A blocks of mixed dimension");
    Eigen::JacobiSVD<Matrix> svd(a);
    if (svd.singularValues().maxCoeff() > 1.0 + 1e-10)
      fail(ErrorCode::SpecViolation,
           "A_" + std::to_string(i + 1) + " is expanding");

    if (!is_psd(classify_definiteness(p_list[i])))
      fail(ErrorCode::SpecViolation,
           "P_" + std::to_string(i + 1) + " is not positive semidefinite");

    auto [lo, hi] = tau_list[i];
    if (!(lo > 0.0) || hi < lo)
      fail(ErrorCode::SpecViolation, "tau band must satisfy 0 < tau <= tau'");
    if (hi / lo > c_bound * (1.0 + 1e-12))
      fail(ErrorCode::SpecViolation,
           "tau'_" + std::to_string(i + 1) + " / tau exceeds c_bound");

    Vector ev = sym_eigenvalues(r_list[i]);
    double band_tol = 1e-9 * (1.0 + hi);
    if (ev.minCoeff() < lo - band_tol || ev.maxCoeff() > hi + band_tol)
      fail(ErrorCode::SpecViolation,
           "R_" + std::to_string(i + 1) + " spectrum leaves [tau, tau']");
  }
}

MapSequence build_example69(const Example69Spec& spec) {
  spec.validate();
  MapSequence seq;
  seq.provenance = Provenance::Example69;
  seq.maps.reserve(spec.a_list.size());
  for (std::size_t i = 0; i < spec.a_list.size(); ++i)
    seq.maps.push_back(q_isometry(spec.a_list[i]) *
                       shear_lower(spec.p_list[i]) *
                       shear_upper(spec.r_list[i]));
  return seq;
}

Criterion69Result check_criterion69(const Example69Spec& spec, int horizon,
                                    const PhaseVector& probe,
                                    double growth_threshold) {
  spec.validate();
  if (horizon < 1 || horizon > spec.count())
    fail(ErrorCode::InvalidArgument,
         "horizon must lie within the family length");
  if (probe.norm() == 0.0 || q_standard(probe) <= 0.0)
    fail(ErrorCode::ProbeOnBoundary,
         "probe must lie in the sector interior");

  MapSequence seq = build_example69(spec);

  Criterion69Result res;
  res.series_partial = 0.0;
  res.q_nondecreasing = true;
  res.ratio_bounds_hold = true;

  PhaseVector w = probe;
  double q = q_standard(w);
  res.q_trajectory.push_back(q);
  double denom = probe.xi.norm();  // ||xi_1|| + sum_{i<n} tau'_i ||eta_i||

  for (int n = 1; n <= horizon; ++n) {
    auto [tau, tau_hi] = spec.tau_list[static_cast<std::size_t>(n - 1)];
    res.series_partial += tau;

    double eta_norm = w.eta.norm();
    double required = 1.0 + tau * eta_norm / denom;

    w = seq.maps[static_cast<std::size_t>(n - 1)].apply(w);
    double q_next = q_standard(w);
    res.q_trajectory.push_back(q_next);

    bool ok = true;
    if (q_next < q - 1e-9 * (1.0 + std::abs(q))) {
      res.q_nondecreasing = false;
      ok = false;
    }
    if (q_next / q < required - 1e-8) {
      res.ratio_bounds_hold = false;
      ok = false;
    }
    if (!ok && !res.first_violation) res.first_violation = n;

    denom += tau_hi * eta_norm;
    q = q_next;
  }

  res.q_growth = res.q_trajectory.back() / res.q_trajectory.front();
  res.verdict = (res.q_nondecreasing && res.ratio_bounds_hold &&
                 res.q_growth >= growth_threshold)
                    ? Verdict::CertifiedGrowth
                    : Verdict::NoVerdict;
  return res;
}

double ratio_series_partial_sum(const std::vector<double>& a) {
  if (a.size() < 2)
    fail(ErrorCode::InvalidArgument, "need at least a_0 and a_1");
  double prefix = 0.0;
  double sum = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    if (!(a[n] > 0.0))
      fail(ErrorCode::InvalidArgument, "terms must be positive");
    if (n >= 1) sum += a[n] / prefix;
    prefix += a[n];
  }
  return sum;
}

}  // namespace symsector
