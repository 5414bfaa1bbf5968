#include <doctest.h>

#include "../support/generators.hpp"
#include "symsector/sequence.hpp"

using namespace symsector;
using namespace symsector::testing;

namespace {
BlockMap ref_map() {
  Matrix m(2, 2);
  m << 1, 1, 1, 2;
  return BlockMap(m);
}

PhaseVector pv1(double xi, double eta) {
  Vector x(1), e(1);
  x << xi;
  e << eta;
  return {x, e};
}

std::vector<PhaseVector> one_probe(Index d) {
  return {PhaseVector{Vector::Ones(d), Vector::Ones(d)}};
}
}  // namespace

TEST_CASE("constant sequence of the reference map, five steps") {
  MapSequence seq = MapSequence::constant(ref_map(), 5);
  SequenceReport rep = analyze_sequence(seq, 5, {pv1(1, 1)});
  REQUIRE(rep.per_step.size() == 5);

  double base = std::sqrt(2.0) + 1.0;
  double factor = base;
  double prev_diam = std::numeric_limits<double>::infinity();
  double prev_q = 1.0;
  // Fibonacci gives the exact t1 of the n-th power: t1(L^n) = F(2n)^2
  double fib[] = {1, 3, 8, 21, 55};
  for (int n = 1; n <= 5; ++n) {
    const StepRecord& s = rep.per_step[static_cast<std::size_t>(n - 1)];
    CHECK(s.sigma_n >= factor * (1.0 - 1e-12));
    double f = fib[n - 1];
    CHECK(s.t1_n == doctest::Approx(f * f).epsilon(1e-10));
    CHECK(s.diameter_n <= prev_diam);
    double s2 = s.sigma_n * s.sigma_n;
    CHECK(s.diameter_n ==
          doctest::Approx(std::log((s2 + 1.0) / (s2 - 1.0))).epsilon(1e-8));
    CHECK(s.probe_q[0] >= prev_q - 1e-12);
    prev_q = s.probe_q[0];
    prev_diam = s.diameter_n;
    factor *= base;
  }
  CHECK(rep.flags.strict_at_step.has_value());
  CHECK(*rep.flags.strict_at_step == 1);
  CHECK(rep.flags.limit_estimate.has_value());
}

TEST_CASE("identity sequence never certifies") {
  MapSequence seq = MapSequence::constant(BlockMap::identity(2), 4);
  SequenceReport rep = analyze_sequence(seq, 4, one_probe(2));
  for (const StepRecord& s : rep.per_step) {
    CHECK(s.sigma_n == 1.0);
    CHECK(std::isinf(s.diameter_n));
  }
  CHECK_FALSE(rep.flags.certified_growth);
  CHECK_FALSE(rep.flags.strict_at_step.has_value());
  CHECK_FALSE(rep.flags.limit_estimate.has_value());
  CHECK_THROWS_AS(limit_subspace(seq, 4), Error);
}

TEST_CASE("isometry sequences keep probe values constant") {
  Rng rng(61);
  Index d = 2;
  MapSequence seq;
  for (int i = 0; i < 4; ++i)
    seq.maps.push_back(q_isometry(random_invertible(rng, d)));
  PhaseVector probe = random_interior(rng, d);
  SequenceReport rep = analyze_sequence(seq, 4, {probe});
  double q0 = q_standard(probe);
  for (const StepRecord& s : rep.per_step)
    CHECK(s.probe_q[0] == doctest::Approx(q0).epsilon(1e-10));
}

TEST_CASE("probe trajectories never decrease for monotone sequences") {
  Rng rng(62);
  for (int rep_i = 0; rep_i < 10; ++rep_i) {
    Index d = 1 + rep_i % 3;
    MapSequence seq;
    for (int i = 0; i < 6; ++i)
      seq.maps.push_back(i % 2 == 0 ? random_strictly_monotone(rng, d)
                                    : random_monotone_nonstrict(rng, d));
    std::vector<PhaseVector> probes = {random_interior(rng, d),
                                       random_in_cone(rng, d)};
    SequenceReport rep = analyze_sequence(seq, 6, probes);
    std::vector<double> prev(probes.size());
    for (std::size_t k = 0; k < probes.size(); ++k)
      prev[k] = q_standard(probes[k]);
    for (const StepRecord& s : rep.per_step)
      for (std::size_t k = 0; k < probes.size(); ++k) {
        CHECK(s.probe_q[k] >= prev[k] - 1e-9 * (1.0 + std::abs(prev[k])));
        prev[k] = s.probe_q[k];
      }
  }
}

TEST_CASE("sigma along products dominates the per-factor product") {
  Rng rng(63);
  for (int rep_i = 0; rep_i < 8; ++rep_i) {
    Index d = 1 + rep_i % 3;
    MapSequence seq;
    double floor = 1.0;
    for (int i = 0; i < 5; ++i) {
      seq.maps.push_back(random_strictly_monotone(rng, d));
      floor *= sigma(seq.maps.back()).sigma;
    }
    SequenceReport rep = analyze_sequence(seq, 5, one_probe(d));
    CHECK(rep.per_step.back().sigma_n >= floor * (1.0 - 1e-9));
  }
}

TEST_CASE("diameters match the t1 form and shrink") {
  MapSequence seq = MapSequence::constant(ref_map(), 8);
  SequenceReport rep = analyze_sequence(seq, 8, {pv1(1, 1)});
  double prev = std::numeric_limits<double>::infinity();
  for (const StepRecord& s : rep.per_step) {
    CHECK(s.diameter_n <= prev);
    CHECK(std::abs(s.diameter_n - 0.5 * std::log1p(1.0 / s.t1_n)) < 1e-8);
    prev = s.diameter_n;
  }
}

TEST_CASE("dropping the head of a certified constant sequence still certifies") {
  MapSequence seq = MapSequence::constant(ref_map(), 21);
  SequenceReport full = analyze_sequence(seq, 8, {pv1(1, 1)});
  REQUIRE(full.flags.certified_growth);

  MapSequence tail;
  tail.maps.assign(seq.maps.begin() + 1, seq.maps.end());
  SequenceReport rep = analyze_sequence(tail, 9, {pv1(1, 1)});
  CHECK(rep.flags.certified_growth);
}

TEST_CASE("strict growth implies sampled expansion of the cone") {
  // if sigma(L^n) >= threshold then min over unit cone samples of
  // sqrt(Q(L^n w)) >= threshold * min sqrt(Q(w)), both over the same set
  Index d = 2;
  // the d = 1 reference map scaled to d = 2 by direct sum with itself
  MapSequence seq2;
  Matrix big = Matrix::Zero(4, 4);
  Matrix m = ref_map().full();
  big(0, 0) = m(0, 0); big(0, 2) = m(0, 1); big(2, 0) = m(1, 0); big(2, 2) = m(1, 1);
  big(1, 1) = m(0, 0); big(1, 3) = m(0, 1); big(3, 1) = m(1, 0); big(3, 3) = m(1, 1);
  seq2.maps.assign(6, BlockMap(big));
  SequenceReport rep = analyze_sequence(seq2, 6, one_probe(d));

  std::vector<PhaseVector> samples;
  Rng sampler(65);
  for (int k = 0; k < 1000; ++k) {
    PhaseVector w = random_interior(sampler, d);
    double norm = w.norm();
    samples.push_back({w.xi / norm, w.eta / norm});
  }
  double c = std::numeric_limits<double>::infinity();
  for (const PhaseVector& w : samples)
    c = std::min(c, std::sqrt(q_standard(w)));

  Matrix product = Matrix::Identity(4, 4);
  int n = 0;
  for (const StepRecord& s : rep.per_step) {
    product = seq2.maps[static_cast<std::size_t>(n++)].full() * product;
    if (s.sigma_n < 5.0) continue;
    double threshold = 5.0;
    double lo = std::numeric_limits<double>::infinity();
    BlockMap ln(product);
    for (const PhaseVector& w : samples)
      lo = std::min(lo, std::sqrt(q_standard(ln.apply(w))));
    CHECK(lo >= threshold * c * (1.0 - 1e-9));
  }
}

TEST_CASE("conditioning stop fires when sigma overflows the diameters") {
  MapSequence seq = MapSequence::constant(ref_map(), 25);
  SequenceReport rep = analyze_sequence(seq, 25, {pv1(1, 1)});
  REQUIRE(rep.flags.conditioning_stop_at.has_value());
  CHECK(*rep.flags.conditioning_stop_at == 20);
  CHECK(rep.per_step.size() == 20);
  CHECK(rep.per_step.back().sigma_n > 1e8);
}

TEST_CASE("limit subspace contracts at the expected rate") {
  MapSequence seq = MapSequence::constant(ref_map(), 14);
  LimitResult coarse = limit_subspace(seq, 12);
  LimitResult fine = limit_subspace(seq, 13);
  CHECK(fine.bound < coarse.bound);
  CHECK(complementary_distance(coarse.estimate, fine.estimate) <=
        coarse.bound);
  // the estimate is a negative definite graph strictly inside C'
  CHECK(classify_definiteness(coarse.estimate.graph()).cls ==
        Definiteness::NegativeDefinite);
}

TEST_CASE("sequences reject non-monotone elements") {
  MapSequence seq;
  seq.maps.push_back(ref_map());
  seq.maps.push_back(sector_rotation(1));
  try {
    analyze_sequence(seq, 2, {pv1(1, 1)});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotMonotoneElement);
  }
}

TEST_CASE("non-strict but unbounded families certify through the prefix") {
  // pure upper shears: sigma(L^n) = 1 forever, yet composing with the
  // standard strict prefix reveals the growth
  Index d = 1;
  MapSequence seq;
  for (int i = 0; i < 60; ++i)
    seq.maps.push_back(shear_upper(Matrix::Identity(1, 1)));
  SequenceReport rep = analyze_sequence(seq, 60, {pv1(1, 1)});
  CHECK_FALSE(rep.flags.certified_growth);
  CHECK_FALSE(rep.flags.strict_at_step.has_value());
  CHECK(rep.flags.sigma_prepended_final > 10.0);
  CHECK(rep.flags.certified_growth_prepended);
}

TEST_CASE("example family construction") {
  Index d = 2;
  Example69Spec spec;
  spec.a_list.assign(3, Matrix::Identity(d, d));
  spec.p_list.assign(3, Matrix::Zero(d, d));
  spec.tau_list.assign(3, {1.0, 1.0});
  spec.c_bound = 1.0;
  spec.derive_r(0);
  MapSequence seq = build_example69(spec);
  REQUIRE(seq.maps.size() == 3);
  Matrix expect(4, 4);
  expect << 1, 0, 1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1;
  CHECK(max_abs(seq.maps[0].full() - expect) < 1e-14);
  CHECK(monotonicity_class(seq.maps[0]) == MonotoneClass::Monotone);

  spec.p_list.assign(3, Matrix::Identity(d, d));
  seq = build_example69(spec);
  CHECK(monotonicity_class(seq.maps[0]) == MonotoneClass::StrictlyMonotone);
  CHECK(sigma(seq.maps[0]).t1 == doctest::Approx(1.0).epsilon(1e-12));

  // nonexpanding A with mixed scales is fine
  Matrix a = Matrix::Zero(d, d);
  a(0, 0) = 1.0;
  a(1, 1) = 0.5;
  spec.a_list.assign(3, a);
  CHECK_NOTHROW(build_example69(spec));

  // expanding A violates the family hypotheses
  a(0, 0) = 1.2;
  spec.a_list.assign(3, a);
  CHECK_THROWS_AS(build_example69(spec), Error);
  spec.a_list.assign(3, Matrix::Identity(d, d));

  // R outside the band
  spec.r_list.assign(3, 3.0 * Matrix::Identity(d, d));
  CHECK_THROWS_AS(build_example69(spec), Error);
  spec.derive_r(0);

  // tau ratio above the bound
  spec.tau_list.assign(3, {0.5, 1.0});
  spec.derive_r(0);
  CHECK_THROWS_AS(build_example69(spec), Error);
}

TEST_CASE("growth criterion on the harmonic family") {
  int horizon = 10000;
  Example69Spec spec;
  spec.a_list.assign(horizon, Matrix::Identity(1, 1));
  spec.p_list.assign(horizon, Matrix::Zero(1, 1));
  for (int n = 1; n <= horizon; ++n)
    spec.tau_list.push_back({1.0 / n, 1.0 / n});
  spec.c_bound = 1.0;
  spec.derive_r(0);

  Criterion69Result res = check_criterion69(spec, horizon, pv1(1, 1));
  CHECK(res.q_nondecreasing);
  CHECK(res.ratio_bounds_hold);
  CHECK_FALSE(res.first_violation.has_value());
  CHECK(res.verdict == Verdict::CertifiedGrowth);
  // q after the horizon is 1 + H_{10^4}
  double harmonic = 0.0;
  for (int n = 1; n <= horizon; ++n) harmonic += 1.0 / n;
  CHECK(res.q_trajectory.back() ==
        doctest::Approx(1.0 + harmonic).epsilon(1e-12));
  // strictly increasing here
  for (std::size_t i = 1; i < res.q_trajectory.size(); ++i)
    CHECK(res.q_trajectory[i] > res.q_trajectory[i - 1]);
}

TEST_CASE("convergent tau series yields no verdict") {
  int horizon = 30;
  Example69Spec spec;
  spec.a_list.assign(horizon, Matrix::Identity(1, 1));
  spec.p_list.assign(horizon, Matrix::Zero(1, 1));
  double t = 0.5;
  for (int n = 0; n < horizon; ++n) {
    spec.tau_list.push_back({t, t});
    t *= 0.5;
  }
  spec.c_bound = 1.0;
  spec.derive_r(0);

  Criterion69Result res = check_criterion69(spec, horizon, pv1(1, 1));
  CHECK(res.series_partial < 1.0);
  CHECK(res.ratio_bounds_hold);
  CHECK(res.verdict == Verdict::NoVerdict);
}

TEST_CASE("criterion guards") {
  Example69Spec spec;
  spec.a_list.assign(3, Matrix::Identity(1, 1));
  spec.p_list.assign(3, Matrix::Zero(1, 1));
  spec.tau_list.assign(3, {1.0, 1.0});
  spec.c_bound = 1.0;
  spec.derive_r(0);

  try {
    check_criterion69(spec, 3, pv1(1, 0));  // Q = 0: boundary
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ProbeOnBoundary);
  }
  CHECK_THROWS_AS(check_criterion69(spec, 10, pv1(1, 1)), Error);
}

TEST_CASE("ratio series helper reproduces harmonic growth") {
  std::vector<double> ones(10001, 1.0);
  double partial = ratio_series_partial_sum(ones);
  double harmonic = 0.0;
  for (int n = 1; n <= 10000; ++n) harmonic += 1.0 / n;
  CHECK(partial == doctest::Approx(harmonic).epsilon(1e-12));
  CHECK(partial >= 9.0);
}
