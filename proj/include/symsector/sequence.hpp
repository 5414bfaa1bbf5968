#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "symsector/expansion.hpp"
#include "symsector/lagrangian.hpp"

namespace symsector {

enum class Provenance { Explicit, Example69 };

/// Ordered sequence {L_1, L_2, ...} of monotone symplectic maps. Products
/// are taken as L^n = L_n ... L_1. When an analysis horizon exceeds the
/// stored length the sequence repeats cyclically.
struct MapSequence {
  std::vector<BlockMap> maps;
  Provenance provenance = Provenance::Explicit;

  static MapSequence constant(const BlockMap& map, int count);
  const BlockMap& at_step(int n) const;  // 1-based
};

struct StepRecord {
  int n;
  double sigma_n;
  double t1_n;
  /// d(L^n V1, L^n V2); +inf while the product is not strictly monotone.
  double diameter_n;
  LagrangianSubspace image_v1;
  LagrangianSubspace image_v2;
  std::vector<double> probe_q;
};

struct SequenceFlags {
  /// First n with sigma(L^n) > 1, i.e. the first strictly monotone product.
  std::optional<int> strict_at_step;
  bool certified_growth = false;
  /// Growth of sigma(L^n * S) for the standard strict prefix S (core with
  /// t = 1). Certifies expansion for sequences whose own products never
  /// become strictly monotone.
  bool certified_growth_prepended = false;
  double sigma_final = 1.0;
  double sigma_prepended_final = 1.0;
  /// Set when the analysis stopped early because sigma exceeded
  /// kConditioningStopSigma and the nested diameters reached double
  /// precision noise.
  std::optional<int> conditioning_stop_at;
  std::optional<LagrangianSubspace> limit_estimate;
  double limit_diameter_bound = std::numeric_limits<double>::infinity();
};

struct SequenceReport {
  std::vector<StepRecord> per_step;
  SequenceFlags flags;
  double growth_threshold;
};

inline constexpr double kGrowthThreshold = 10.0;
inline constexpr double kConditioningStopSigma = 1e8;

/// Walks the products L^n up to n_max recording sigma, the nested-sector
/// diameter, both image subspaces and Q along each probe trajectory.
SequenceReport analyze_sequence(const MapSequence& seq, int n_max,
                                const std::vector<PhaseVector>& probes,
                                double growth_threshold = kGrowthThreshold);

struct LimitResult {
  /// Midpoint (in the graph order) of the two sides of the pulled-back
  /// complementary sector (L^n)^-1 C'; a negative definite graph.
  LagrangianSubspace estimate;
  /// Diameter of the Lagrangian closure of (L^n)^-1 C', namely
  /// ln((s^2+1)/(s^2-1)) with s = sigma(L^n).
  double bound;
};

/// Requires sigma(L^{n_max}) > 1; otherwise NoContraction.
LimitResult limit_subspace(const MapSequence& seq, int n_max);

/// Family L_n = [[A_n,0],[0,A_n^-T]] [[I,0],[P_n,I]] [[I,R_n],[0,I]] with
/// nonexpanding A_n, PSD P_n and tau_n I <= R_n <= tau'_n I,
/// tau'_n / tau_n <= c_bound.
struct Example69Spec {
  std::vector<Matrix> a_list;
  std::vector<Matrix> p_list;
  std::vector<std::pair<double, double>> tau_list;
  double c_bound = 0.0;
  std::vector<Matrix> r_list;

  int count() const { return static_cast<int>(a_list.size()); }

  /// Fills r_list deterministically from the tau bands: random orthogonal
  /// conjugation of a spectrum drawn uniformly in [tau_n, tau'_n].
  void derive_r(std::uint64_t seed);

  void validate() const;  // throws SpecViolation
};

MapSequence build_example69(const Example69Spec& spec);

enum class Verdict { CertifiedGrowth, NoVerdict };

const char* to_string(Verdict v);

struct Criterion69Result {
  double series_partial;      // sum of tau_n up to the horizon
  bool q_nondecreasing;
  bool ratio_bounds_hold;     // q_{n+1}/q_n >= 1 + tau_n ||eta_n|| / (||xi_1|| + sum tau'_i ||eta_i||)
  std::optional<int> first_violation;
  double q_growth;            // Q(w_{horizon+1}) / Q(w_1)
  std::vector<double> q_trajectory;
  Verdict verdict;
};

/// Finite-horizon check of the divergent-series growth criterion: iterates
/// w_{n+1} = L_n w_n and verifies the per-step lower bound on q_{n+1}/q_n.
/// Reports growth thresholds only; no infinite-limit claim is made.
Criterion69Result check_criterion69(const Example69Spec& spec, int horizon,
                                    const PhaseVector& probe,
                                    double growth_threshold = kGrowthThreshold);

/// Partial sum of a_n / (a_0 + ... + a_{n-1}) for positive a_n, n >= 1;
/// diverges whenever sum a_n does.
double ratio_series_partial_sum(const std::vector<double>& a);

}  // namespace symsector
