#pragma once

#include <cstdint>
#include <optional>

#include "symsector/factorization.hpp"

namespace symsector {

/// Least expansion coefficient sigma(L) = inf over interior cone vectors of
/// beta(w, L), with the closed form sqrt(1+t1) + sqrt(t1) where t1 is the
/// smallest eigenvalue of C^T B. The witness attains the infimum and is only
/// present for strictly monotone maps (otherwise the infimum may be
/// unattained).
struct ExpansionResult {
  double sigma;
  double t1;
  std::optional<PhaseVector> witness;
};

/// beta(w, L) = sqrt(Q(Lw) / Q(w)); >= 1 for monotone L.
double beta(const PhaseVector& w, const BlockMap& map);

ExpansionResult sigma(const BlockMap& map);

/// sigma of L^-1 with respect to the complementary sector, evaluated by
/// rotating the complement onto the standard sector. Equals sigma(L).
double sigma_complementary(const BlockMap& map);

/// d(L V1, L V2) = ln((sigma^2+1)/(sigma^2-1)) for strictly monotone L;
/// equivalently (1/2) ln(1 + 1/t1).
double image_distance(const BlockMap& map);

/// Monte-Carlo infimum of beta over the sector interior: `samples` draws of
/// w = (xi, U xi) with xi uniform on the sphere and U a random Gram matrix
/// plus kOracleEps * I, followed by multiplicative coordinate descent from
/// the best sample. Deterministic given the seed; chunked sub-streams keep
/// the result independent of evaluation order.
double mc_inf_beta(const BlockMap& map, long samples, std::uint64_t seed);

inline constexpr double kOracleEps = 1e-3;
inline constexpr double kOracleStep = 1.05;
inline constexpr int kOracleRefineSweeps = 100;

}  // namespace symsector
