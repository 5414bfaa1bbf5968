#pragma once

#include <cstdint>
#include <optional>

#include "symsector/factorization.hpp"
#include "symsector/symplectic.hpp"

namespace symsector {

/// A Lagrangian subspace of R^d x R^d. Stored as the graph {(xi, U xi)} of a
/// symmetric matrix whenever the subspace is transversal to V2, otherwise as
/// an explicit 2d x d basis (V2 itself being the prime example).
class LagrangianSubspace {
 public:
  LagrangianSubspace() = default;  // empty placeholder; fill via a factory

  static LagrangianSubspace from_graph(const Matrix& u);
  /// Accepts any full-rank isotropic 2d x d basis; converts to graph form
  /// when the top block is invertible.
  static LagrangianSubspace from_basis(const Matrix& basis);

  static LagrangianSubspace v1(Index d);  // graph of 0
  static LagrangianSubspace v2(Index d);  // basis [0; I]

  Index dim() const { return d_; }
  bool has_graph() const { return has_graph_; }
  bool converted_from_basis() const { return converted_; }

  /// Graph matrix U; throws ImageNotGraph when only a basis is stored.
  const Matrix& graph() const;

  /// A spanning 2d x d basis ([I; U] in graph form).
  Matrix basis() const;

  /// True iff the subspace lies strictly inside the standard sector
  /// (graph matrix positive definite).
  bool strictly_inside_c(double tol = Tol::kDefiniteness) const;

 private:
  Index d_ = 0;
  bool has_graph_ = false;
  bool converted_ = false;
  Matrix u_;      // valid when has_graph_
  Matrix basis_;  // valid when !has_graph_
};

LagrangianSubspace subspace_from_graph(const Matrix& u);

/// Image L(E) computed on a basis, regraphed when possible.
LagrangianSubspace apply(const BlockMap& map, const LagrangianSubspace& e);

/// Z_u: the graph of e^u * I.
LagrangianSubspace z_subspace(double u, Index d);

/// Sector C(E1,E2) between transversal Lagrangian subspaces, with the solver
/// for the unique decomposition w = e1 + e2 cached.
class GeneralSector {
 public:
  GeneralSector(LagrangianSubspace e1, LagrangianSubspace e2);

  const LagrangianSubspace& e1() const { return e1_; }
  const LagrangianSubspace& e2() const { return e2_; }
  double transversality_condition() const { return condition_; }

  /// Q(w) = omega(v1, v2) for the unique split w = v1 + v2, v_i in E_i.
  /// Membership in the sector is q >= 0.
  double q(const PhaseVector& w) const;

 private:
  LagrangianSubspace e1_, e2_;
  Matrix basis1_, basis2_;
  Eigen::PartialPivLU<Matrix> solver_;
  double condition_;
};

double general_sector_q(const GeneralSector& s, const PhaseVector& w);

enum class Order { Less, LessOrEqual, Equal, GreaterOrEqual, Greater, Incomparable };

const char* to_string(Order o);

/// Order of subspaces strictly inside the standard sector = order of their
/// graph matrices.
Order order_compare(const LagrangianSubspace& ea, const LagrangianSubspace& eb,
                    double tol = Tol::kDefiniteness);

/// d(E_a, E_b) = 1/2 max_i |ln lambda_i| over the spectrum of the pencil
/// (U_b, U_a); equals the sup over directions of the log-ratio of the two
/// graph quadratic forms.
double distance(const LagrangianSubspace& ea, const LagrangianSubspace& eb);

/// Distance transported to the complementary sector: both arguments are
/// graphs of negative definite matrices and the metric is evaluated on their
/// negations.
double complementary_distance(const LagrangianSubspace& ea,
                              const LagrangianSubspace& eb);

/// Moebius action U -> (C + D U)(A + B U)^-1 of a block map on graphs.
LagrangianSubspace mobius(const BlockMap& map, const LagrangianSubspace& e);

struct InclusionReport {
  bool order_less;    // E1 < E2
  bool sector_in_c;   // sampled: C(E1,E2) inside the standard sector
  bool e_between;     // E1 <= E <= E2
  bool e_in_sector;   // sampled: E inside C(E1,E2)
};

inline constexpr std::uint64_t kInclusionSamplerSeed = 0x5ec70f5eedULL;

/// Sampled sector-inclusion predicates for subspaces strictly inside the
/// standard sector. The sampler is deterministic: all +-basis rays of both
/// sides, random boundary/interior vectors, plus targeted rays built from
/// the extreme eigendirections so that order violations are always hit.
InclusionReport inclusion_predicates(
    const LagrangianSubspace& e1, const LagrangianSubspace& e2,
    const LagrangianSubspace& e,
    std::uint64_t seed = kInclusionSamplerSeed, int n_samples = 10000);

/// Symplectic map sending the standard sector onto C_{1/rho} and C(E1,E2)
/// into C_rho = {||eta|| <= rho ||xi||}, for 0 < rho < 1. Requires E1 < E2
/// and d(E1,E2) <= ln((1+rho^2)/(1-rho^2)).
BlockMap normalize_to_rho(const LagrangianSubspace& e1,
                          const LagrangianSubspace& e2, double rho);

/// ||eta|| <= rho ||xi|| + tol.
bool in_c_rho(const PhaseVector& w, double rho, double tol = 0.0);

}  // namespace symsector
