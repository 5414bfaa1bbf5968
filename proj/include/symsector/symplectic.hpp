#pragma once

#include "symsector/types.hpp"

namespace symsector {

/// Point of the phase space R^d x R^d, split into its two components.
struct PhaseVector {
  Vector xi;
  Vector eta;

  Index dim() const;
  Vector stacked() const;
  double norm() const;
  static PhaseVector from_stacked(const Vector& w);
};

/// omega((xi1,eta1),(xi2,eta2)) = <xi1,eta2> - <xi2,eta1>.
double omega(const PhaseVector& w1, const PhaseVector& w2);

/// Quadratic form of the standard sector: Q((xi,eta)) = <xi,eta>.
/// Membership in the sector is q >= 0; the interior is q > 0.
double q_standard(const PhaseVector& w);

/// Matrix J of the symplectic form: omega(w1,w2) = w1^T J w2.
Matrix omega_matrix(Index d);

/// A 2d x 2d map together with its d x d blocks A,B,C,D relative to the
/// standard Lagrangian splitting V1 = R^d x {0}, V2 = {0} x R^d.
class BlockMap {
 public:
  explicit BlockMap(Matrix full);

  static BlockMap identity(Index d);
  static BlockMap from_blocks(const Matrix& a, const Matrix& b,
                              const Matrix& c, const Matrix& d);

  Index dim() const { return d_; }
  const Matrix& full() const { return full_; }

  Matrix a() const { return full_.topLeftCorner(d_, d_); }
  Matrix b() const { return full_.topRightCorner(d_, d_); }
  Matrix c() const { return full_.bottomLeftCorner(d_, d_); }
  Matrix d() const { return full_.bottomRightCorner(d_, d_); }

  BlockMap operator*(const BlockMap& rhs) const;
  PhaseVector apply(const PhaseVector& w) const;

  /// Inverse through the closed form -J L^T J valid for symplectic maps;
  /// exact block shuffle, no solver noise.
  BlockMap symplectic_inverse() const;

 private:
  Matrix full_;
  Index d_;
};

/// Splits an even-dimensional square matrix into a BlockMap.
BlockMap blocks(const Matrix& m);

/// True iff L^T J L = J within tol * (1 + max|L|^2).
bool is_symplectic(const BlockMap& map, double tol = Tol::kSymplectic);

/// Rotation [[0,I],[-I,0]] taking the standard sector onto its complement.
BlockMap sector_rotation(Index d);

}  // namespace symsector
