#include "symsector/symplectic.hpp"

namespace symsector {

Index PhaseVector::dim() const {
  if (xi.size() != eta.size())
    fail(ErrorCode::DimensionMismatch, "xi and eta differ in length");
  return xi.size();
}

Vector PhaseVector::stacked() const {
  Vector w(xi.size() + eta.size());
  w << xi, eta;
  return w;
}

double PhaseVector::norm() const { return stacked().norm(); }

PhaseVector PhaseVector::from_stacked(const Vector& w) {
  if (w.size() % 2 != 0)
    fail(ErrorCode::OddDimension, "stacked phase vector has odd length");
  Index d = w.size() / 2;
  return {w.head(d), w.tail(d)};
}

double omega(const PhaseVector& w1, const PhaseVector& w2) {
  if (w1.dim() != w2.dim())
    fail(ErrorCode::DimensionMismatch, "omega on mismatched dimensions");
  return w1.xi.dot(w2.eta) - w2.xi.dot(w1.eta);
}

double q_standard(const PhaseVector& w) {
  (void)w.dim();
  return w.xi.dot(w.eta);
}

Matrix omega_matrix(Index d) {
  Matrix j = Matrix::Zero(2 * d, 2 * d);
  j.topRightCorner(d, d) = Matrix::Identity(d, d);
  j.bottomLeftCorner(d, d) = -Matrix::Identity(d, d);
  return j;
}

BlockMap::BlockMap(Matrix full) : full_(std::move(full)) {
  if (full_.rows() != full_.cols())
    fail(ErrorCode::DimensionMismatch, "block map must be square");
  if (full_.rows() % 2 != 0)
    fail(ErrorCode::OddDimension, "block map must have even dimension");
  d_ = full_.rows() / 2;
  if (d_ == 0) fail(ErrorCode::DimensionMismatch, "empty block map");
}

BlockMap BlockMap::identity(Index d) {
  return BlockMap(Matrix::Identity(2 * d, 2 * d));
}

BlockMap BlockMap::from_blocks(const Matrix& a, const Matrix& b,
                               const Matrix& c, const Matrix& d) {
  Index n = a.rows();
  if (a.cols() != n || b.rows() != n || b.cols() != n || c.rows() != n ||
      c.cols() != n || d.rows() != n || d.cols() != n)
    fail(ErrorCode::DimensionMismatch, "blocks must be square and equal-sized");
  Matrix full(2 * n, 2 * n);
  full << a, b, c, d;
  return BlockMap(std::move(full));
}

BlockMap BlockMap::operator*(const BlockMap& rhs) const {
  if (d_ != rhs.d_)
    fail(ErrorCode::DimensionMismatch, "composing maps of different dimension");
  return BlockMap(full_ * rhs.full_);
}

PhaseVector BlockMap::apply(const PhaseVector& w) const {
  if (w.dim() != d_)
    fail(ErrorCode::DimensionMismatch, "vector dimension does not match map");
  return PhaseVector::from_stacked(full_ * w.stacked());
}

BlockMap BlockMap::symplectic_inverse() const {
  Matrix inv(2 * d_, 2 * d_);
  inv.topLeftCorner(d_, d_) = d().transpose();
  inv.topRightCorner(d_, d_) = -b().transpose();
  inv.bottomLeftCorner(d_, d_) = -c().transpose();
  inv.bottomRightCorner(d_, d_) = a().transpose();
  return BlockMap(std::move(inv));
}

BlockMap blocks(const Matrix& m) { return BlockMap(m); }

bool is_symplectic(const BlockMap& map, double tol) {
  const Matrix& l = map.full();
  Matrix j = omega_matrix(map.dim());
  double scale = max_abs(l);
  double drift = max_abs(l.transpose() * j * l - j);
  return drift <= tol * (1.0 + scale * scale);
}

BlockMap sector_rotation(Index d) {
  return BlockMap(omega_matrix(d));
}

}  // namespace symsector
