#include "prefopt/geometry.hpp"

#include <cmath>
#include <string>

#include "prefopt/errors.hpp"

namespace prefopt {

UnitVec::UnitVec(Eigen::VectorXd v) {
  if (v.size() == 0) {
    throw InvalidDimension("unit vector must have positive dimension");
  }
  const double n = v.norm();
  if (!(n >= tol::kConstruction) || !std::isfinite(n)) {
    throw ContractViolation("cannot normalize vector of norm " + std::to_string(n));
  }
  v_ = v / n;
}

UnitVec UnitVec::basis(std::size_t dim, std::size_t index) {
  if (dim == 0 || index >= dim) {
    throw InvalidDimension("basis index out of range");
  }
  Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
  e[static_cast<Eigen::Index>(index)] = 1.0;
  return UnitVec(std::move(e), Trusted{});
}

UnitVec UnitVec::operator-() const { return UnitVec(-v_, Trusted{}); }

double angle_between(const UnitVec& u, const UnitVec& v) {
  if (u.dim() != v.dim()) throw InvalidDimension("angle_between: dimension mismatch");
  return 2.0 * std::atan2((u.vec() - v.vec()).norm(), (u.vec() + v.vec()).norm());
}

Frame::Frame(Eigen::MatrixXd columns) : q_(std::move(columns)) {
  if (q_.rows() == 0 || q_.cols() == 0) throw InvalidDimension("empty frame");
  const Eigen::MatrixXd gram = q_.transpose() * q_;
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(q_.cols(), q_.cols());
  if ((gram - eye).cwiseAbs().maxCoeff() > tol::kOrthogonality) {
    throw ContractViolation("frame columns are not orthonormal");
  }
}

UnitVec Frame::operator[](std::size_t i) const {
  if (i >= size()) throw InvalidDimension("frame index out of range");
  return UnitVec(q_.col(static_cast<Eigen::Index>(i)));
}

Frame sample_haar_frame(std::size_t d, Rng& rng) {
  if (d == 0) throw InvalidDimension("frame dimension must be positive");
  const auto n = static_cast<Eigen::Index>(d);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = gauss(rng);

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Multiplying column j by sign(R_jj) makes the distribution exactly Haar.
  for (Eigen::Index j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return Frame(std::move(q));
}

UnitVec sample_unit_vector(std::size_t d, Rng& rng) {
  if (d == 0) throw InvalidDimension("dimension must be positive");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd g(static_cast<Eigen::Index>(d));
  for (;;) {
    for (Eigen::Index i = 0; i < g.size(); ++i) g[i] = gauss(rng);
    if (g.norm() > 1e-6) return UnitVec(g);
  }
}

std::pair<UnitVec, UnitVec> planar_rotate(const UnitVec& a, const UnitVec& b, double theta) {
  if (a.dim() != b.dim()) throw InvalidDimension("planar_rotate: dimension mismatch");
  if (std::abs(a.dot(b)) > tol::kOrthogonality) {
    throw ContractViolation("planar_rotate: inputs are not orthogonal");
  }
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {UnitVec(c * a.vec() + s * b.vec()), UnitVec(-s * a.vec() + c * b.vec())};
}

UnitVec geodesic_midpoint(const UnitVec& u_plus, const UnitVec& u_minus) {
  if (u_plus.dim() != u_minus.dim()) throw InvalidDimension("geodesic_midpoint: dimension mismatch");
  const Eigen::VectorXd s = u_plus.vec() + u_minus.vec();
  if (s.norm() < tol::kConstruction) {
    throw DegenerateBracket("bracket endpoints are antipodal");
  }
  return UnitVec(s);
}

UnitVec givens_update(const UnitVec& v, const UnitVec& q, const UnitVec& y) {
  if (v.dim() != q.dim() || v.dim() != y.dim()) {
    throw InvalidDimension("givens_update: dimension mismatch");
  }
  if (std::abs(v.dot(q)) > tol::kOrthogonality) {
    throw ContractViolation("givens_update: v and q are not orthogonal");
  }
  const double yv = y.dot(v);
  const double yq = y.dot(q);
  const Eigen::VectorXd residual = y.vec() - yv * v.vec() - yq * q.vec();
  if (residual.norm() > tol::kOrthogonality) {
    throw ContractViolation("givens_update: y is not in span{v, q}");
  }
  return UnitVec(-yq * v.vec() + yv * q.vec());
}

}  // namespace prefopt
