#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <random>
#include <utility>
#include <vector>

namespace prefopt {

using Point = Eigen::VectorXd;
using Rng = std::mt19937_64;

namespace tol {
inline constexpr double kConstruction = 1e-12;
inline constexpr double kOrthogonality = 1e-8;
inline constexpr double kProperty = 1e-10;
}  // namespace tol

/**
 * @brief A vector of Euclidean norm one.
 *
 * Construction re-normalizes its argument and rejects vectors whose norm is
 * below tol::kConstruction.
 */
class UnitVec {
 public:
  explicit UnitVec(Eigen::VectorXd v);

  static UnitVec basis(std::size_t dim, std::size_t index);

  const Eigen::VectorXd& vec() const { return v_; }
  std::size_t dim() const { return static_cast<std::size_t>(v_.size()); }
  double operator[](std::size_t i) const { return v_[static_cast<Eigen::Index>(i)]; }
  double dot(const UnitVec& other) const { return v_.dot(other.v_); }
  double dot(const Eigen::VectorXd& other) const { return v_.dot(other); }

  UnitVec operator-() const;

 private:
  struct Trusted {};
  UnitVec(Eigen::VectorXd v, Trusted) : v_(std::move(v)) {}
  Eigen::VectorXd v_;
};

/// Angle in [0, pi] between two unit vectors, accurate near 0 and pi.
double angle_between(const UnitVec& u, const UnitVec& v);

/// Orthonormal basis q_1..q_d stored as the columns of a matrix.
class Frame {
 public:
  explicit Frame(Eigen::MatrixXd columns);

  std::size_t size() const { return static_cast<std::size_t>(q_.cols()); }
  std::size_t dim() const { return static_cast<std::size_t>(q_.rows()); }
  UnitVec operator[](std::size_t i) const;
  const Eigen::MatrixXd& matrix() const { return q_; }

 private:
  Eigen::MatrixXd q_;
};

/// Haar-distributed orthonormal frame of R^d (QR of a Gaussian matrix with sign fix).
Frame sample_haar_frame(std::size_t d, Rng& rng);

/// Uniform point on the unit sphere of R^d.
UnitVec sample_unit_vector(std::size_t d, Rng& rng);

/// Rotates the orthonormal pair (a, b) by theta inside span{a, b}.
std::pair<UnitVec, UnitVec> planar_rotate(const UnitVec& a, const UnitVec& b, double theta);

/// Normalized sum of two unit vectors; throws DegenerateBracket when they are antipodal.
UnitVec geodesic_midpoint(const UnitVec& u_plus, const UnitVec& u_minus);

/**
 * Completes y to an orthonormal pair inside span{v, q}: returns
 * -<y,q> v + <y,v> q, which is orthogonal to y within that plane.
 */
UnitVec givens_update(const UnitVec& v, const UnitVec& q, const UnitVec& y);

}  // namespace prefopt
