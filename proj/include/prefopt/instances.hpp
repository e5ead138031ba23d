#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "prefopt/geometry.hpp"
#include "prefopt/oracle.hpp"

namespace prefopt {

/// Growth constants (gamma1, gamma2): r_x >= min{gamma1 * delta_ls(x), gamma2}. gamma2 may be +inf.
struct GrowthParams {
  double gamma1;
  double gamma2;
};

/**
 * Ground truth attached to a test instance. Every member except growth is a
 * callable that is empty when the quantity is not available for the instance.
 */
struct InstanceTruth {
  /// Unit normal of the sublevel set at x; throws UndefinedNormal on the optimal set.
  std::function<UnitVec(const Point&)> normal_at;
  /// Level-set gap: distance from the optimal set to the indifference set of x.
  std::function<double(const Point&)> delta_ls;
  /// A certified lower bound on delta_ls when the exact value is unknown.
  std::function<double(const Point&)> delta_ls_lower;
  std::function<double(const Point&)> dist_opt;
  std::function<Point(const Point&)> nearest_optimum;
  /// Lower bound on the radius of an inscribed ball of the sublevel set tangent at x.
  std::function<double(const Point&)> regularity_lb;
  std::optional<GrowthParams> growth;
};

struct Instance {
  std::string id;
  std::size_t dim = 0;
  std::shared_ptr<FunctionOracle> oracle;
  InstanceTruth truth;
};

/// f(x) = <c, x> restricted to the ball B(0, radius).
Instance make_linear(const UnitVec& c, double radius = 1.0);

enum class SphereVariant { kNorm = 1, kLogNorm = 2, kPiecewise = 3 };

/// f1 = |x|, f2 = log(|x| + 1), f3 = f2 on the unit ball and f1 outside it.
Instance make_sphere(std::size_t dim, SphereVariant variant = SphereVariant::kNorm);

struct SphereTriple {
  std::array<std::shared_ptr<FunctionOracle>, 3> oracles;
  InstanceTruth truth;
};
SphereTriple make_sphere_triple(std::size_t dim = 2);

/// f(x) = 0.5 (x - xhat)^T Q (x - xhat) with Q symmetric positive semidefinite.
Instance make_quadratic(const Eigen::MatrixXd& q, const Point& xhat);

/// f(x) = dist(x, [lo, hi]).
Instance make_dist_to_box(const Point& lo, const Point& hi);

/// 360x^2 + y + y^2 for x <= 0 and 6x^2 + y + y^2 for x >= 0.
Instance make_mckinnon();

/// Level-set gap of the McKinnon function by polar search around its minimizer.
double mckinnon_delta_ls_polar(const Point& p);

/**
 * Smoothed max-of-coordinates function h(x) = max_i x_i, averaged over a fixed
 * sample z_1..z_m with 0 < z_d < ... < z_1 < chi, chi = D1 / (4 sqrt(d)).
 */
class HardInstanceModel {
 public:
  HardInstanceModel(std::size_t dim, double d1, std::size_t n_samples, std::uint64_t seed);

  double value(const Point& x) const;
  /// Frequencies with which each coordinate attains max_i (x_i + z_{j,i}); sums to one.
  Eigen::VectorXd argmax_frequencies(const Point& x) const;
  UnitVec normal(const Point& x) const;
  /// y = -(D1 / sqrt(d)) (1, ..., 1), which satisfies value(y) <= -3 D1 / (4 sqrt(d)).
  Point reference_point() const;
  /// value(x) - value(y); a lower bound on delta_ls because the function is 1-Lipschitz.
  double gap_lower_bound(const Point& x) const;

  std::size_t dim() const { return dim_; }
  double d1() const { return d1_; }
  double chi() const { return chi_; }
  const Eigen::MatrixXd& samples() const { return z_; }

 private:
  std::size_t dim_;
  double d1_;
  double chi_;
  Eigen::MatrixXd z_;  // one sample per row, columns sorted descending
};

struct HardInstance {
  Instance instance;
  std::shared_ptr<const HardInstanceModel> model;
};

HardInstance make_hard_instance(std::size_t dim, double d1, std::size_t n_samples,
                                std::uint64_t seed);

}  // namespace prefopt
