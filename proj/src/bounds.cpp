#include "prefopt/bounds.hpp"

#include <cmath>
#include <algorithm>
#include <numbers>
#include <string>

#include "prefopt/errors.hpp"

namespace prefopt::bounds {

namespace {

constexpr double kPi = std::numbers::pi;

double dm1(std::size_t d) {
  if (d < 1) throw InvalidDimension("dimension must be positive");
  return static_cast<double>(d - 1);
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw InvalidParameter(std::string(what) + " must be positive");
}

}  // namespace

double ceil_plus(double v) { return std::max(0.0, std::ceil(v)); }

double fixed_estimation_error(std::size_t d, double h, double r, int depth) {
  require_positive(r, "regularity radius");
  return 2.0 * std::sqrt(dm1(d)) * (h / r + kPi / std::ldexp(1.0, depth + 1));
}

std::uint64_t fixed_estimation_comparisons(std::size_t d, int depth) {
  return static_cast<std::uint64_t>(dm1(d)) * static_cast<std::uint64_t>(depth + 3) + 1;
}

std::uint64_t fixed_comparisons_for_accuracy(std::size_t d, double eps) {
  require_positive(eps, "accuracy");
  const double s = std::sqrt(dm1(d));
  if (d == 1) return 1;
  const auto per_plane = static_cast<std::uint64_t>(std::ceil(std::log2(51.0 * s / eps)));
  return static_cast<std::uint64_t>(d - 1) * per_plane + 1;
}

double adaptive_comparisons_whp(std::size_t d, double eps, double h0, double r, double delta) {
  require_positive(eps, "accuracy");
  require_positive(h0, "initial radius");
  require_positive(r, "regularity radius");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidParameter("delta must lie in (0, 1)");
  const double dd = static_cast<double>(d);
  const double planes = d >= 2 ? 2.0 * dm1(d) * std::ceil(std::log2(7.0 * std::sqrt(dm1(d)) / eps)) : 0.0;
  return planes + 2.0 * ceil_plus(std::log2(h0 * dd * dd * dd / (r * eps))) + 16.0 +
         4.0 * std::ceil(std::log2(1.0 / delta));
}

double estimation_lower_bound(std::size_t d, double eps) {
  require_positive(eps, "accuracy");
  return dm1(d) * std::log2(1.0 / (kPi * eps)) - 1.0;
}

std::uint64_t ndd_comparisons(std::size_t k_iters, std::size_t d, int depth) {
  return static_cast<std::uint64_t>(k_iters) *
         (static_cast<std::uint64_t>(dm1(d)) * static_cast<std::uint64_t>(depth + 3) + 2);
}

double ndd_exact_gap(double d1, std::size_t k_iters) {
  if (k_iters == 0) throw InvalidParameter("iteration count must be positive");
  return d1 / std::sqrt(static_cast<double>(k_iters));
}

double ndd_eps_comparisons(std::size_t d, double d1, double eps) {
  require_positive(eps, "accuracy");
  const double dd = static_cast<double>(d);
  const double ratio = 1.0 + d1 / eps;
  return 7.0 * dd * (1.0 + d1 * d1 / (eps * eps)) * std::log2(224.0 * kPi * dd * ratio * ratio);
}

double adandd_gap(double d1, std::size_t k_iters) {
  if (k_iters == 0) throw InvalidParameter("iteration count must be positive");
  const double k = static_cast<double>(k_iters);
  return (d1 * std::sqrt(std::log(1.0 + 24.0 * k * k * d1 * d1)) + 2.0 * d1 + 3.0) / std::sqrt(k);
}

double adandd_iteration_budget(std::size_t d, double eps_k, double h0, double r_star, double delta,
                               std::size_t k) {
  require_positive(eps_k, "accuracy");
  require_positive(h0, "initial radius");
  require_positive(r_star, "regularity floor");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidParameter("delta must lie in (0, 1)");
  const double dd = static_cast<double>(d);
  const double kk = static_cast<double>(k);
  const double planes =
      d >= 2 ? 2.0 * dm1(d) * std::ceil(std::log2(7.0 * std::sqrt(dm1(d)) / eps_k)) : 0.0;
  return planes + 2.0 * ceil_plus(std::log2(h0 * dd * dd * dd / (r_star * eps_k))) + 16.0 +
         4.0 * std::ceil(std::log2(kPi * kPi * kk * kk / (6.0 * delta)));
}

double adandd_total_comparisons(std::size_t d, std::size_t k_iters, double d1, double h0,
                                double r_star, double delta) {
  require_positive(h0, "initial radius");
  require_positive(r_star, "regularity floor");
  const double dd = static_cast<double>(d);
  const double k = static_cast<double>(k_iters);
  return 2.0 * k * dd * std::ceil(std::log2(7.0 * std::sqrt(dd) * std::pow(k, 1.5) * (d1 + 3.0))) +
         2.0 * k *
             (ceil_plus(std::log2(h0 * std::pow(dd, 2.5) / r_star)) +
              2.0 * std::ceil(std::log2(2.0 * k * k / delta)) + 9.0);
}

double kt_regret(double u_dist, std::size_t k_iters) {
  const double k = static_cast<double>(k_iters);
  return u_dist * std::sqrt(k * std::log(1.0 + 24.0 * k * k * u_dist * u_dist)) + 1.0;
}

double kt_iterate_radius(std::size_t k, double d1) {
  if (k == 0) throw InvalidParameter("iterate index starts at 1");
  const double km1 = static_cast<double>(k - 1);
  return 1.0 + km1 * d1 + 2.0 * std::sqrt(km1);
}

double hard_instance_gap(double d1, std::size_t d) {
  return 3.0 * d1 / (4.0 * std::sqrt(static_cast<double>(d)));
}

double ellipsoid_iterations(std::size_t d, double radius0, double eps) {
  require_positive(eps, "accuracy");
  const double dd = static_cast<double>(d);
  return 2.0 * dd * (dd + 1.0) * std::log(radius0 / eps);
}

}  // namespace prefopt::bounds
