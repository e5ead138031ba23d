#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "prefopt/errors.hpp"
#include "prefopt/instances.hpp"

namespace prefopt {

namespace {

// Index of the largest entry of x + z; ties go to the smallest index.
Eigen::Index argmax_shifted(const Point& x, const Eigen::MatrixXd& z, Eigen::Index row) {
  Eigen::Index best = 0;
  double best_v = x[0] + z(row, 0);
  for (Eigen::Index i = 1; i < x.size(); ++i) {
    const double v = x[i] + z(row, i);
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  return best;
}

}  // namespace

HardInstanceModel::HardInstanceModel(std::size_t dim, double d1, std::size_t n_samples,
                                     std::uint64_t seed)
    : dim_(dim), d1_(d1), chi_(d1 / (4.0 * std::sqrt(static_cast<double>(dim)))) {
  if (dim == 0) throw InvalidDimension("hard instance: dimension must be positive");
  if (!(d1 > 0.0) || !std::isfinite(d1)) throw InvalidInstance("hard instance: D1 must be positive");
  if (n_samples < 1000) throw InvalidInstance("hard instance: at least 1000 samples required");

  Rng rng(seed);
  std::gamma_distribution<double> gamma2(2.0, 1.0);
  const auto m = static_cast<Eigen::Index>(n_samples);
  const auto d = static_cast<Eigen::Index>(dim);
  z_.resize(m, d);
  std::vector<double> draw(dim);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (;;) {
      for (auto& v : draw) {
        const double a = gamma2(rng);
        const double b = gamma2(rng);
        v = a / (a + b);  // Beta(2, 2)
      }
      std::sort(draw.begin(), draw.end(), std::greater<>());
      bool strict = draw.front() < 1.0 && draw.back() > 0.0;
      for (std::size_t i = 1; i < dim && strict; ++i) strict = draw[i] < draw[i - 1];
      // Scaling can merge adjacent values, so strictness is rechecked afterwards.
      for (std::size_t i = 0; i < dim; ++i) z_(j, static_cast<Eigen::Index>(i)) = chi_ * draw[i];
      for (Eigen::Index i = 1; i < d && strict; ++i) strict = z_(j, i) < z_(j, i - 1);
      if (strict && z_(j, 0) < chi_ && z_(j, d - 1) > 0.0) break;
    }
  }
}

double HardInstanceModel::value(const Point& x) const {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < z_.rows(); ++j) sum += (x.transpose() + z_.row(j)).maxCoeff();
  return sum / static_cast<double>(z_.rows());
}

Eigen::VectorXd HardInstanceModel::argmax_frequencies(const Point& x) const {
  if (x.size() != static_cast<Eigen::Index>(dim_)) throw InvalidDimension("hard instance: bad point");
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(x.size());
  for (Eigen::Index j = 0; j < z_.rows(); ++j) counts[argmax_shifted(x, z_, j)] += 1.0;
  return counts / static_cast<double>(z_.rows());
}

UnitVec HardInstanceModel::normal(const Point& x) const { return UnitVec(argmax_frequencies(x)); }

Point HardInstanceModel::reference_point() const {
  return Point::Constant(static_cast<Eigen::Index>(dim_),
                         -d1_ / std::sqrt(static_cast<double>(dim_)));
}

double HardInstanceModel::gap_lower_bound(const Point& x) const {
  return value(x) - value(reference_point());
}

HardInstance make_hard_instance(std::size_t dim, double d1, std::size_t n_samples,
                                std::uint64_t seed) {
  auto model = std::make_shared<const HardInstanceModel>(dim, d1, n_samples, seed);
  HardInstance out;
  out.model = model;
  Instance& inst = out.instance;
  inst.id = "hard";
  inst.dim = dim;
  inst.oracle = std::make_shared<FunctionOracle>([model](const Point& x) { return model->value(x); },
                                                 dim);
  inst.truth.normal_at = [model](const Point& x) { return model->normal(x); };
  inst.truth.delta_ls_lower = [model](const Point& x) {
    return std::max(0.0, model->gap_lower_bound(x));
  };
  return out;
}

}  // namespace prefopt
