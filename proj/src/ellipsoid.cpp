#include <cmath>

#include "prefopt/errors.hpp"
#include "prefopt/optimizer.hpp"

namespace prefopt {

namespace {

constexpr double kConditioningFloor = 1e-14;

// Restores symmetry and positive definiteness of P; returns true when the
// eigenvalues had to be lifted to the floor.
bool regularize(Eigen::MatrixXd& p) {
  p = 0.5 * (p + p.transpose());
  if (!p.allFinite()) throw ConditioningError("ellipsoid matrix is not finite");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(p);
  const Eigen::VectorXd lam = eig.eigenvalues();
  const double lmax = lam.maxCoeff();
  if (!(lmax > 0.0)) throw ConditioningError("ellipsoid matrix collapsed");
  const double floor = kConditioningFloor * lmax;
  if (lam.minCoeff() >= floor) return false;
  const Eigen::VectorXd lifted = lam.cwiseMax(floor);
  p = eig.eigenvectors() * lifted.asDiagonal() * eig.eigenvectors().transpose();
  p = 0.5 * (p + p.transpose());
  return true;
}

double max_semi_axis(const Eigen::MatrixXd& p) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(p, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
}

}  // namespace

EllipsoidResult ellipsoid_solve(PreferenceOracle& oracle, const FeasibleSet& set,
                                const EllipsoidParams& params, Rng& rng,
                                const NormalSource& source) {
  const std::size_t d = oracle.dim();
  const auto n = static_cast<Eigen::Index>(d);
  if (params.center0.size() != n || set.dim() != d) throw InvalidDimension("ellipsoid: dimension mismatch");
  if (!(params.radius0 > 0.0)) throw InvalidParameter("initial radius must be positive");
  if (!(params.epsilon > 0.0)) throw InvalidParameter("epsilon must be positive");
  const bool exact = std::holds_alternative<ExactNormals>(source);

  const std::uint64_t q0 = oracle.queries();
  EllipsoidResult out;
  Point c = params.center0;
  Eigen::MatrixXd p = params.radius0 * params.radius0 * Eigen::MatrixXd::Identity(n, n);
  std::optional<Point> best;
  RadiusState radius = params.estimator.radius;
  const double dd = static_cast<double>(d);

  auto consider = [&](const Point& y) {
    if (!set.contains(y)) return;
    if (!best || oracle.compare(*best, y) == Outcome::kBetter) best = y;
  };

  out.run.stop = StopReason::kCompleted;
  for (std::size_t k = 1;; ++k) {
    consider(c);
    out.centers.push_back(c);
    if (2.0 * max_semi_axis(p) <= params.epsilon) {
      out.run.stop = StopReason::kConverged;
      break;
    }
    if (k > params.max_iters) break;

    IterationRecord rec;
    rec.k = k;
    rec.x = c;
    std::optional<Cut> cut;
    if (!set.contains(c)) {
      cut = feasibility_cut(set, c);
    } else if (exact) {
      try {
        cut = optimality_cut(std::get<ExactNormals>(source).normal_at(c), c);
      } catch (const UndefinedNormal&) {
        out.run.stop = StopReason::kOptimalReached;
        out.run.stop_iteration = k;
        break;
      }
    } else {
      EstimatorParams ep = params.estimator;
      ep.radius = radius;
      const NormalEstimate e = estimate_normal(oracle, c, ep, rng);
      radius = e.radius;
      rec.h = e.final_h;
      if (!e.direction) {
        out.run.stop = StopReason::kBudgetExhausted;
        out.run.stop_iteration = k;
        break;
      }
      cut = optimality_cut(*e.direction, c);
    }
    rec.normal = cut->normal.vec();
    out.cuts.push_back(*cut);

    // Central cut through c with normal g: keeps {y : <g, y - c> <= 0}.
    const Eigen::VectorXd g = cut->normal.vec();
    const double gpg = g.dot(p * g);
    if (!(gpg > 0.0)) throw ConditioningError("ellipsoid matrix lost definiteness along the cut");
    const Eigen::VectorXd pg = p * g / std::sqrt(gpg);
    if (d == 1) {
      c -= 0.5 * pg;
      p *= 0.25;
    } else {
      c -= pg / (dd + 1.0);
      p = (dd * dd / (dd * dd - 1.0)) * (p - (2.0 / (dd + 1.0)) * pg * pg.transpose());
      if (regularize(p)) ++out.recoveries;
    }
    ++out.iterations;

    rec.x_next = c;
    rec.best = best.value_or(set.project(c));
    rec.comparisons = oracle.queries() - q0;
    out.run.trace.records.push_back(std::move(rec));
  }

  out.run.best = best.value_or(set.project(c));
  out.run.comparisons = oracle.queries() - q0;
  out.run.radius = radius;
  out.shape = p;
  return out;
}

}  // namespace prefopt
