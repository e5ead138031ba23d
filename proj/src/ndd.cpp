#include <cmath>
#include <limits>
#include <numbers>

#include "prefopt/bounds.hpp"
#include "prefopt/errors.hpp"
#include "prefopt/optimizer.hpp"

namespace prefopt {

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::kCompleted:
      return "COMPLETED";
    case StopReason::kBudgetExhausted:
      return "BUDGET_EXHAUSTED";
    case StopReason::kOptimalReached:
      return "OPTIMAL_REACHED";
    case StopReason::kConverged:
      return "CONVERGED";
  }
  return "UNKNOWN";
}

namespace {

void check_start(PreferenceOracle& oracle, const FeasibleSet& set, const Point& x1) {
  if (x1.size() != static_cast<Eigen::Index>(oracle.dim()) || set.dim() != oracle.dim()) {
    throw InvalidDimension("start point, set and oracle dimensions differ");
  }
  if (!set.contains(x1)) throw InvalidStart("start point is not feasible");
}

}  // namespace

RunResult ndd(PreferenceOracle& oracle, const FeasibleSet& set, const Point& x1,
              const NddParams& params, Rng& rng, const NormalSource& source) {
  check_start(oracle, set, x1);
  if (!(params.eta > 0.0)) throw InvalidParameter("step size must be positive");
  if (params.iterations < 1) throw InvalidParameter("iteration count must be positive");
  const bool exact = std::holds_alternative<ExactNormals>(source);
  if (!exact && (!(params.h > 0.0) || params.depth < 1)) {
    throw InvalidParameter("probe radius and depth must be positive");
  }
  const EstimatorParams est = EstimatorParams::fixed(params.h, params.depth);

  const std::uint64_t q0 = oracle.queries();
  RunResult out;
  out.best = x1;
  Point x = x1;
  for (std::size_t k = 1; k <= params.iterations; ++k) {
    IterationRecord rec;
    rec.k = k;
    rec.x = x;
    rec.depth = exact ? 0 : params.depth;
    std::optional<UnitVec> n;
    if (exact) {
      try {
        n = std::get<ExactNormals>(source).normal_at(x);
      } catch (const UndefinedNormal&) {
        // x_k is optimal; nothing left to descend along.
        out.stop = StopReason::kOptimalReached;
        out.stop_iteration = k;
        break;
      }
    } else {
      const NormalEstimate e = estimate_normal(oracle, x, est, rng);
      n = e.direction;
      rec.h = params.h;
    }
    rec.normal = n->vec();
    const Point next = set.project(x - params.eta * n->vec());
    if (oracle.compare(out.best, next) == Outcome::kBetter) out.best = next;
    rec.x_next = next;
    rec.best = out.best;
    rec.comparisons = oracle.queries() - q0;
    out.trace.records.push_back(std::move(rec));
    x = next;
  }
  out.comparisons = oracle.queries() - q0;
  return out;
}

NddTuning ndd_params_for_eps(std::size_t d, double eps, double d1, const GrowthParams& growth) {
  if (d < 1) throw InvalidDimension("dimension must be positive");
  if (!(eps > 0.0) || !(eps < d1)) throw InvalidParameter("accuracy must lie in (0, D1)");
  if (!(growth.gamma1 > 0.0) || !(growth.gamma2 > 0.0)) {
    throw InvalidParameter("growth constants must be positive");
  }
  const double sd = std::sqrt(static_cast<double>(d));
  const double ratio = 1.0 + d1 / eps;
  NddTuning t;
  t.params.iterations = static_cast<std::size_t>(std::ceil(6.0 * d1 * d1 / (eps * eps)));
  t.params.depth =
      static_cast<int>(std::ceil(std::log2(14.0 * std::numbers::pi * sd * ratio * ratio)));
  t.params.h = std::min(eps * growth.gamma1, growth.gamma2) / (7.0 * sd * ratio * ratio);
  t.params.eta = d1 / std::sqrt(static_cast<double>(t.params.iterations));
  t.comparison_bound = bounds::ndd_eps_comparisons(d, d1, eps);
  return t;
}

BettingState BettingState::start(std::size_t dim) {
  BettingState s;
  s.s = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
  return s;
}

KtStep kt_step(const BettingState& state, const Eigen::VectorXd& g, const Point& z, const Point& x1) {
  if (g.size() != state.s.size() || z.size() != g.size() || x1.size() != g.size()) {
    throw InvalidDimension("kt_step: dimension mismatch");
  }
  if (g.norm() > 1.0 + tol::kProperty) throw ContractViolation("kt_step: |g| exceeds 1");
  KtStep out{state, Point()};
  out.state.s += g;
  out.state.a += g.dot(z - x1);
  out.state.k += 1;
  out.z_next = x1 - ((1.0 - out.state.a) / static_cast<double>(out.state.k + 1)) * out.state.s;
  return out;
}

RunResult adandd(PreferenceOracle& oracle, const FeasibleSet& set, const Point& x1,
                 const AdanddParams& params, Rng& rng) {
  check_start(oracle, set, x1);
  if (params.iterations < 1) throw InvalidParameter("iteration count must be positive");
  if (!(params.r_star > 0.0)) throw InvalidParameter("r_star must be positive");
  if (!(params.delta > 0.0 && params.delta < 1.0)) throw InvalidParameter("delta must lie in (0, 1)");
  const std::size_t d = oracle.dim();

  const std::uint64_t q0 = oracle.queries();
  RunResult out;
  out.best = x1;
  out.radius = RadiusState::start(params.h0, params.max_halvings);
  BettingState bet = BettingState::start(d);
  Point z = x1;
  Point x = x1;
  for (std::size_t k = 1; k <= params.iterations; ++k) {
    const double kk = static_cast<double>(k);
    const double eps = std::min(0.5, 1.0 / (std::sqrt(kk) * (1.0 + (x - x1).norm())));
    const int depth =
        d >= 2 ? static_cast<int>(std::ceil(std::log2(std::numbers::pi *
                                                      std::sqrt(static_cast<double>(d - 1)) /
                                                      (2.0 * eps))))
               : 1;
    const auto budget = static_cast<std::uint64_t>(
        bounds::adandd_iteration_budget(d, eps, params.h0, params.r_star, params.delta, k));

    const NormalEstimate e =
        estimate_normal(oracle, x, EstimatorParams::adaptive(out.radius, depth, budget), rng);
    out.radius = e.radius;
    if (e.budget_exhausted) {
      out.stop = StopReason::kBudgetExhausted;
      out.stop_iteration = k;
      break;
    }
    const Eigen::VectorXd n = e.direction->vec();
    Eigen::VectorXd g = n;
    const Eigen::VectorXd zx = z - x;
    if (zx.norm() > 1e-14) {
      const Eigen::VectorXd s = zx / zx.norm();
      g += std::max(0.0, -n.dot(s)) * s;
    }
    const KtStep step = kt_step(bet, g, z, x1);
    bet = step.state;
    const Point x_next = set.project(step.z_next);
    if (oracle.compare(out.best, x_next) == Outcome::kBetter) out.best = x_next;

    IterationRecord rec;
    rec.k = k;
    rec.x = x;
    rec.z = z;
    rec.normal = n;
    rec.g = g;
    rec.x_next = x_next;
    rec.h = out.radius.h;
    rec.comparisons = oracle.queries() - q0;
    rec.best = out.best;
    rec.eps = eps;
    rec.depth = depth;
    rec.budget = budget;
    out.trace.records.push_back(std::move(rec));

    z = step.z_next;
    x = x_next;
  }
  out.comparisons = oracle.queries() - q0;
  return out;
}

}  // namespace prefopt
