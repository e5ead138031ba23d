#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "prefopt/estimator.hpp"
#include "prefopt/geometry.hpp"
#include "prefopt/instances.hpp"
#include "prefopt/oracle.hpp"

namespace prefopt {

/// Closed convex set with an exact Euclidean projection: a ball, a box, or all of R^d.
class FeasibleSet {
 public:
  static FeasibleSet ball(Point center, double radius);
  static FeasibleSet box(Point lo, Point hi);
  static FeasibleSet whole(std::size_t dim);

  Point project(const Point& x) const;
  bool contains(const Point& x, double tol = tol::kConstruction) const;
  std::optional<double> diameter() const;
  std::size_t dim() const { return static_cast<std::size_t>(a_.size()); }
  std::string describe() const;

 private:
  enum class Kind { kBall, kBox, kWhole };
  FeasibleSet(Kind kind, Point a, Point b, double radius)
      : kind_(kind), a_(std::move(a)), b_(std::move(b)), radius_(radius) {}
  Kind kind_;
  Point a_;  // ball center or box lower corner
  Point b_;  // box upper corner
  double radius_ = 0.0;
};

enum class CutKind { kOptimality, kFeasibility };

/// The halfspace {y : <normal, y - offset> <= 0}.
struct Cut {
  UnitVec normal;
  Point offset;
  CutKind kind;
};

Cut optimality_cut(const UnitVec& n_x, const Point& x);
/// Separates an infeasible x from the set through its projection.
Cut feasibility_cut(const FeasibleSet& set, const Point& x);

/// Normals come from the comparison-based estimator.
struct EstimatedNormals {};
/// Normals come from instance ground truth; used for exact-normal runs.
struct ExactNormals {
  std::function<UnitVec(const Point&)> normal_at;
};
using NormalSource = std::variant<EstimatedNormals, ExactNormals>;

enum class StopReason { kCompleted, kBudgetExhausted, kOptimalReached, kConverged };
std::string to_string(StopReason r);

struct IterationRecord {
  std::size_t k = 0;
  Point x;                       ///< iterate x_k
  std::optional<Point> z;        ///< unprojected iterate z_k (adaNDD)
  std::optional<Point> normal;   ///< normal used at x_k (estimated or exact)
  std::optional<Point> g;        ///< corrected direction g_k (adaNDD)
  Point x_next;                  ///< the candidate compared against the best point
  double h = 0.0;                ///< probe radius after the estimate (0 with exact normals)
  std::uint64_t comparisons = 0; ///< cumulative, including this iteration
  Point best;                    ///< best point after this iteration
  double eps = 0.0;              ///< adaNDD target accuracy
  int depth = 0;                 ///< bisection depth used
  std::uint64_t budget = 0;      ///< adaNDD per-iteration budget
};

struct RunTrace {
  std::vector<IterationRecord> records;
};

struct RunResult {
  Point best;
  RunTrace trace;
  StopReason stop = StopReason::kCompleted;
  std::size_t stop_iteration = 0;  ///< iteration at which the run stopped early, else 0
  std::uint64_t comparisons = 0;
  RadiusState radius;
};

struct NddParams {
  double eta = 1.0;
  double h = 1.0;
  int depth = 1;
  std::size_t iterations = 1;
};

/// x_{k+1} = Proj(x_k - eta n_k), keeping the best point seen under the oracle.
RunResult ndd(PreferenceOracle& oracle, const FeasibleSet& set, const Point& x1,
              const NddParams& params, Rng& rng, const NormalSource& source = EstimatedNormals{});

struct NddTuning {
  NddParams params;
  double comparison_bound = 0.0;
};

/// Parameters that guarantee a level-set gap of eps under growth (gamma1, gamma2).
NddTuning ndd_params_for_eps(std::size_t d, double eps, double d1, const GrowthParams& growth);

struct BettingState {
  Eigen::VectorXd s;
  double a = 0.0;
  std::size_t k = 0;

  static BettingState start(std::size_t dim);
};

struct KtStep {
  BettingState state;
  Point z_next;
};

/// Anchored coin-betting update: z_{k+1} = x1 - (1 - A_k)/(k + 1) S_k.
KtStep kt_step(const BettingState& state, const Eigen::VectorXd& g, const Point& z, const Point& x1);

struct AdanddParams {
  double h0 = 1.0;
  double r_star = 1e-4;
  double delta = 0.1;
  std::size_t iterations = 1;
  int max_halvings = 200;
};

/// Parameter-free descent with adaptive probe radius and coin-betting steps.
RunResult adandd(PreferenceOracle& oracle, const FeasibleSet& set, const Point& x1,
                 const AdanddParams& params, Rng& rng);

struct EllipsoidParams {
  Point center0;
  double radius0 = 1.0;
  double epsilon = 1e-3;       ///< stop once the ellipsoid diameter is at most epsilon
  std::size_t max_iters = 100;
  EstimatorParams estimator;   ///< used with EstimatedNormals
};

struct EllipsoidResult {
  RunResult run;
  std::vector<Cut> cuts;
  std::vector<Point> centers;
  std::size_t iterations = 0;
  std::size_t recoveries = 0;  ///< regularizations after loss of positive definiteness
  Eigen::MatrixXd shape;       ///< final P with E = {y : (y-c)^T P^{-1} (y-c) <= 1}
};

EllipsoidResult ellipsoid_solve(PreferenceOracle& oracle, const FeasibleSet& set,
                                const EllipsoidParams& params, Rng& rng,
                                const NormalSource& source = EstimatedNormals{});

}  // namespace prefopt
