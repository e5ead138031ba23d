#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "prefopt/geometry.hpp"
#include "prefopt/oracle.hpp"

namespace prefopt {

enum class RadiusMode { kFixed, kAdaptive };

/// Probe radius shared by every line search of an adaptive run.
struct RadiusState {
  double h = 1.0;
  double h0 = 1.0;
  int halvings = 0;
  int max_halvings = 200;

  static RadiusState start(double h0, int max_halvings = 200);
};

struct EstimatorParams {
  RadiusMode mode = RadiusMode::kFixed;
  double h = 1.0;      ///< probe radius in fixed mode
  RadiusState radius;  ///< radius state in adaptive mode; persists across calls via the result
  int depth = 1;       ///< bisection steps T per planar problem
  std::optional<std::uint64_t> budget;

  static EstimatorParams fixed(double h, int depth);
  static EstimatorParams adaptive(RadiusState radius, int depth,
                                  std::optional<std::uint64_t> budget = std::nullopt);
};

struct LineSearchResult {
  RadiusState state;
  Outcome plus;   ///< compare(x, x + h u) at the final radius
  Outcome minus;  ///< compare(x, x - h u) at the final radius
  int halvings = 0;
  std::uint64_t comparisons = 0;

  bool plus_strictly_worse() const { return plus == Outcome::kWorse; }
  bool minus_strictly_worse() const { return minus == Outcome::kWorse; }
};

/// Halves h while both x + h u and x - h u are strictly worse than x.
LineSearchResult line_search_compare(PreferenceOracle& oracle, const Point& x, const UnitVec& u,
                                     RadiusState state);

struct PlanarResult {
  std::optional<UnitVec> direction;  ///< empty when the budget ran out
  std::uint64_t comparisons = 0;
  RadiusState radius;
  double h = 0.0;
  bool early_return = false;
  bool budget_exhausted = false;
};

/**
 * Finds a unit vector y in span{a, b} approximately tangent to the sublevel set
 * at x, i.e. with |<n_x, y>| small. a and b must be orthonormal.
 */
PlanarResult planar_bisect(PreferenceOracle& oracle, const Point& x, const EstimatorParams& params,
                           const UnitVec& a, const UnitVec& b, Rng& rng);

struct NormalEstimate {
  std::optional<UnitVec> direction;  ///< empty when the budget ran out
  std::uint64_t comparisons_used = 0;
  double final_h = 0.0;
  bool budget_exhausted = false;
  RadiusState radius;
  std::vector<UnitVec> tangents;  ///< the planar outputs y_1..y_{d-1}
};

/// Estimates the unit normal of the sublevel set at x from comparisons only.
NormalEstimate estimate_normal(PreferenceOracle& oracle, const Point& x,
                               const EstimatorParams& params, Rng& rng);

/// One-dimensional case: the normal is +1 or -1 and is recovered from a single probe.
NormalEstimate estimate_normal_1d(PreferenceOracle& oracle, const Point& x,
                                  const EstimatorParams& params);

/// Bisection depth T that achieves accuracy epsilon in the given mode.
int depth_for_accuracy(std::size_t d, double epsilon, RadiusMode mode);

}  // namespace prefopt
