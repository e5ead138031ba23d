#include "prefopt/estimator.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "prefopt/errors.hpp"

namespace prefopt {

RadiusState RadiusState::start(double h0, int max_halvings) {
  if (!(h0 > 0.0) || !std::isfinite(h0)) throw InvalidParameter("initial radius must be positive");
  if (max_halvings < 1) throw InvalidParameter("max_halvings must be positive");
  return RadiusState{h0, h0, 0, max_halvings};
}

EstimatorParams EstimatorParams::fixed(double h, int depth) {
  EstimatorParams p;
  p.mode = RadiusMode::kFixed;
  p.h = h;
  p.depth = depth;
  return p;
}

EstimatorParams EstimatorParams::adaptive(RadiusState radius, int depth,
                                          std::optional<std::uint64_t> budget) {
  EstimatorParams p;
  p.mode = RadiusMode::kAdaptive;
  p.radius = radius;
  p.h = radius.h;
  p.depth = depth;
  p.budget = budget;
  return p;
}

namespace {

struct BudgetExhausted {};

// Comparisons against a fixed base point x, with an optional cap on the number issued.
class Session {
 public:
  Session(PreferenceOracle& oracle, const Point& x, std::optional<std::uint64_t> budget)
      : oracle_(oracle), x_(x), budget_(budget) {}

  /// compare(x, x + t u)
  Outcome probe(const UnitVec& u, double t) {
    if (budget_ && used_ >= *budget_) throw BudgetExhausted{};
    ++used_;
    return oracle_.compare(x_, x_ + t * u.vec());
  }

  std::uint64_t used() const { return used_; }

 private:
  PreferenceOracle& oracle_;
  const Point& x_;
  std::optional<std::uint64_t> budget_;
  std::uint64_t used_ = 0;
};

struct ProbePair {
  Outcome plus;
  Outcome minus;
  int halvings;
};

ProbePair line_search(Session& s, const UnitVec& u, RadiusState& st) {
  int halvings = 0;
  for (;;) {
    const Outcome plus = s.probe(u, st.h);
    const Outcome minus = s.probe(u, -st.h);
    if (!(plus == Outcome::kWorse && minus == Outcome::kWorse)) return {plus, minus, halvings};
    if (st.halvings >= st.max_halvings) {
      throw RadiusUnderflow("line search exceeded " + std::to_string(st.max_halvings) +
                            " halvings");
    }
    st.h *= 0.5;
    ++st.halvings;
    ++halvings;
  }
}

void validate(const Point& x, const EstimatorParams& p) {
  if (x.size() == 0) throw InvalidDimension("estimator: empty point");
  if (p.depth < 1) throw InvalidParameter("bisection depth must be at least 1");
  if (p.budget && *p.budget < 1) throw InvalidParameter("budget must be at least 1");
  if (p.mode == RadiusMode::kFixed) {
    if (!(p.h > 0.0) || !std::isfinite(p.h)) throw InvalidParameter("probe radius must be positive");
  } else if (!(p.radius.h > 0.0)) {
    throw InvalidParameter("probe radius must be positive");
  }
}

// Outcome of compare(x, x + h u) at the current radius: one probe in fixed mode,
// a line search in adaptive mode.
Outcome forward_probe(Session& s, const UnitVec& u, const EstimatorParams& p, RadiusState& st) {
  if (p.mode == RadiusMode::kFixed) return s.probe(u, p.h);
  return line_search(s, u, st).plus;
}

UnitVec planar_core(Session& s, const EstimatorParams& p, RadiusState& st, const UnitVec& a,
                    const UnitVec& b, Rng& rng, bool& early) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const auto [abar, bbar] = planar_rotate(a, b, angle(rng));

  Outcome plus;
  Outcome minus;
  if (p.mode == RadiusMode::kFixed) {
    plus = s.probe(abar, p.h);
    minus = s.probe(abar, -p.h);
  } else {
    const ProbePair r = line_search(s, abar, st);
    plus = r.plus;
    minus = r.minus;
  }
  // x + h abar <= x  <=>  compare(x, x + h abar) != kWorse, and x <= x + h abar <=> != kBetter.
  const bool plus_not_worse = plus != Outcome::kWorse;
  const bool minus_not_worse = minus != Outcome::kWorse;
  const bool plus_not_better = plus != Outcome::kBetter;
  const bool minus_not_better = minus != Outcome::kBetter;
  if ((plus_not_worse && minus_not_worse) || (plus_not_better && minus_not_better)) {
    early = true;
    return abar;
  }

  UnitVec u_plus = plus_not_worse ? -abar : abar;
  UnitVec u_minus = plus_not_worse ? abar : -abar;
  if (forward_probe(s, bbar, p, st) != Outcome::kWorse) {
    u_minus = bbar;
  } else {
    u_plus = bbar;
  }

  for (int t = 0; t < p.depth; ++t) {
    const UnitVec u_mid = geodesic_midpoint(u_plus, u_minus);
    if (forward_probe(s, u_mid, p, st) != Outcome::kWorse) {
      u_minus = u_mid;
    } else {
      u_plus = u_mid;
    }
  }
  // The last probed midpoint is an endpoint of the final bracket; its centre is
  // within pi/2^(T+2) of a tangent direction.
  return geodesic_midpoint(u_plus, u_minus);
}

}  // namespace

LineSearchResult line_search_compare(PreferenceOracle& oracle, const Point& x, const UnitVec& u,
                                     RadiusState state) {
  if (!(state.h > 0.0)) throw InvalidParameter("line search radius must be positive");
  if (u.dim() != static_cast<std::size_t>(x.size())) throw InvalidDimension("line search: dimension mismatch");
  Session s(oracle, x, std::nullopt);
  const ProbePair r = line_search(s, u, state);
  return {state, r.plus, r.minus, r.halvings, s.used()};
}

PlanarResult planar_bisect(PreferenceOracle& oracle, const Point& x, const EstimatorParams& params,
                           const UnitVec& a, const UnitVec& b, Rng& rng) {
  validate(x, params);
  if (a.dim() != static_cast<std::size_t>(x.size()) || b.dim() != a.dim()) {
    throw InvalidDimension("planar_bisect: dimension mismatch");
  }
  Session s(oracle, x, params.budget);
  PlanarResult out;
  out.radius = params.radius;
  try {
    out.direction = planar_core(s, params, out.radius, a, b, rng, out.early_return);
  } catch (const BudgetExhausted&) {
    out.budget_exhausted = true;
  }
  out.comparisons = s.used();
  out.h = params.mode == RadiusMode::kFixed ? params.h : out.radius.h;
  return out;
}

NormalEstimate estimate_normal_1d(PreferenceOracle& oracle, const Point& x,
                                  const EstimatorParams& params) {
  validate(x, params);
  if (x.size() != 1) throw InvalidDimension("estimate_normal_1d requires d = 1");
  Session s(oracle, x, params.budget);
  NormalEstimate out;
  out.radius = params.radius;
  const UnitVec v = UnitVec::basis(1, 0);
  try {
    const Outcome o = forward_probe(s, v, params, out.radius);
    out.direction = o == Outcome::kBetter ? -v : v;
  } catch (const BudgetExhausted&) {
    out.budget_exhausted = true;
  }
  out.comparisons_used = s.used();
  out.final_h = params.mode == RadiusMode::kFixed ? params.h : out.radius.h;
  return out;
}

NormalEstimate estimate_normal(PreferenceOracle& oracle, const Point& x,
                               const EstimatorParams& params, Rng& rng) {
  validate(x, params);
  const auto d = static_cast<std::size_t>(x.size());
  if (d != oracle.dim()) throw InvalidDimension("estimate_normal: dimension mismatch");
  if (d == 1) return estimate_normal_1d(oracle, x, params);

  const Frame q = sample_haar_frame(d, rng);
  Session s(oracle, x, params.budget);
  NormalEstimate out;
  out.radius = params.radius;
  try {
    UnitVec v = q[0];
    for (std::size_t i = 1; i < d; ++i) {
      const UnitVec qi = q[i];
      bool early = false;
      const UnitVec y = planar_core(s, params, out.radius, v, qi, rng, early);
      out.tangents.push_back(y);
      v = givens_update(v, qi, y);
    }
    const Outcome o = forward_probe(s, v, params, out.radius);
    out.direction = o == Outcome::kBetter ? -v : v;
  } catch (const BudgetExhausted&) {
    out.budget_exhausted = true;
  }
  out.comparisons_used = s.used();
  out.final_h = params.mode == RadiusMode::kFixed ? params.h : out.radius.h;
  return out;
}

int depth_for_accuracy(std::size_t d, double epsilon, RadiusMode mode) {
  if (d < 2) throw InvalidDimension("depth_for_accuracy requires d >= 2");
  const double limit = mode == RadiusMode::kAdaptive ? std::sqrt(2.0) : 2.0;
  if (!(epsilon > 0.0) || epsilon > limit) {
    throw InvalidParameter("accuracy must lie in (0, " + std::to_string(limit) + "]");
  }
  const double s = std::sqrt(static_cast<double>(d - 1));
  int t;
  if (mode == RadiusMode::kAdaptive) {
    t = static_cast<int>(std::ceil(std::log2(std::numbers::pi * s / (2.0 * epsilon))));
  } else {
    t = static_cast<int>(std::ceil(std::log2(8.0 * s * std::numbers::pi / epsilon))) - 2;
  }
  return std::max(t, 1);
}

}  // namespace prefopt
