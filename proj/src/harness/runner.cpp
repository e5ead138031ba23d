#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include "json_util.hpp"
#include "prefopt/bounds.hpp"
#include "prefopt/harness.hpp"

namespace prefopt {

namespace {

using detail::find_number;
using detail::get_integer;
using detail::get_number;
using detail::get_point;
using detail::get_positive;
using detail::get_string;

enum class Relation { kLe, kGe };

struct CheckSpec {
  std::string name;
  std::string metric;
  Relation relation = Relation::kLe;
  bool probabilistic = false;
  double allowed_violation_rate = 0.0;
  std::string note;
};

struct CheckSample {
  std::string check;
  double value;
  double bound;
};

struct SeedResult {
  std::vector<MetricRow> rows;
  std::vector<CheckSample> samples;
  std::string stop = "COMPLETED";
  Json resolved;
  std::optional<std::pair<std::string, double>> theorem_bound;
};

// Declares the checks of a run and collects their per-seed samples.
class CheckBook {
 public:
  void declare(CheckSpec spec) {
    if (std::none_of(specs_.begin(), specs_.end(), [&](const CheckSpec& s) { return s.name == spec.name; })) {
      specs_.push_back(std::move(spec));
    }
  }
  const std::vector<CheckSpec>& specs() const { return specs_; }

 private:
  std::vector<CheckSpec> specs_;
};

std::optional<double> safe_eval(const std::function<double(const Point&)>& f, const Point& x) {
  if (!f) return std::nullopt;
  try {
    const double v = f(x);
    if (!std::isfinite(v)) return std::nullopt;
    return v;
  } catch (const UndefinedNormal&) {
    return std::nullopt;
  }
}

std::optional<double> normal_error(const InstanceTruth& t, const Point& x, const Eigen::VectorXd& n_hat) {
  if (!t.normal_at) return std::nullopt;
  try {
    return (t.normal_at(x).vec() - n_hat).norm();
  } catch (const UndefinedNormal&) {
    return std::nullopt;
  }
}

double regularity(const InstanceTruth& t, const Point& x) {
  if (!t.regularity_lb) return std::numeric_limits<double>::quiet_NaN();
  return t.regularity_lb(x);
}

Rng point_stream(std::uint64_t seed) { return Rng(seed ^ 0xC2B2AE3D27D4EB4Full); }

double resolve_d1(const CatalogInstance& ci, const Json& raw, const Point& x1) {
  if (ci.instance.truth.dist_opt) return ci.instance.truth.dist_opt(x1);
  if (const auto v = find_number(raw, "D1")) return *v;
  throw ConfigError("instance has no distance oracle; key 'D1' is required");
}

MetricRow optimizer_row(std::uint64_t seed, const IterationRecord& rec, const InstanceTruth& t) {
  MetricRow row;
  row.seed = seed;
  row.k = rec.k;
  row.comparisons = rec.comparisons;
  row.delta_ls = safe_eval(t.delta_ls, rec.best);
  row.dist_opt = safe_eval(t.dist_opt, rec.best);
  if (rec.normal) row.error_normal = normal_error(t, rec.x, *rec.normal);
  if (rec.h > 0.0) row.h_final = rec.h;
  return row;
}

void optimizer_rows(SeedResult& out, std::uint64_t seed, const RunResult& run, const Point& x1,
                    const InstanceTruth& t) {
  for (const auto& rec : run.trace.records) out.rows.push_back(optimizer_row(seed, rec, t));
  if (out.rows.empty()) {
    IterationRecord start;
    start.k = 0;
    start.x = x1;
    start.best = run.best;
    start.comparisons = run.comparisons;
    out.rows.push_back(optimizer_row(seed, start, t));
  }
}

// ---------------------------------------------------------------- estimate

SeedResult run_estimate(const ExperimentConfig& cfg, std::uint64_t seed, CheckBook& book,
                        std::mutex& book_mu) {
  const Json& raw = cfg.raw;
  const std::size_t d = cfg.d;
  CatalogInstance ci = make_catalog_instance(raw, d, seed);
  const InstanceTruth& truth = ci.instance.truth;

  Point x;
  if (raw.contains("x")) {
    x = get_point(raw, "x", d);
  } else {
    Rng prng = point_stream(seed);
    x = get_number(raw, "x_norm", 1.0) * sample_unit_vector(d, prng).vec();
  }

  const std::string mode_s = get_string(raw, "mode", "fixed");
  if (mode_s != "fixed" && mode_s != "adaptive") throw ConfigError("key 'mode' must be 'fixed' or 'adaptive'");
  const RadiusMode mode = mode_s == "fixed" ? RadiusMode::kFixed : RadiusMode::kAdaptive;
  const auto eps = find_number(raw, "epsilon");
  int depth = 1;
  if (raw.contains("T")) {
    depth = static_cast<int>(get_integer(raw, "T"));
  } else if (eps) {
    if (d >= 2) {
      try {
        depth = depth_for_accuracy(d, *eps, mode);
      } catch (const InvalidParameter& e) {
        throw ConfigError(std::string("key 'epsilon': ") + e.what());
      }
    }
  } else if (d >= 2) {
    throw ConfigError("either key 'T' or key 'epsilon' is required");
  }
  if (depth < 1) throw ConfigError("key 'T' must be at least 1");

  EstimatorParams params;
  double h = 0.0;
  double h0 = 0.0;
  const double delta = get_number(raw, "delta", 0.1);
  if (mode == RadiusMode::kFixed) {
    h = get_positive(raw, "h");
    params = EstimatorParams::fixed(h, depth);
  } else {
    h0 = get_positive(raw, "h0");
    std::optional<std::uint64_t> budget;
    if (raw.contains("budget")) budget = static_cast<std::uint64_t>(get_integer(raw, "budget"));
    params = EstimatorParams::adaptive(RadiusState::start(h0), depth, budget);
  }

  Rng rng(seed);
  auto& oracle = *ci.instance.oracle;
  const std::uint64_t q0 = oracle.queries();
  const NormalEstimate est = estimate_normal(oracle, x, params, rng);
  const std::uint64_t used = oracle.queries() - q0;

  SeedResult out;
  MetricRow row;
  row.seed = seed;
  row.k = 1;
  row.comparisons = used;
  row.delta_ls = safe_eval(truth.delta_ls, x);
  row.dist_opt = safe_eval(truth.dist_opt, x);
  if (est.direction) row.error_normal = normal_error(truth, x, est.direction->vec());
  row.h_final = est.final_h;
  out.rows.push_back(row);
  if (est.budget_exhausted) out.stop = "BUDGET_EXHAUSTED";
  out.resolved = {{"mode", mode_s}, {"T", depth}};
  if (eps) out.resolved["epsilon"] = *eps;
  if (mode == RadiusMode::kFixed) {
    out.resolved["h"] = h;
  } else {
    out.resolved["h0"] = h0;
    out.resolved["delta"] = delta;
  }

  const double r = regularity(truth, x);
  const double comps = static_cast<double>(used);
  const double sd = std::sqrt(static_cast<double>(d > 0 ? d - 1 : 0));
  std::vector<CheckSpec> specs;
  auto add = [&](CheckSpec spec, double value, double bound) {
    out.samples.push_back({spec.name, value, bound});
    specs.push_back(std::move(spec));
  };

  if (mode == RadiusMode::kFixed) {
    const double count = static_cast<double>(bounds::fixed_estimation_comparisons(d, depth));
    add({"comparisons<=fixed_count", "comparisons", Relation::kLe, false, 0.0,
         "(d-1)(T+3)+1"}, comps, count);
    out.theorem_bound = {"fixed_estimation_error", std::numeric_limits<double>::quiet_NaN()};
    if (row.error_normal && !std::isnan(r)) {
      if (d >= 2) {
        const double b = bounds::fixed_estimation_error(d, h, r, depth);
        add({"error_normal<=fixed_bound", "error_normal", Relation::kLe, false, 0.0,
             "2 sqrt(d-1) (h/r + pi/2^(T+1)) with r the regularity lower bound"},
            *row.error_normal, b);
        out.theorem_bound = {"fixed_estimation_error", b};
      } else if (h < 2.0 * r) {
        add({"error_normal<=fixed_bound", "error_normal", Relation::kLe, false, 0.0,
             "exact sign when h < 2r"}, *row.error_normal, 0.0);
      }
    }
    if (eps && d >= 2) {
      add({"comparisons<=N_eps", "comparisons", Relation::kLe, false, 0.0,
           "(d-1) ceil(log2(51 sqrt(d-1)/eps)) + 1"},
          comps, static_cast<double>(bounds::fixed_comparisons_for_accuracy(d, *eps)));
      if (row.error_normal && !std::isnan(r) && h <= *eps * r / (8.0 * sd)) {
        add({"error_normal<=epsilon", "error_normal", Relation::kLe, false, 0.0,
             "applies when h <= eps r / (8 sqrt(d-1))"}, *row.error_normal, *eps);
      }
    }
  } else {
    if (eps && row.error_normal) {
      add({"error_normal<=epsilon", "error_normal", Relation::kLe, false, 0.0,
           "adaptive radius on convex sublevel sets"}, *row.error_normal, *eps);
    }
    if (d == 1 && !std::isnan(r)) {
      add({"comparisons<=adaptive_1d_count", "comparisons", Relation::kLe, false, 0.0,
           "2 + 2 ceil+(log2(h0/r))"}, comps, 2.0 + 2.0 * bounds::ceil_plus(std::log2(h0 / r)));
    } else if (eps && !std::isnan(r) && r > 0.0) {
      const double b = bounds::adaptive_comparisons_whp(d, *eps, h0, r, delta);
      add({"comparisons<=whp_count", "comparisons", Relation::kLe, true, delta + 0.05,
           "holds with probability 1 - delta; r is the regularity lower bound"}, comps, b);
      out.theorem_bound = {"adaptive_comparisons_whp", b};
    }
    if (!out.theorem_bound && eps) out.theorem_bound = {"adaptive_estimation_error", *eps};
  }
  std::lock_guard<std::mutex> lock(book_mu);
  for (auto& s : specs) book.declare(std::move(s));
  return out;
}

// ---------------------------------------------------------------- ndd

SeedResult run_ndd(const ExperimentConfig& cfg, std::uint64_t seed, CheckBook& book,
                   std::mutex& book_mu) {
  const Json& raw = cfg.raw;
  const std::size_t d = cfg.d;
  CatalogInstance ci = make_catalog_instance(raw, d, seed);
  const InstanceTruth& truth = ci.instance.truth;
  const Point x1 = raw.contains("x1") ? get_point(raw, "x1", d) : Point::Zero(static_cast<Eigen::Index>(d));
  const std::string normals = get_string(raw, "normals", "estimated");
  if (normals != "estimated" && normals != "exact") {
    throw ConfigError("key 'normals' must be 'estimated' or 'exact'");
  }
  const bool exact = normals == "exact";
  if (exact && !truth.normal_at) throw ConfigError("instance has no exact normals (key 'normals')");

  NddParams p;
  std::optional<double> eps = find_number(raw, "epsilon");
  std::optional<double> eps_bound;
  bool eta_auto = false;
  double d1 = std::numeric_limits<double>::quiet_NaN();
  if (eps) {
    d1 = resolve_d1(ci, raw, x1);
    if (!truth.growth) throw ConfigError("key 'epsilon' needs growth constants the instance lacks");
    try {
      const NddTuning t = ndd_params_for_eps(d, *eps, d1, *truth.growth);
      p = t.params;
      eps_bound = t.comparison_bound;
    } catch (const InvalidParameter& e) {
      throw ConfigError(std::string("key 'epsilon': ") + e.what());
    }
    eta_auto = true;
  } else {
    const auto k = get_integer(raw, "K");
    if (k < 1) throw ConfigError("key 'K' must be positive");
    p.iterations = static_cast<std::size_t>(k);
    const Json& eta = detail::require(raw, "eta");
    if (eta.is_string() && eta.get<std::string>() == "auto") {
      d1 = resolve_d1(ci, raw, x1);
      p.eta = d1 / std::sqrt(static_cast<double>(p.iterations));
      eta_auto = true;
    } else {
      p.eta = detail::as_number(eta, "eta");
      if (!(p.eta > 0.0)) throw ConfigError("key 'eta' must be positive or \"auto\"");
    }
    if (!exact) {
      p.h = get_positive(raw, "h");
      p.depth = static_cast<int>(get_integer(raw, "T"));
      if (p.depth < 1) throw ConfigError("key 'T' must be at least 1");
    }
  }
  if (!(p.eta > 0.0)) throw ConfigError("resolved step size is not positive; D1 is zero");

  Rng rng(seed);
  NormalSource src = EstimatedNormals{};
  if (exact) src = ExactNormals{truth.normal_at};
  const RunResult run = ndd(*ci.instance.oracle, ci.set, x1, p, rng, src);

  SeedResult out;
  optimizer_rows(out, seed, run, x1, truth);
  out.stop = to_string(run.stop);
  out.resolved = {{"K", p.iterations}, {"eta", p.eta}, {"normals", normals}};
  if (!exact) {
    out.resolved["h"] = p.h;
    out.resolved["T"] = p.depth;
  }
  if (std::isfinite(d1)) out.resolved["D1"] = d1;

  std::vector<CheckSpec> specs;
  auto add = [&](CheckSpec spec, double value, double bound) {
    out.samples.push_back({spec.name, value, bound});
    specs.push_back(std::move(spec));
  };
  const double comps = static_cast<double>(run.comparisons);
  const auto final_gap = safe_eval(truth.delta_ls, run.best);
  if (!exact) {
    add({"comparisons<=ndd_count", "comparisons", Relation::kLe, false, 0.0, "K((d-1)(T+3)+2)"}, comps,
        static_cast<double>(bounds::ndd_comparisons(p.iterations, d, p.depth)));
  }
  if (eps) {
    if (final_gap) {
      add({"delta_ls<=epsilon", "delta_ls", Relation::kLe, false, 0.0, "tuned parameters under growth"},
          *final_gap, *eps);
    }
    add({"comparisons<=eps_count", "comparisons", Relation::kLe, false, 0.0,
         "7d(1+D1^2/eps^2) log2(224 pi d (1+D1/eps)^2)"}, comps, *eps_bound);
    out.theorem_bound = {"ndd_epsilon_gap", *eps};
  } else if (exact && eta_auto && final_gap) {
    const double b = bounds::ndd_exact_gap(d1, p.iterations);
    add({"delta_ls<=D1/sqrtK", "delta_ls", Relation::kLe, false, 0.0, "exact normals, eta = D1/sqrt(K)"},
        *final_gap, b);
    out.theorem_bound = {"ndd_exact_gap", b};
  }
  if (ci.hard && p.iterations + 1 == d && x1.norm() == 0.0) {
    const double slack = get_number(raw, "gap_slack", 0.05);
    add({"gap_lower>=hard_bound", "delta_ls_lower", Relation::kGe, false, 0.0,
         "f(best) - f(y) against 3 D1 / (4 sqrt(d)) minus sampling slack"},
        ci.hard->gap_lower_bound(run.best), bounds::hard_instance_gap(ci.hard->d1(), d) - slack);
    out.theorem_bound = {"hard_instance_gap", bounds::hard_instance_gap(ci.hard->d1(), d)};
  }
  std::lock_guard<std::mutex> lock(book_mu);
  for (auto& s : specs) book.declare(std::move(s));
  return out;
}

// ---------------------------------------------------------------- adandd

SeedResult run_adandd(const ExperimentConfig& cfg, std::uint64_t seed, CheckBook& book,
                      std::mutex& book_mu) {
  const Json& raw = cfg.raw;
  const std::size_t d = cfg.d;
  CatalogInstance ci = make_catalog_instance(raw, d, seed);
  const InstanceTruth& truth = ci.instance.truth;
  const Point x1 = raw.contains("x1") ? get_point(raw, "x1", d) : Point::Zero(static_cast<Eigen::Index>(d));
  AdanddParams p;
  const auto k = get_integer(raw, "K");
  if (k < 1) throw ConfigError("key 'K' must be positive");
  p.iterations = static_cast<std::size_t>(k);
  p.h0 = get_positive(raw, "h0");
  p.r_star = get_positive(raw, "r_star");
  p.delta = get_number(raw, "delta", 0.1);
  if (!(p.delta > 0.0 && p.delta < 1.0)) throw ConfigError("key 'delta' must lie in (0, 1)");

  Rng rng(seed);
  const RunResult run = adandd(*ci.instance.oracle, ci.set, x1, p, rng);

  SeedResult out;
  optimizer_rows(out, seed, run, x1, truth);
  out.stop = to_string(run.stop);
  out.resolved = {{"K", p.iterations}, {"h0", p.h0}, {"r_star", p.r_star}, {"delta", p.delta}};

  std::vector<CheckSpec> specs;
  auto add = [&](CheckSpec spec, double value, double bound) {
    out.samples.push_back({spec.name, value, bound});
    specs.push_back(std::move(spec));
  };
  std::optional<double> d1;
  try {
    d1 = resolve_d1(ci, raw, x1);
  } catch (const ConfigError&) {
  }
  if (d1) {
    out.resolved["D1"] = *d1;
    add({"comparisons<=adandd_total", "comparisons", Relation::kLe, false, 0.0,
         "total budget over K iterations"},
        static_cast<double>(run.comparisons),
        bounds::adandd_total_comparisons(d, p.iterations, *d1, p.h0, p.r_star, p.delta));
    const double b = bounds::adandd_gap(*d1, p.iterations);
    out.theorem_bound = {"adandd_gap", b};
    const auto gap = safe_eval(truth.delta_ls, run.best);
    // The gap guarantee only covers runs that completed all K iterations.
    CheckSpec spec{"delta_ls<=adandd_gap", "delta_ls", Relation::kLe, false, 0.0,
                   "completed runs only"};
    if (gap && run.stop == StopReason::kCompleted) {
      add(spec, *gap, b);
    } else {
      specs.push_back(spec);
    }
  }
  std::lock_guard<std::mutex> lock(book_mu);
  for (auto& s : specs) book.declare(std::move(s));
  return out;
}

// ---------------------------------------------------------------- ellipsoid

SeedResult run_ellipsoid(const ExperimentConfig& cfg, std::uint64_t seed, CheckBook& book,
                         std::mutex& book_mu) {
  const Json& raw = cfg.raw;
  const std::size_t d = cfg.d;
  CatalogInstance ci = make_catalog_instance(raw, d, seed);
  const InstanceTruth& truth = ci.instance.truth;
  EllipsoidParams p;
  p.center0 = raw.contains("center0") ? get_point(raw, "center0", d)
                                      : Point::Zero(static_cast<Eigen::Index>(d));
  p.radius0 = get_positive(raw, "radius0");
  p.epsilon = get_positive(raw, "epsilon");
  const auto iters = get_integer(raw, "max_iters");
  if (iters < 1) throw ConfigError("key 'max_iters' must be positive");
  p.max_iters = static_cast<std::size_t>(iters);
  const std::string normals = get_string(raw, "normals", "estimated");
  if (normals != "estimated" && normals != "exact") {
    throw ConfigError("key 'normals' must be 'estimated' or 'exact'");
  }
  const bool exact = normals == "exact";
  if (exact && !truth.normal_at) throw ConfigError("instance has no exact normals (key 'normals')");
  if (!exact) {
    const int depth = static_cast<int>(get_integer(raw, "T"));
    if (depth < 1) throw ConfigError("key 'T' must be at least 1");
    p.estimator = EstimatorParams::fixed(get_positive(raw, "h"), depth);
  }

  Rng rng(seed);
  NormalSource src = EstimatedNormals{};
  if (exact) src = ExactNormals{truth.normal_at};
  const EllipsoidResult res = ellipsoid_solve(*ci.instance.oracle, ci.set, p, rng, src);

  SeedResult out;
  optimizer_rows(out, seed, res.run, p.center0, truth);
  out.stop = to_string(res.run.stop);
  out.resolved = {{"radius0", p.radius0}, {"epsilon", p.epsilon}, {"max_iters", p.max_iters},
                  {"normals", normals}, {"iterations", res.iterations}, {"recoveries", res.recoveries}};

  std::vector<CheckSpec> specs;
  auto add = [&](CheckSpec spec, double value, double bound) {
    out.samples.push_back({spec.name, value, bound});
    specs.push_back(std::move(spec));
  };
  add({"iterations<=max_iters", "iterations", Relation::kLe, false, 0.0, "iteration cap"},
      static_cast<double>(res.iterations), static_cast<double>(p.max_iters));
  if (exact) {
    if (const auto dist = safe_eval(truth.dist_opt, res.run.best)) {
      add({"dist_opt<=epsilon", "dist_opt", Relation::kLe, false, 0.0, "exact normals"}, *dist,
          p.epsilon);
      out.theorem_bound = {"ellipsoid_accuracy", p.epsilon};
    }
  }
  std::lock_guard<std::mutex> lock(book_mu);
  for (auto& s : specs) book.declare(std::move(s));
  return out;
}

// ---------------------------------------------------------------- summary

Json quantiles(std::vector<double> v) {
  if (v.empty()) return Json{{"count", 0}};
  std::sort(v.begin(), v.end());
  auto q = [&](double p) {
    const double pos = p * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
  };
  double sum = 0.0;
  for (double x : v) sum += x;
  return Json{{"count", v.size()}, {"min", v.front()}, {"q10", q(0.1)}, {"median", q(0.5)},
              {"q90", q(0.9)},     {"max", v.back()},  {"mean", sum / static_cast<double>(v.size())}};
}

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kEstimate:
      return "estimate";
    case Algorithm::kNdd:
      return "ndd";
    case Algorithm::kAdandd:
      return "adandd";
    case Algorithm::kEllipsoid:
      return "ellipsoid";
  }
  return "unknown";
}

Json json_number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

RunOutput run_config(const ExperimentConfig& cfg, unsigned jobs) {
  if (cfg.seeds.empty()) throw ConfigError("key 'seeds' must not be empty");
  const std::size_t n = cfg.seeds.size();
  std::vector<SeedResult> results(n);
  std::vector<double> wall(n, 0.0);
  std::vector<std::exception_ptr> errors(n);
  CheckBook book;
  std::mutex book_mu;

  auto run_one = [&](std::size_t i) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const std::uint64_t seed = cfg.seeds[i];
      switch (cfg.algorithm) {
        case Algorithm::kEstimate:
          results[i] = run_estimate(cfg, seed, book, book_mu);
          break;
        case Algorithm::kNdd:
          results[i] = run_ndd(cfg, seed, book, book_mu);
          break;
        case Algorithm::kAdandd:
          results[i] = run_adandd(cfg, seed, book, book_mu);
          break;
        case Algorithm::kEllipsoid:
          results[i] = run_ellipsoid(cfg, seed, book, book_mu);
          break;
      }
    } catch (...) {
      errors[i] = std::current_exception();
    }
    wall[i] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) run_one(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  // Deterministic (seed, k) order, whatever order the workers finished in.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return cfg.seeds[a] < cfg.seeds[b]; });

  RunOutput out;
  std::map<std::string, std::vector<double>> finals;
  std::map<std::string, int> stops;
  for (std::size_t i : order) {
    auto& r = results[i];
    std::stable_sort(r.rows.begin(), r.rows.end(),
                     [](const MetricRow& a, const MetricRow& b) { return a.k < b.k; });
    for (auto& row : r.rows) {
      if (cfg.record_wallclock) row.wallclock_ms = wall[i];
      out.rows.push_back(row);
    }
    const MetricRow& last = r.rows.back();
    finals["comparisons"].push_back(static_cast<double>(last.comparisons));
    if (last.delta_ls) finals["delta_ls"].push_back(*last.delta_ls);
    if (last.dist_opt) finals["dist_opt"].push_back(*last.dist_opt);
    if (last.error_normal) finals["error_normal"].push_back(*last.error_normal);
    if (last.h_final) finals["h_final"].push_back(*last.h_final);
    ++stops[r.stop];
  }

  Json& s = out.summary;
  s["name"] = cfg.name;
  s["algorithm"] = algorithm_name(cfg.algorithm);
  s["instance"] = cfg.instance;
  s["d"] = cfg.d;
  s["n_seeds"] = n;
  s["n_rows"] = out.rows.size();
  s["parameters"] = results[order.front()].resolved;
  s["config"] = cfg.raw;
  s["stop_reasons"] = stops;
  Json metrics = Json::object();
  for (const auto& [k, v] : finals) metrics[k] = quantiles(v);
  s["metrics"] = metrics;
  s["wallclock_ms"] = quantiles(wall);

  double tb = -std::numeric_limits<double>::infinity();
  std::string tb_name;
  for (std::size_t i : order) {
    if (const auto& t = results[i].theorem_bound) {
      tb_name = t->first;
      if (std::isfinite(t->second)) tb = std::max(tb, t->second);
    }
  }
  if (!tb_name.empty()) {
    s["theorem_bound"] = {{"name", tb_name}, {"value", json_number(tb)}};
  }

  Json checks = Json::array();
  for (const auto& spec : book.specs()) {
    Json c;
    c["name"] = spec.name;
    c["metric"] = spec.metric;
    c["relation"] = spec.relation == Relation::kLe ? "le" : "ge";
    c["kind"] = spec.probabilistic ? "probabilistic" : "hard";
    c["allowed_violation_rate"] = spec.allowed_violation_rate;
    c["note"] = spec.note;
    Json seeds = Json::array(), values = Json::array(), bnds = Json::array();
    for (std::size_t i : order) {
      for (const auto& smp : results[i].samples) {
        if (smp.check != spec.name) continue;
        seeds.push_back(cfg.seeds[i]);
        values.push_back(json_number(smp.value));
        bnds.push_back(json_number(smp.bound));
      }
    }
    c["seeds"] = seeds;
    c["values"] = values;
    c["bounds"] = bnds;
    checks.push_back(c);
  }
  s["checks"] = checks;
  return out;
}

}  // namespace prefopt
