#include <cmath>

#include "json_util.hpp"
#include "prefopt/harness.hpp"

namespace prefopt {

using detail::find_point;
using detail::get_integer;
using detail::get_number;
using detail::get_string;

const std::vector<CatalogEntry>& instance_catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"linear", "f(x) = <c, x> on the ball B(0, R)", {"c (random unit if absent)", "radius"}},
      {"sphere", "f1 = |x|, f2 = log(|x|+1), f3 = piecewise mix; all share level sets",
       {"variant (1, 2 or 3)"}},
      {"quadratic", "f(x) = 0.5 (x - xhat)^T Q (x - xhat)",
       {"q_diag or q (default diag(1,4,1,4,...))", "xhat"}},
      {"dist_box", "f(x) = dist(x, [lo, hi])", {"box_lo", "box_hi"}},
      {"mckinnon", "360x^2 + y + y^2 (x <= 0), 6x^2 + y + y^2 (x >= 0); d = 2", {}},
      {"hard", "smoothed max_i x_i on B(0, D1), averaged over a fixed sample",
       {"D1", "n_samples", "sample_seed"}},
  };
  return entries;
}

namespace {

Instance build_base(const std::string& id, const Json& cfg, std::size_t d, Rng& rng,
                    std::shared_ptr<const HardInstanceModel>& hard) {
  const auto n = static_cast<Eigen::Index>(d);
  if (id == "linear") {
    const auto c = find_point(cfg, "c", d);
    const UnitVec cu = c ? UnitVec(*c) : sample_unit_vector(d, rng);
    return make_linear(cu, get_number(cfg, "radius", 1.0));
  }
  if (id == "sphere") {
    const auto v = get_integer(cfg, "variant", 1);
    if (v < 1 || v > 3) throw ConfigError("key 'variant' must be 1, 2 or 3");
    return make_sphere(d, static_cast<SphereVariant>(v));
  }
  if (id == "quadratic") {
    Eigen::MatrixXd q(n, n);
    if (cfg.contains("q")) {
      const Json& rows = cfg.at("q");
      if (!rows.is_array() || rows.size() != d) throw ConfigError("key 'q' must be a d x d array");
      for (std::size_t i = 0; i < d; ++i) {
        q.row(static_cast<Eigen::Index>(i)) = detail::as_point(rows[i], "q", d).transpose();
      }
    } else if (cfg.contains("q_diag")) {
      q = detail::as_point(cfg.at("q_diag"), "q_diag", d).asDiagonal();
    } else {
      q.setZero();
      for (Eigen::Index i = 0; i < n; ++i) q(i, i) = i % 2 == 0 ? 1.0 : 4.0;
    }
    const Point xhat = find_point(cfg, "xhat", d).value_or(Point::Zero(n));
    return make_quadratic(q, xhat);
  }
  if (id == "dist_box") {
    const Point lo = find_point(cfg, "box_lo", d).value_or(Point::Constant(n, -1.0));
    const Point hi = find_point(cfg, "box_hi", d).value_or(Point::Constant(n, 1.0));
    return make_dist_to_box(lo, hi);
  }
  if (id == "mckinnon") {
    if (d != 2) throw ConfigError("key 'd' must be 2 for the mckinnon instance");
    return make_mckinnon();
  }
  if (id == "hard") {
    const auto m = get_integer(cfg, "n_samples", 4000);
    if (m < 1000) throw ConfigError("key 'n_samples' must be at least 1000");
    HardInstance h = make_hard_instance(d, get_number(cfg, "D1", 1.0), static_cast<std::size_t>(m),
                                        static_cast<std::uint64_t>(get_integer(cfg, "sample_seed", 0)));
    hard = h.model;
    return h.instance;
  }
  throw ConfigError("unknown instance '" + id + "' (key 'instance')");
}

std::function<double(double)> make_phi(const std::string& name) {
  if (name == "log1p") return [](double t) { return std::log1p(t); };
  if (name == "cubic") return [](double t) { return t * t * t + t; };
  if (name == "affine") return [](double t) { return 3.0 * t + 1.0; };
  throw ConfigError("unknown reparameterization '" + name + "' (key 'phi')");
}

FeasibleSet build_set(const std::string& id, const Json& cfg, std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  std::string kind = get_string(cfg, "set", "");
  if (kind.empty()) {
    if (id == "linear") {
      return FeasibleSet::ball(Point::Zero(n), get_number(cfg, "radius", 1.0));
    }
    if (id == "hard") return FeasibleSet::ball(Point::Zero(n), get_number(cfg, "D1", 1.0));
    kind = "whole";
  }
  if (kind == "ball") {
    return FeasibleSet::ball(find_point(cfg, "set_center", d).value_or(Point::Zero(n)),
                             detail::get_positive(cfg, "set_radius"));
  }
  if (kind == "box") {
    return FeasibleSet::box(detail::get_point(cfg, "set_lo", d), detail::get_point(cfg, "set_hi", d));
  }
  if (kind == "whole") return FeasibleSet::whole(d);
  throw ConfigError("unknown feasible set '" + kind + "' (key 'set')");
}

}  // namespace

CatalogInstance make_catalog_instance(const Json& config, std::size_t d, std::uint64_t seed) {
  const std::string id = get_string(config, "instance");
  Rng rng(seed ^ 0x9E3779B97F4A7C15ull);
  std::shared_ptr<const HardInstanceModel> hard;
  Instance inst;
  try {
    inst = build_base(id, config, d, rng, hard);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("instance '") + id + "': " + e.what());
  }
  const std::string phi = get_string(config, "phi", "identity");
  if (phi != "identity") inst.oracle = monotone_wrap(inst.oracle, make_phi(phi));
  return CatalogInstance{std::move(inst), build_set(id, config, d), std::move(hard)};
}

}  // namespace prefopt
