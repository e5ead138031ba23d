#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "prefopt/bounds.hpp"
#include "prefopt/errors.hpp"
#include "prefopt/estimator.hpp"
#include "prefopt/harness.hpp"
#include "prefopt/instances.hpp"
#include "prefopt/optimizer.hpp"

namespace py = pybind11;
using namespace prefopt;

namespace {

// An instance plus the model of the hard instance when there is one.
struct PyInstance {
  Instance inst;
  std::shared_ptr<const HardInstanceModel> hard;
};

template <class R>
R call_truth(const std::function<R(const Point&)>& fn, const char* name, const Point& x) {
  if (!fn) throw InvalidCall(std::string(name) + " is not available for this instance");
  return fn(x);
}

FeasibleSet make_set(std::size_t d, std::optional<double> radius) {
  if (radius) return FeasibleSet::ball(Point::Zero(static_cast<Eigen::Index>(d)), *radius);
  return FeasibleSet::whole(d);
}

py::list trace_points(const RunResult& r) {
  py::list xs;
  for (const auto& rec : r.trace.records) xs.append(rec.x);
  return xs;
}

py::dict run_dict(const RunResult& r) {
  py::dict out;
  out["best"] = r.best;
  out["comparisons"] = r.comparisons;
  out["stop"] = to_string(r.stop);
  out["iterates"] = trace_points(r);
  py::list best;
  for (const auto& rec : r.trace.records) best.append(rec.best);
  out["best_so_far"] = best;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Comparison-oracle normal estimation and descent";

  auto base = py::register_exception<Error>(m, "PrefoptError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<RadiusUnderflow>(m, "RadiusUnderflow", base.ptr());
  py::register_exception<UndefinedNormal>(m, "UndefinedNormal", base.ptr());
  py::register_exception<InvalidParameter>(m, "InvalidParameter", base.ptr());

  py::enum_<Outcome>(m, "Outcome")
      .value("BETTER", Outcome::kBetter)
      .value("TIE", Outcome::kTie)
      .value("WORSE", Outcome::kWorse);

  py::class_<PyInstance>(m, "Instance")
      .def_property_readonly("id", [](const PyInstance& p) { return p.inst.id; })
      .def_property_readonly("dim", [](const PyInstance& p) { return p.inst.dim; })
      .def_property_readonly("queries", [](const PyInstance& p) { return p.inst.oracle->queries(); })
      .def("compare", [](PyInstance& p, const Point& x, const Point& y) { return p.inst.oracle->compare(x, y); },
           py::arg("x"), py::arg("y"), "Outcome of y relative to x: BETTER, TIE or WORSE.")
      .def("evaluate", [](const PyInstance& p, const Point& x) { return p.inst.oracle->evaluate(x); })
      .def("normal_at", [](const PyInstance& p, const Point& x) {
        return Eigen::VectorXd(call_truth(p.inst.truth.normal_at, "normal_at", x).vec());
      })
      .def("delta_ls", [](const PyInstance& p, const Point& x) { return call_truth(p.inst.truth.delta_ls, "delta_ls", x); })
      .def("dist_opt", [](const PyInstance& p, const Point& x) { return call_truth(p.inst.truth.dist_opt, "dist_opt", x); })
      .def("regularity_lb",
           [](const PyInstance& p, const Point& x) { return call_truth(p.inst.truth.regularity_lb, "regularity_lb", x); })
      .def("gap_lower_bound", [](const PyInstance& p, const Point& x) {
        if (!p.hard) throw InvalidCall("gap_lower_bound is only defined for the hard instance");
        return p.hard->gap_lower_bound(x);
      });

  m.def("make_linear", [](const Point& c, double radius) { return PyInstance{make_linear(UnitVec(c), radius), nullptr}; },
        py::arg("c"), py::arg("radius") = 1.0);
  m.def("make_sphere",
        [](std::size_t dim, int variant) {
          if (variant < 1 || variant > 3) throw InvalidParameter("variant must be 1, 2 or 3");
          return PyInstance{make_sphere(dim, static_cast<SphereVariant>(variant)), nullptr};
        },
        py::arg("dim"), py::arg("variant") = 1);
  m.def("make_quadratic",
        [](const Eigen::MatrixXd& q, const Point& xhat) { return PyInstance{make_quadratic(q, xhat), nullptr}; },
        py::arg("q"), py::arg("xhat"));
  m.def("make_dist_to_box",
        [](const Point& lo, const Point& hi) { return PyInstance{make_dist_to_box(lo, hi), nullptr}; });
  m.def("make_mckinnon", [] { return PyInstance{make_mckinnon(), nullptr}; });
  m.def("make_hard_instance",
        [](std::size_t dim, double d1, std::size_t n_samples, std::uint64_t seed) {
          HardInstance h = make_hard_instance(dim, d1, n_samples, seed);
          return PyInstance{std::move(h.instance), h.model};
        },
        py::arg("dim"), py::arg("d1") = 1.0, py::arg("n_samples") = 4000, py::arg("seed") = 0);

  m.def("depth_for_accuracy",
        [](std::size_t d, double eps, const std::string& mode) {
          return depth_for_accuracy(d, eps, mode == "adaptive" ? RadiusMode::kAdaptive : RadiusMode::kFixed);
        },
        py::arg("d"), py::arg("epsilon"), py::arg("mode") = "fixed");

  m.def("estimate_normal",
        [](PyInstance& p, const Point& x, int depth, std::optional<double> h, std::optional<double> h0,
           std::optional<std::uint64_t> budget, std::uint64_t seed) {
          if (h.has_value() == h0.has_value()) throw InvalidParameter("pass exactly one of h (fixed) or h0 (adaptive)");
          const EstimatorParams params =
              h ? EstimatorParams::fixed(*h, depth) : EstimatorParams::adaptive(RadiusState::start(*h0), depth, budget);
          Rng rng(seed);
          const NormalEstimate e = estimate_normal(*p.inst.oracle, x, params, rng);
          py::dict out;
          if (e.direction) {
            out["direction"] = Eigen::VectorXd(e.direction->vec());
          } else {
            out["direction"] = py::none();
          }
          out["comparisons"] = e.comparisons_used;
          out["final_h"] = e.final_h;
          out["budget_exhausted"] = e.budget_exhausted;
          return out;
        },
        py::arg("instance"), py::arg("x"), py::arg("depth"), py::kw_only(), py::arg("h") = py::none(),
        py::arg("h0") = py::none(), py::arg("budget") = py::none(), py::arg("seed") = 0);

  m.def("ndd",
        [](PyInstance& p, const Point& x1, double eta, std::size_t iterations, bool exact, double h, int depth,
           std::optional<double> set_radius, std::uint64_t seed) {
          Rng rng(seed);
          const NddParams params{eta, h, depth, iterations};
          const NormalSource src =
              exact ? NormalSource(ExactNormals{p.inst.truth.normal_at}) : NormalSource(EstimatedNormals{});
          return run_dict(ndd(*p.inst.oracle, make_set(p.inst.dim, set_radius), x1, params, rng, src));
        },
        py::arg("instance"), py::arg("x1"), py::arg("eta"), py::arg("iterations"), py::kw_only(),
        py::arg("exact") = false, py::arg("h") = 1e-3, py::arg("depth") = 10, py::arg("set_radius") = py::none(),
        py::arg("seed") = 0);

  m.def("adandd",
        [](PyInstance& p, const Point& x1, std::size_t iterations, double h0, double r_star, double delta,
           std::optional<double> set_radius, std::uint64_t seed) {
          Rng rng(seed);
          return run_dict(adandd(*p.inst.oracle, make_set(p.inst.dim, set_radius), x1,
                                 {h0, r_star, delta, iterations, 200}, rng));
        },
        py::arg("instance"), py::arg("x1"), py::arg("iterations"), py::kw_only(), py::arg("h0") = 1.0,
        py::arg("r_star") = 1e-4, py::arg("delta") = 0.1, py::arg("set_radius") = py::none(), py::arg("seed") = 0);

  m.def("ellipsoid",
        [](PyInstance& p, const Point& center0, double radius0, double epsilon, std::size_t max_iters, bool exact,
           double h, int depth, std::optional<double> set_radius, std::uint64_t seed) {
          EllipsoidParams params;
          params.center0 = center0;
          params.radius0 = radius0;
          params.epsilon = epsilon;
          params.max_iters = max_iters;
          params.estimator = EstimatorParams::fixed(h, depth);
          Rng rng(seed);
          const NormalSource src =
              exact ? NormalSource(ExactNormals{p.inst.truth.normal_at}) : NormalSource(EstimatedNormals{});
          const auto r = ellipsoid_solve(*p.inst.oracle, make_set(p.inst.dim, set_radius), params, rng, src);
          py::dict out = run_dict(r.run);
          out["iterations"] = r.iterations;
          out["recoveries"] = r.recoveries;
          return out;
        },
        py::arg("instance"), py::arg("center0"), py::arg("radius0"), py::arg("epsilon"), py::kw_only(),
        py::arg("max_iters") = 1000, py::arg("exact") = false, py::arg("h") = 1e-6, py::arg("depth") = 14,
        py::arg("set_radius") = py::none(), py::arg("seed") = 0);

  m.def("run_config",
        [](const std::string& config_json, unsigned jobs) {
          Json doc;
          try {
            doc = Json::parse(config_json);
          } catch (const Json::parse_error& e) {
            throw ConfigError(std::string("invalid config JSON: ") + e.what());
          }
          const RunOutput out = run_config(parse_config(doc), jobs);
          return py::make_tuple(format_csv(out.rows), out.summary.dump());
        },
        py::arg("config_json"), py::arg("jobs") = 1,
        "Run a flat JSON config. Returns (csv_text, summary_json_text).");

  m.def("verify_bounds",
        [](const std::string& summary_json) {
          const VerifyReport rep = verify_bounds(Json::parse(summary_json));
          return py::make_tuple(rep.pass, rep.lines);
        },
        py::arg("summary_json"));

  m.attr("CSV_HEADER") = kCsvHeader;

  auto b = m.def_submodule("bounds", "Closed-form comparison and accuracy bounds");
  b.def("fixed_estimation_error", &bounds::fixed_estimation_error);
  b.def("fixed_estimation_comparisons", &bounds::fixed_estimation_comparisons);
  b.def("fixed_comparisons_for_accuracy", &bounds::fixed_comparisons_for_accuracy);
  b.def("adaptive_comparisons_whp", &bounds::adaptive_comparisons_whp);
  b.def("estimation_lower_bound", &bounds::estimation_lower_bound);
  b.def("ndd_comparisons", &bounds::ndd_comparisons);
  b.def("ndd_exact_gap", &bounds::ndd_exact_gap);
  b.def("ndd_eps_comparisons", &bounds::ndd_eps_comparisons);
  b.def("adandd_gap", &bounds::adandd_gap);
  b.def("adandd_total_comparisons", &bounds::adandd_total_comparisons);
  b.def("kt_regret", &bounds::kt_regret);
  b.def("hard_instance_gap", &bounds::hard_instance_gap);
  b.def("ellipsoid_iterations", &bounds::ellipsoid_iterations);
}
