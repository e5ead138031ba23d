#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "prefopt/harness.hpp"

namespace prefopt {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double as_value(const Json& v, double if_null) {
  return v.is_number() ? v.get<double>() : if_null;
}

}  // namespace

Json VerifyReport::to_json() const { return Json{{"pass", pass}, {"lines", lines}}; }

VerifyReport verify_bounds(const Json& summary) {
  VerifyReport rep;
  const auto n_rows = summary.value("n_rows", 0);
  if (n_rows == 0) {
    rep.lines.push_back("FAIL run: no rows");
    return rep;
  }
  if (!summary.contains("checks") || summary.at("checks").empty()) {
    rep.lines.push_back("FAIL run: no checks recorded");
    return rep;
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  bool all = true;
  for (const Json& c : summary.at("checks")) {
    const std::string name = c.value("name", "?");
    const bool ge = c.value("relation", "le") == "ge";
    const bool prob = c.value("kind", "hard") == "probabilistic";
    const double allowed = c.value("allowed_violation_rate", 0.0);
    const Json& values = c.at("values");
    const Json& bnds = c.at("bounds");
    if (values.empty()) {
      rep.lines.push_back("FAIL " + name + ": no rows");
      all = false;
      continue;
    }
    std::size_t violations = 0;
    double worst_margin = -kInf;  // positive margin means violation
    double worst_value = 0.0;
    double worst_bound = 0.0;
    bool uniform = true;
    for (std::size_t i = 0; i < values.size(); ++i) {
      // A missing value is a violation; a missing bound is unbounded.
      const double v = as_value(values[i], ge ? -kInf : kInf);
      const double b = as_value(bnds[i], ge ? -kInf : kInf);
      if (i > 0 && as_value(bnds[i], 0.0) != as_value(bnds[0], 0.0)) uniform = false;
      const double margin = ge ? b - v : v - b;
      if (margin > 0.0 || std::isnan(margin)) ++violations;
      if (margin > worst_margin || i == 0) {
        worst_margin = margin;
        worst_value = v;
        worst_bound = b;
      }
    }
    const double rate = static_cast<double>(violations) / static_cast<double>(values.size());
    const bool ok = prob ? rate <= allowed : violations == 0;
    all = all && ok;
    const std::string stat = uniform ? (ge ? "min " : "max ") : "worst ";
    std::string line = std::string(ok ? "PASS " : "FAIL ") + name + ": " + stat + fmt(worst_value);
    if (worst_margin <= 0.0) {
      line += ge ? " >= " : " <= ";
    } else {
      line += ge ? " < " : " > ";
    }
    line += fmt(worst_bound);
    if (worst_margin > 0.0) line += ", excess " + fmt(worst_margin);
    line += " (" + std::to_string(violations) + "/" + std::to_string(values.size()) + " violations";
    if (prob) line += ", allowed rate " + fmt(allowed);
    line += ")";
    rep.lines.push_back(line);
  }
  rep.pass = all;
  return rep;
}

}  // namespace prefopt
