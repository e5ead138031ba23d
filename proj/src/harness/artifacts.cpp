#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "prefopt/errors.hpp"
#include "prefopt/harness.hpp"

namespace prefopt {

namespace {

void put(std::ostringstream& os, const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", *v);
  os << buf;
}

}  // namespace

std::string format_csv(const std::vector<MetricRow>& rows) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.seed << ',' << r.k << ',' << r.comparisons << ',';
    put(os, r.delta_ls);
    os << ',';
    put(os, r.dist_opt);
    os << ',';
    put(os, r.error_normal);
    os << ',';
    put(os, r.h_final);
    os << ',';
    put(os, r.wallclock_ms);
    os << '\n';
  }
  return os.str();
}

ArtifactPaths write_artifacts(const RunOutput& out, const std::string& name,
                              const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
  ArtifactPaths paths{dir / (name + ".csv"), dir / (name + ".summary.json")};
  {
    std::ofstream csv(paths.csv, std::ios::binary);
    if (!csv) throw ConfigError("cannot write '" + paths.csv.string() + "'");
    csv << format_csv(out.rows);
  }
  {
    std::ofstream js(paths.summary, std::ios::binary);
    if (!js) throw ConfigError("cannot write '" + paths.summary.string() + "'");
    js << out.summary.dump(2) << '\n';
  }
  return paths;
}

}  // namespace prefopt
