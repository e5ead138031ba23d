#include <algorithm>
#include <fstream>

#include "json_util.hpp"
#include "prefopt/harness.hpp"

namespace prefopt {

namespace {

Algorithm parse_algorithm(const std::string& s) {
  if (s == "estimate") return Algorithm::kEstimate;
  if (s == "ndd") return Algorithm::kNdd;
  if (s == "adandd") return Algorithm::kAdandd;
  if (s == "ellipsoid") return Algorithm::kEllipsoid;
  throw ConfigError("unknown algorithm '" + s + "' (key 'algorithm')");
}

std::vector<std::uint64_t> parse_seeds(const Json& v) {
  std::vector<std::uint64_t> seeds;
  if (v.is_array()) {
    for (const Json& s : v) {
      if (!s.is_number_integer() || s.get<std::int64_t>() < 0) {
        throw ConfigError("key 'seeds' must hold nonnegative integers");
      }
      seeds.push_back(s.get<std::uint64_t>());
    }
  } else if (v.is_object()) {
    const auto start = detail::get_integer(v, "start", 0);
    const auto count = detail::get_integer(v, "count");
    if (start < 0 || count < 0) throw ConfigError("key 'seeds' range must be nonnegative");
    for (std::int64_t i = 0; i < count; ++i) seeds.push_back(static_cast<std::uint64_t>(start + i));
  } else {
    throw ConfigError("key 'seeds' must be an array or {\"start\", \"count\"}");
  }
  if (seeds.empty()) throw ConfigError("key 'seeds' must not be empty");
  return seeds;
}

}  // namespace

ExperimentConfig parse_config(const Json& doc, const std::string& default_name) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig cfg;
  cfg.raw = doc;
  cfg.name = detail::get_string(doc, "name", default_name);
  cfg.algorithm = parse_algorithm(detail::get_string(doc, "algorithm"));
  cfg.instance = detail::get_string(doc, "instance");
  const auto& cat = instance_catalog();
  if (std::none_of(cat.begin(), cat.end(), [&](const CatalogEntry& e) { return e.id == cfg.instance; })) {
    throw ConfigError("unknown instance '" + cfg.instance + "' (key 'instance')");
  }
  const auto d = detail::get_integer(doc, "d");
  if (d < 1) throw ConfigError("key 'd' must be a positive integer");
  cfg.d = static_cast<std::size_t>(d);
  cfg.seeds = parse_seeds(detail::require(doc, "seeds"));
  if (doc.contains("record_wallclock")) {
    if (!doc.at("record_wallclock").is_boolean()) throw ConfigError("key 'record_wallclock' must be a boolean");
    cfg.record_wallclock = doc.at("record_wallclock").get<bool>();
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("invalid JSON in '" + path.string() + "': " + e.what());
  }
  return parse_config(doc, path.stem().string());
}

}  // namespace prefopt
