#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "prefopt/instances.hpp"
#include "prefopt/optimizer.hpp"

namespace prefopt {

using Json = nlohmann::json;

struct CatalogEntry {
  std::string id;
  std::string description;
  std::vector<std::string> params;
};

const std::vector<CatalogEntry>& instance_catalog();

struct CatalogInstance {
  Instance instance;
  FeasibleSet set;  ///< feasible set from the config, or the instance's natural one
  std::shared_ptr<const HardInstanceModel> hard;
};

/**
 * Builds an instance from a flat config object. Random instance data (such as
 * an unspecified linear direction) is drawn from a stream derived from seed.
 */
CatalogInstance make_catalog_instance(const Json& config, std::size_t d, std::uint64_t seed);

enum class Algorithm { kEstimate, kNdd, kAdandd, kEllipsoid };

struct ExperimentConfig {
  std::string name;
  Algorithm algorithm = Algorithm::kEstimate;
  std::string instance;
  std::size_t d = 0;
  std::vector<std::uint64_t> seeds;
  bool record_wallclock = false;
  Json raw;  ///< the full flat document, read by the per-algorithm runners
};

/// Validates a flat JSON config; throws ConfigError naming the offending key.
ExperimentConfig parse_config(const Json& doc, const std::string& default_name = "run");
ExperimentConfig load_config(const std::filesystem::path& path);

struct MetricRow {
  std::uint64_t seed = 0;
  std::size_t k = 0;
  std::uint64_t comparisons = 0;
  std::optional<double> delta_ls;
  std::optional<double> dist_opt;
  std::optional<double> error_normal;
  std::optional<double> h_final;
  std::optional<double> wallclock_ms;
};

struct RunOutput {
  std::vector<MetricRow> rows;
  Json summary;
};

/// Runs every seed of the config, up to jobs at a time. Rows come back ordered by (seed, k).
RunOutput run_config(const ExperimentConfig& config, unsigned jobs = 1);

inline constexpr const char* kCsvHeader =
    "seed,k,comparisons,delta_ls,dist_opt,error_normal,h_final,wallclock_ms";

std::string format_csv(const std::vector<MetricRow>& rows);

struct ArtifactPaths {
  std::filesystem::path csv;
  std::filesystem::path summary;
};

/// Writes <dir>/<name>.csv and <dir>/<name>.summary.json.
ArtifactPaths write_artifacts(const RunOutput& out, const std::string& name,
                              const std::filesystem::path& dir);

struct VerifyReport {
  bool pass = false;
  std::vector<std::string> lines;
  Json to_json() const;
};

/// Checks every bound recorded in a summary against its measured values.
VerifyReport verify_bounds(const Json& summary);

}  // namespace prefopt
