#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "prefopt/errors.hpp"
#include "prefopt/harness.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitVerify = 3;

std::filesystem::path output_dir(const std::string& flag, const prefopt::ExperimentConfig& cfg) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("PREFOPT_OUT_DIR"); env && *env) return env;
  if (cfg.raw.contains("output_dir") && cfg.raw.at("output_dir").is_string()) {
    return cfg.raw.at("output_dir").get<std::string>();
  }
  return std::filesystem::current_path();
}

int print_report(const prefopt::VerifyReport& rep) {
  for (const auto& line : rep.lines) std::cout << line << '\n';
  std::cout << (rep.pass ? "verify: PASS" : "verify: FAIL") << '\n';
  return rep.pass ? 0 : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Comparison-oracle optimization experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_flag;
  unsigned jobs = 1;
  bool verify_after = false;
  auto* run = app.add_subcommand("run", "Run an experiment config and write CSV + summary JSON");
  run->add_option("config", config_path, "Path to a JSON config")->required();
  run->add_option("--jobs,-j", jobs, "Number of seeds to run concurrently")->check(CLI::PositiveNumber);
  run->add_option("--out,-o", out_flag, "Output directory (overrides PREFOPT_OUT_DIR)");
  run->add_flag("--verify", verify_after, "Verify the recorded bounds after the run");

  std::string summary_path;
  auto* verify = app.add_subcommand("verify", "Check a summary JSON against its recorded bounds");
  verify->add_option("summary", summary_path, "Path to a .summary.json file")->required();

  auto* list = app.add_subcommand("list-instances", "List the instance catalog");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) {
      for (const auto& e : prefopt::instance_catalog()) {
        std::cout << e.id << "\t" << e.description;
        if (!e.params.empty()) {
          std::cout << "\tparams:";
          for (const auto& p : e.params) std::cout << " " << p << ";";
        }
        std::cout << '\n';
      }
      return 0;
    }
    if (*verify) {
      std::ifstream in(summary_path);
      if (!in) throw prefopt::ConfigError("cannot open summary '" + summary_path + "'");
      prefopt::Json summary;
      try {
        summary = prefopt::Json::parse(in);
      } catch (const prefopt::Json::parse_error& e) {
        throw prefopt::ConfigError(std::string("invalid summary JSON: ") + e.what());
      }
      return print_report(prefopt::verify_bounds(summary));
    }

    const auto cfg = prefopt::load_config(config_path);
    const auto out = prefopt::run_config(cfg, jobs);
    const auto paths = prefopt::write_artifacts(out, cfg.name, output_dir(out_flag, cfg));
    std::cout << "rows: " << out.rows.size() << '\n'
              << "csv: " << paths.csv.string() << '\n'
              << "summary: " << paths.summary.string() << '\n';
    if (verify_after) return print_report(prefopt::verify_bounds(out.summary));
    return 0;
  } catch (const prefopt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
