#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "prefopt/errors.hpp"
#include "prefopt/harness.hpp"

using namespace prefopt;

namespace {

Json estimate_doc() {
  return Json::parse(R"({
    "name": "est", "algorithm": "estimate", "instance": "linear", "d": 8,
    "seeds": {"start": 0, "count": 20}, "mode": "fixed", "epsilon": 0.05, "h": 1.0
  })");
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Config, MissingDimensionNamesTheKey) {
  Json doc = estimate_doc();
  doc.erase("d");
  try {
    parse_config(doc);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("'d'"), std::string::npos) << e.what();
  }
}

TEST(Config, UnknownAlgorithmAndInstance) {
  Json doc = estimate_doc();
  doc["algorithm"] = "gradient";
  EXPECT_THROW(parse_config(doc), ConfigError);
  doc = estimate_doc();
  doc["instance"] = "rosenbrock";
  try {
    parse_config(doc);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("'instance'"), std::string::npos) << e.what();
  }
}

TEST(Config, SeedForms) {
  Json doc = estimate_doc();
  doc["seeds"] = Json::array({3, 5, 8});
  EXPECT_EQ(parse_config(doc).seeds, (std::vector<std::uint64_t>{3, 5, 8}));
  doc["seeds"] = Json{{"start", 10}, {"count", 2}};
  EXPECT_EQ(parse_config(doc).seeds, (std::vector<std::uint64_t>{10, 11}));
}

TEST(Config, LoadFromFile) {
  const auto dir = std::filesystem::temp_directory_path() / "prefopt_cfg_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "est.json";
  std::ofstream(path) << estimate_doc().dump();
  EXPECT_EQ(load_config(path).d, 8u);
  std::ofstream(dir / "bad.json") << "{ not json";
  EXPECT_THROW(load_config(dir / "bad.json"), ConfigError);
  EXPECT_THROW(load_config(dir / "missing.json"), ConfigError);
}

TEST(Runner, EstimateRowsAndChecks) {
  const auto out = run_config(parse_config(estimate_doc()));
  ASSERT_EQ(out.rows.size(), 20u);
  for (const auto& r : out.rows) {
    ASSERT_TRUE(r.error_normal);
    EXPECT_LE(*r.error_normal, 0.05);
    EXPECT_EQ(r.comparisons, 85u);
  }
  const auto rep = verify_bounds(out.summary);
  EXPECT_TRUE(rep.pass);
}

TEST(Runner, ComparisonsColumnMatchesOracleCounter) {
  // A single seed's comparisons equal the estimator's own count, reconstructed directly.
  Json doc = estimate_doc();
  doc["seeds"] = Json::array({4});
  doc["mode"] = "adaptive";
  doc["h0"] = 10.0;
  doc["instance"] = "sphere";
  doc["x"] = Json::array({0.3, 0.4, 0, 0, 0, 0, 0, 0});
  const auto out = run_config(parse_config(doc));
  ASSERT_EQ(out.rows.size(), 1u);

  Instance s = make_sphere(8);
  Rng rng(4);
  Point x = Point::Zero(8);
  x[0] = 0.3;
  x[1] = 0.4;
  const int depth = depth_for_accuracy(8, 0.05, RadiusMode::kAdaptive);
  estimate_normal(*s.oracle, x, EstimatorParams::adaptive(RadiusState::start(10.0), depth), rng);
  EXPECT_EQ(out.rows[0].comparisons, s.oracle->queries());
}

TEST(Runner, CsvIsDeterministicAcrossJobCounts) {
  Json doc = estimate_doc();
  doc["instance"] = "quadratic";
  doc["h"] = 1e-4;
  const auto cfg = parse_config(doc);
  const auto a = format_csv(run_config(cfg, 1).rows);
  const auto b = format_csv(run_config(cfg, 4).rows);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.substr(0, a.find('\n')), kCsvHeader);
}

TEST(Runner, NddExactTraceRows) {
  const auto doc = Json::parse(R"({
    "name": "ndd", "algorithm": "ndd", "instance": "quadratic", "d": 2,
    "seeds": [0], "normals": "exact", "x1": [2, 0], "K": 100, "eta": "auto",
    "set": "ball", "set_radius": 3
  })");
  const auto out = run_config(parse_config(doc));
  ASSERT_EQ(out.rows.size(), 100u);
  ASSERT_TRUE(out.rows.back().delta_ls);
  EXPECT_LE(*out.rows.back().delta_ls, 0.2);
  for (std::size_t i = 1; i < out.rows.size(); ++i) {
    EXPECT_LE(*out.rows[i].delta_ls, *out.rows[i - 1].delta_ls + 1e-15);
  }
  EXPECT_TRUE(verify_bounds(out.summary).pass);
}

TEST(Verify, SabotagedDepthFails) {
  Json doc = estimate_doc();
  doc["T"] = depth_for_accuracy(8, 0.05, RadiusMode::kFixed) - 5;
  doc["seeds"] = Json{{"start", 0}, {"count", 50}};
  const auto out = run_config(parse_config(doc));
  const auto rep = verify_bounds(out.summary);
  EXPECT_FALSE(rep.pass);
  bool found = false;
  for (const auto& l : rep.lines) {
    if (l.rfind("FAIL error_normal<=epsilon", 0) == 0) {
      found = true;
      EXPECT_NE(l.find("excess"), std::string::npos) << l;
    }
  }
  EXPECT_TRUE(found);
}

TEST(Verify, EmptyRunReportsNoRows) {
  Json summary = {{"name", "empty"}, {"n_rows", 0}, {"checks", Json::array()}};
  const auto rep = verify_bounds(summary);
  EXPECT_FALSE(rep.pass);
  ASSERT_FALSE(rep.lines.empty());
  EXPECT_NE(rep.lines[0].find("no rows"), std::string::npos);
}

TEST(Artifacts, WritesCsvAndSummary) {
  const auto dir = std::filesystem::temp_directory_path() / "prefopt_artifacts_test";
  std::filesystem::remove_all(dir);
  const auto out = run_config(parse_config(estimate_doc()));
  const auto paths = write_artifacts(out, "est", dir);
  EXPECT_EQ(paths.csv, dir / "est.csv");
  EXPECT_EQ(read_file(paths.csv), format_csv(out.rows));
  const Json s = Json::parse(read_file(paths.summary));
  EXPECT_EQ(s.at("n_rows"), 20);
  EXPECT_EQ(s.at("algorithm"), "estimate");
}

TEST(Catalog, ListsEveryInstance) {
  std::vector<std::string> ids;
  for (const auto& e : instance_catalog()) ids.push_back(e.id);
  for (const char* id : {"linear", "sphere", "quadratic", "dist_box", "mckinnon", "hard"}) {
    EXPECT_NE(std::find(ids.begin(), ids.end(), id), ids.end()) << id;
  }
}
