#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <thread>

#include "prefopt/errors.hpp"
#include "prefopt/instances.hpp"
#include "prefopt/oracle.hpp"

using namespace prefopt;

namespace {

Point pt(std::initializer_list<double> v) {
  Point out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

FunctionOracle norm_oracle(std::size_t d) {
  return FunctionOracle([](const Point& x) { return x.norm(); }, d);
}

}  // namespace

TEST(CompareFn, SignConvention) {
  auto o = norm_oracle(2);
  EXPECT_EQ(o.compare(pt({1, 0}), pt({0, 2})), Outcome::kWorse);
  EXPECT_EQ(o.compare(pt({1, 0}), pt({0, 1})), Outcome::kTie);
  FunctionOracle lin([](const Point& x) { return x[0]; }, 2);
  EXPECT_EQ(lin.compare(pt({0, 0}), pt({-1, 5})), Outcome::kBetter);
  EXPECT_EQ(sign(Outcome::kBetter), -1);
  EXPECT_EQ(flip(Outcome::kWorse), Outcome::kBetter);
}

TEST(CompareFn, CountsEveryQuery) {
  auto o = norm_oracle(2);
  EXPECT_EQ(o.queries(), 0u);
  for (int i = 0; i < 5; ++i) o.compare(pt({1, 0}), pt({0, 1}));
  EXPECT_EQ(o.queries(), 5u);
}

TEST(CompareFn, CounterIsThreadSafe) {
  auto o = norm_oracle(1);
  std::vector<std::thread> ts;
  for (int t = 0; t < 4; ++t) {
    ts.emplace_back([&] {
      for (int i = 0; i < 1000; ++i) o.compare(pt({1.0}), pt({2.0}));
    });
  }
  for (auto& t : ts) t.join();
  EXPECT_EQ(o.queries(), 4000u);
}

TEST(CompareFn, NanIsAnError) {
  FunctionOracle o([](const Point&) { return std::numeric_limits<double>::quiet_NaN(); }, 1);
  EXPECT_THROW(o.compare(pt({0.0}), pt({1.0})), InvalidOracle);
}

TEST(CompareFn, DimensionChecked) {
  auto o = norm_oracle(2);
  EXPECT_THROW(o.compare(pt({1.0}), pt({1.0, 2.0})), InvalidDimension);
}

TEST(CompareFn, TieTolerance) {
  FunctionOracle o([](const Point& x) { return x[0]; }, 1, 0.1);
  EXPECT_EQ(o.compare(pt({0.0}), pt({0.05})), Outcome::kTie);
  EXPECT_EQ(o.compare(pt({0.0}), pt({0.2})), Outcome::kWorse);
}

TEST(MonotoneWrap, LogNormMatchesNorm) {
  auto base = std::make_shared<FunctionOracle>([](const Point& x) { return x.norm(); }, 2);
  auto wrapped = monotone_wrap(base, [](double t) { return std::log1p(t); });
  EXPECT_EQ(wrapped->compare(pt({1, 0}), pt({0, 2})), base->compare(pt({1, 0}), pt({0, 2})));
}

TEST(MonotoneWrap, IdentityIsBitwiseIdentical) {
  auto base = std::make_shared<FunctionOracle>([](const Point& x) { return x.squaredNorm() - x[0]; }, 3);
  auto wrapped = monotone_wrap(base, [](double t) { return t; });
  Rng rng(1);
  std::normal_distribution<double> g;
  for (int i = 0; i < 1000; ++i) {
    const Point a = pt({g(rng), g(rng), g(rng)});
    const Point b = pt({g(rng), g(rng), g(rng)});
    ASSERT_EQ(base->compare(a, b), wrapped->compare(a, b));
  }
}

TEST(MonotoneWrap, CubicOnQuadraticThousandPairs) {
  const Eigen::MatrixXd q = Eigen::Vector3d(1.0, 4.0, 2.0).asDiagonal();
  Instance inst = make_quadratic(q, Point::Zero(3));
  auto wrapped = monotone_wrap(inst.oracle, [](double t) { return t * t * t + t; });
  TranscriptRecorder ra(inst.oracle);
  TranscriptRecorder rb(wrapped);
  Rng rng(5);
  std::normal_distribution<double> g;
  for (int i = 0; i < 1000; ++i) {
    const Point a = pt({g(rng), g(rng), g(rng)});
    const Point b = pt({g(rng), g(rng), g(rng)});
    ra.compare(a, b);
    rb.compare(a, b);
  }
  EXPECT_EQ(ra.transcript(), rb.transcript());
}

TEST(Transcript, RecordsInOrder) {
  auto base = std::make_shared<FunctionOracle>([](const Point& x) { return x[0]; }, 1);
  TranscriptRecorder rec(base);
  rec.compare(pt({0.0}), pt({1.0}));
  rec.compare(pt({1.0}), pt({0.0}));
  rec.compare(pt({2.0}), pt({2.0}));
  const auto t = rec.transcript();
  ASSERT_EQ(t.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(t[i].index, i);
  EXPECT_EQ(t[0].outcome, Outcome::kWorse);
  EXPECT_EQ(t[1].outcome, Outcome::kBetter);
  EXPECT_EQ(t[2].outcome, Outcome::kTie);
  EXPECT_EQ(rec.queries(), 3u);
  EXPECT_EQ(base->queries(), 3u);
}

TEST(Transcript, ReplayIsIdentical) {
  auto run = [] {
    auto base = std::make_shared<FunctionOracle>([](const Point& x) { return x.norm(); }, 2);
    TranscriptRecorder rec(base);
    Rng rng(9);
    std::normal_distribution<double> g;
    for (int i = 0; i < 50; ++i) rec.compare(pt({g(rng), g(rng)}), pt({g(rng), g(rng)}));
    return rec.transcript();
  };
  EXPECT_EQ(run(), run());
}

TEST(Transcript, SphereTripleOraclesGiveIdenticalTranscripts) {
  SphereTriple s = make_sphere_triple(2);
  std::vector<std::vector<TaggedOutcome>> all;
  for (auto& o : s.oracles) {
    TranscriptRecorder rec(o);
    Rng rng(17);
    std::normal_distribution<double> g(0.0, 2.0);
    for (int i = 0; i < 500; ++i) rec.compare(pt({g(rng), g(rng)}), pt({g(rng), g(rng)}));
    all.push_back(rec.transcript());
  }
  EXPECT_EQ(all[0], all[1]);
  EXPECT_EQ(all[0], all[2]);
}
