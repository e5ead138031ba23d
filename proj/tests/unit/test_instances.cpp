#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "prefopt/errors.hpp"
#include "prefopt/instances.hpp"

using namespace prefopt;

namespace {

Point pt(std::initializer_list<double> v) {
  Point out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

// Uniform direction times a uniform radius in [0, rmax).
Point random_point(std::size_t d, double rmax, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, rmax);
  return u(rng) * sample_unit_vector(d, rng).vec();
}

struct Named {
  std::string name;
  Instance inst;
};

std::vector<Named> all_instances() {
  std::vector<Named> out;
  out.push_back({"linear", make_linear(UnitVec(pt({0.6, -0.8, 0.0})), 1.0)});
  out.push_back({"sphere_f1", make_sphere(3, SphereVariant::kNorm)});
  out.push_back({"sphere_f2", make_sphere(3, SphereVariant::kLogNorm)});
  out.push_back({"sphere_f3", make_sphere(3, SphereVariant::kPiecewise)});
  out.push_back({"quadratic", make_quadratic(Eigen::Vector3d(1.0, 4.0, 0.0).asDiagonal(), pt({0.1, 0.0, 0.0}))});
  out.push_back({"dist_box", make_dist_to_box(pt({-0.2, -0.2, -0.2}), pt({0.2, 0.2, 0.2}))});
  out.push_back({"mckinnon", make_mckinnon()});
  out.push_back({"hard", make_hard_instance(4, 1.0, 1000, 3).instance});
  return out;
}

}  // namespace

TEST(Linear, Examples) {
  Instance inst = make_linear(UnitVec::basis(2, 0), 1.0);
  EXPECT_DOUBLE_EQ(inst.truth.delta_ls(pt({0, 0})), 1.0);
  EXPECT_DOUBLE_EQ(inst.truth.dist_opt(pt({0, 0})), 1.0);
  EXPECT_DOUBLE_EQ(inst.truth.delta_ls(pt({-1, 0})), 0.0);
  Instance inst3 = make_linear(UnitVec::basis(3, 1), 2.0);
  EXPECT_EQ(inst3.truth.normal_at(pt({5, 0, 0})).vec(), UnitVec::basis(3, 1).vec());
  EXPECT_EQ(inst3.truth.regularity_lb(pt({0, 0, 0})), std::numeric_limits<double>::infinity());
}

TEST(SphereTriple, Examples) {
  SphereTriple s = make_sphere_triple(2);
  EXPECT_DOUBLE_EQ(s.truth.delta_ls(pt({3, 4})), 5.0);
  EXPECT_NEAR((s.truth.normal_at(pt({3, 4})).vec() - pt({0.6, 0.8})).norm(), 0.0, 1e-15);
  EXPECT_THROW(s.truth.normal_at(pt({0, 0})), UndefinedNormal);
  for (auto& o : s.oracles) {
    EXPECT_EQ(o->compare(pt({1, 0}), pt({1.5, 0})), Outcome::kWorse);
    EXPECT_EQ(o->compare(pt({0.6, 0.8}), pt({0, 1})), Outcome::kTie);
    EXPECT_EQ(o->compare(pt({3, 0}), pt({0, 3})), Outcome::kTie);
  }
}

TEST(SphereTriple, AllThreeAgreeOnRandomPairs) {
  SphereTriple s = make_sphere_triple(2);
  Rng rng(2);
  for (int i = 0; i < 10000; ++i) {
    const Point a = random_point(2, 3.0, rng);
    const Point b = random_point(2, 3.0, rng);
    const Outcome o = s.oracles[0]->compare(a, b);
    ASSERT_EQ(s.oracles[1]->compare(a, b), o);
    ASSERT_EQ(s.oracles[2]->compare(a, b), o);
  }
}

TEST(Quadratic, Examples) {
  Instance q = make_quadratic(Eigen::Vector2d(1.0, 4.0).asDiagonal(), Point::Zero(2));
  EXPECT_DOUBLE_EQ(q.oracle->evaluate(pt({1, 0})), 0.5);
  EXPECT_DOUBLE_EQ(q.truth.delta_ls(pt({1, 0})), 0.5);
  EXPECT_DOUBLE_EQ(q.truth.growth->gamma1, 0.5);
  EXPECT_TRUE(std::isinf(q.truth.growth->gamma2));
  Instance id = make_quadratic(Eigen::Matrix2d::Identity(), Point::Zero(2));
  EXPECT_DOUBLE_EQ(id.truth.delta_ls(pt({0, 3})), 3.0);
  EXPECT_DOUBLE_EQ(id.truth.dist_opt(pt({0, 3})), 3.0);
  EXPECT_THROW(q.truth.normal_at(pt({0, 0})), UndefinedNormal);
}

TEST(Quadratic, RejectsIndefiniteOrAsymmetric) {
  EXPECT_THROW(make_quadratic(Eigen::Vector2d(1.0, -1.0).asDiagonal(), Point::Zero(2)), InvalidInstance);
  Eigen::Matrix2d a;
  a << 1, 2, 0, 1;
  EXPECT_THROW(make_quadratic(a, Point::Zero(2)), InvalidInstance);
  EXPECT_THROW(make_quadratic(Eigen::Matrix2d::Zero(), Point::Zero(2)), InvalidInstance);
}

TEST(Quadratic, SingularQHasAffineOptimalSet) {
  Instance q = make_quadratic(Eigen::Vector2d(2.0, 0.0).asDiagonal(), Point::Zero(2));
  EXPECT_DOUBLE_EQ(q.truth.dist_opt(pt({3, 7})), 3.0);
  EXPECT_EQ(q.truth.nearest_optimum(pt({3, 7})), pt({0, 7}));
  EXPECT_DOUBLE_EQ(q.truth.growth->gamma1, 1.0);
}

TEST(DistBox, Examples) {
  Instance b = make_dist_to_box(pt({-1, -1}), pt({1, 1}));
  EXPECT_DOUBLE_EQ(b.truth.delta_ls(pt({3, 0})), 2.0);
  EXPECT_EQ(b.truth.normal_at(pt({3, 0})).vec(), pt({1, 0}));
  EXPECT_NEAR(b.truth.delta_ls(pt({2, 2})), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR((b.truth.normal_at(pt({2, 2})).vec() - pt({M_SQRT1_2, M_SQRT1_2})).norm(), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(b.truth.delta_ls(pt({0, 0})), 0.0);
  EXPECT_THROW(b.truth.normal_at(pt({0.5, 0.5})), UndefinedNormal);
  EXPECT_THROW(make_dist_to_box(pt({1, 0}), pt({0, 1})), InvalidInstance);
}

TEST(McKinnon, Examples) {
  Instance m = make_mckinnon();
  EXPECT_DOUBLE_EQ(m.oracle->evaluate(pt({0, 0})), 0.0);
  EXPECT_DOUBLE_EQ(m.oracle->evaluate(pt({0, -0.5})), -0.25);
  EXPECT_DOUBLE_EQ(m.truth.dist_opt(pt({0, 0})), 0.5);
  EXPECT_EQ(m.truth.normal_at(pt({1, -0.5})).vec(), pt({1, 0}));
  EXPECT_THROW(m.truth.normal_at(pt({0, -0.5})), UndefinedNormal);
  EXPECT_DOUBLE_EQ(m.truth.growth->gamma1, 1.0 / 360.0);
  EXPECT_TRUE(std::isinf(m.truth.growth->gamma2));
}

// Writing f = a x^2 + (y + 1/2)^2 - 1/4 with a in {6, 360}, the squared distance
// from (0, -1/2) to a point of the level set of value c is c + 1/4 - (a - 1) x^2.
// It is smallest where (y + 1/2) = 0 on the steeper half, giving sqrt((c + 1/4)/360).
TEST(McKinnon, PolarOracleMatchesClosedForm) {
  Instance m = make_mckinnon();
  Rng rng(4);
  for (int i = 0; i < 300; ++i) {
    const Point p = random_point(2, 2.0, rng);
    const double closed = std::sqrt((m.oracle->evaluate(p) + 0.25) / 360.0);
    ASSERT_NEAR(m.truth.delta_ls(p), closed, 1e-9) << p.transpose();
  }
  EXPECT_NEAR(mckinnon_delta_ls_polar(pt({0, 0})), std::sqrt(0.25 / 360.0), 1e-9);
  EXPECT_NEAR(mckinnon_delta_ls_polar(pt({1, 1})), std::sqrt(8.25 / 360.0), 1e-9);
  EXPECT_DOUBLE_EQ(mckinnon_delta_ls_polar(pt({0, -0.5})), 0.0);
}

TEST(HardInstance, SampleSupportAndOrdering) {
  HardInstance h = make_hard_instance(5, 2.0, 1000, 1);
  const auto& z = h.model->samples();
  EXPECT_DOUBLE_EQ(h.model->chi(), 2.0 / (4.0 * std::sqrt(5.0)));
  for (Eigen::Index j = 0; j < z.rows(); ++j) {
    ASSERT_GT(z(j, 4), 0.0);
    ASSERT_LT(z(j, 0), h.model->chi());
    for (Eigen::Index i = 1; i < 5; ++i) ASSERT_LT(z(j, i), z(j, i - 1));
  }
  EXPECT_THROW(make_hard_instance(3, 1.0, 999, 0), InvalidInstance);
}

TEST(HardInstance, ZeroPatternAndPositivity) {
  HardInstance h = make_hard_instance(6, 1.0, 2000, 7);
  Rng rng(8);
  std::normal_distribution<double> g(0.0, 0.3);
  for (int r = 1; r <= 6; ++r) {
    for (int trial = 0; trial < 50; ++trial) {
      Point x = Point::Zero(6);
      for (int i = 0; i < r - 1; ++i) x[i] = g(rng);  // coordinates r..d stay zero (1-indexed)
      const Eigen::VectorXd p = h.model->argmax_frequencies(x);
      ASSERT_NEAR(p.sum(), 1.0, 1e-12);
      ASSERT_GE(p.minCoeff(), 0.0);
      for (int j = r; j < 6; ++j) ASSERT_EQ(p[j], 0.0) << "r=" << r << " j=" << j + 1;
    }
  }
  EXPECT_GT(h.model->value(Point::Zero(6)), 0.0);
}

TEST(HardInstance, ReferencePointValue) {
  HardInstance h = make_hard_instance(4, 1.0, 1000, 2);
  const Point y = h.model->reference_point();
  EXPECT_EQ(y, Point::Constant(4, -0.5));
  EXPECT_LE(h.model->value(y), -0.375);
}

TEST(HardInstance, DeterministicPerSeed) {
  auto a = make_hard_instance(4, 1.0, 1000, 9);
  auto b = make_hard_instance(4, 1.0, 1000, 9);
  EXPECT_EQ(a.model->samples(), b.model->samples());
}

TEST(Properties, Antisymmetry) {
  for (auto& [name, inst] : all_instances()) {
    Rng rng(10);
    for (int i = 0; i < 10000; ++i) {
      const Point a = random_point(inst.dim, 1.5, rng);
      const Point b = random_point(inst.dim, 1.5, rng);
      ASSERT_EQ(inst.oracle->compare(a, b), flip(inst.oracle->compare(b, a))) << name;
    }
  }
}

TEST(Properties, TransitivityOnTriples) {
  for (auto& [name, inst] : all_instances()) {
    Rng rng(11);
    for (int i = 0; i < 3000; ++i) {
      const Point x = random_point(inst.dim, 1.5, rng);
      const Point y = random_point(inst.dim, 1.5, rng);
      const Point z = random_point(inst.dim, 1.5, rng);
      // x <= y and y <= z  =>  x <= z, with a <= b meaning compare(a, b) != kBetter
      if (inst.oracle->compare(x, y) != Outcome::kBetter && inst.oracle->compare(y, z) != Outcome::kBetter) {
        ASSERT_NE(inst.oracle->compare(x, z), Outcome::kBetter) << name;
      }
    }
  }
}

TEST(Properties, MonotoneInvariance) {
  // Points stay inside B(0, 0.9) so every instance value exceeds -1 and log1p is increasing there.
  const std::vector<std::pair<std::string, std::function<double(double)>>> phis = {
      {"log1p", [](double t) { return std::log1p(t); }},
      {"cubic", [](double t) { return t * t * t + t; }},
      {"affine", [](double t) { return 3.0 * t + 1.0; }},
  };
  for (auto& [name, inst] : all_instances()) {
    for (const auto& [pname, phi] : phis) {
      auto wrapped = monotone_wrap(inst.oracle, phi);
      Rng rng(12);
      for (int i = 0; i < 10000; ++i) {
        const Point a = random_point(inst.dim, 0.9, rng);
        const Point b = random_point(inst.dim, 0.9, rng);
        ASSERT_EQ(inst.oracle->compare(a, b), wrapped->compare(a, b)) << name << " / " << pname;
      }
    }
  }
}

TEST(Properties, SublevelNesting) {
  for (auto& [name, inst] : all_instances()) {
    Rng rng(13);
    for (int i = 0; i < 100; ++i) {
      const Point x = random_point(inst.dim, 1.5, rng);
      const Point y = random_point(inst.dim, 1.5, rng);
      if (inst.oracle->compare(x, y) == Outcome::kWorse) continue;  // need y <= x
      for (int j = 0; j < 100; ++j) {
        const Point z = random_point(inst.dim, 1.5, rng);
        if (inst.oracle->compare(y, z) != Outcome::kWorse) {
          ASSERT_NE(inst.oracle->compare(x, z), Outcome::kWorse) << name;
        }
      }
    }
  }
}

TEST(Properties, GapNeverExceedsDistance) {
  for (auto& [name, inst] : all_instances()) {
    if (!inst.truth.delta_ls || !inst.truth.dist_opt) continue;
    const int n = name == "mckinnon" ? 1000 : 10000;
    Rng rng(14);
    for (int i = 0; i < n; ++i) {
      const Point x = random_point(inst.dim, 2.0, rng);
      ASSERT_LE(inst.truth.delta_ls(x), inst.truth.dist_opt(x) + 1e-12) << name;
    }
  }
}

TEST(Properties, GrowthConditionSufficientCheck) {
  // When regularity_lb >= min{gamma1 delta_ls, gamma2}, the growth condition holds at x.
  // Quadratic and sphere instances satisfy the sufficient check everywhere.
  for (auto& [name, inst] : all_instances()) {
    if (!inst.truth.growth || !inst.truth.regularity_lb || !inst.truth.delta_ls) continue;
    if (name != "quadratic" && name.rfind("sphere", 0) != 0 && name != "dist_box") continue;
    Rng rng(15);
    for (int i = 0; i < 2000; ++i) {
      const Point x = random_point(inst.dim, 2.0, rng);
      const double need = std::min(inst.truth.growth->gamma1 * inst.truth.delta_ls(x), inst.truth.growth->gamma2);
      ASSERT_GE(inst.truth.regularity_lb(x), need - 1e-12) << name;
    }
  }
}
