#include <gtest/gtest.h>

#include <cmath>

#include "prefopt/bounds.hpp"
#include "prefopt/errors.hpp"
#include "prefopt/estimator.hpp"

using namespace prefopt;

// Expected values below were evaluated independently with arbitrary-precision arithmetic.

TEST(Bounds, FixedDepthAndCountGrid) {
  struct Row {
    std::size_t d;
    double eps;
    int depth;
    std::uint64_t n;
  };
  for (const Row& r : {Row{2, 0.1, 6, 10}, Row{2, 0.05, 7, 11}, Row{8, 0.1, 8, 78}, Row{8, 0.05, 9, 85},
                       Row{16, 0.1, 8, 166}, Row{16, 0.05, 9, 181}}) {
    const int t = depth_for_accuracy(r.d, r.eps, RadiusMode::kFixed);
    EXPECT_EQ(t, r.depth) << r.d << " " << r.eps;
    EXPECT_EQ(bounds::fixed_comparisons_for_accuracy(r.d, r.eps), r.n);
    EXPECT_EQ(bounds::fixed_estimation_comparisons(r.d, t), r.n);
  }
  EXPECT_EQ(bounds::fixed_comparisons_for_accuracy(3, 0.1), 21u);
}

TEST(Bounds, FixedError) {
  EXPECT_NEAR(bounds::fixed_estimation_error(3, 0.01, 1.0, 10), 0.032623024116757, 1e-14);
  EXPECT_DOUBLE_EQ(bounds::fixed_estimation_error(3, 0.01, std::numeric_limits<double>::infinity(), 10),
                   2.0 * std::sqrt(2.0) * M_PI / 2048.0);
}

TEST(Bounds, AdaptiveHighProbabilityCount) {
  EXPECT_DOUBLE_EQ(bounds::adaptive_comparisons_whp(2, 0.02, 1.0, 1.0, 0.1), 68.0);
  EXPECT_DOUBLE_EQ(bounds::adaptive_comparisons_whp(8, 0.02, 100.0, 0.5, 0.1), 218.0);
}

TEST(Bounds, EstimationLowerBound) {
  EXPECT_NEAR(bounds::estimation_lower_bound(8, 0.05), 17.693023757905305, 1e-12);
}

TEST(Bounds, UpperCountExceedsLowerBoundOnGrid) {
  for (std::size_t d = 2; d <= 16; ++d) {
    for (double eps : {0.2, 0.1, 0.05, 0.01}) {
      EXPECT_GT(static_cast<double>(bounds::fixed_comparisons_for_accuracy(d, eps)),
                bounds::estimation_lower_bound(d, eps))
          << d << " " << eps;
    }
  }
}

TEST(Bounds, NddCounts) {
  EXPECT_EQ(bounds::ndd_comparisons(50, 2, 10), 750u);
  EXPECT_DOUBLE_EQ(bounds::ndd_exact_gap(2.0, 100), 0.2);
  EXPECT_NEAR(bounds::ndd_eps_comparisons(2, 2.0, 0.5), 3594.444323430506, 1e-9);
}

TEST(Bounds, AdanddGap) {
  EXPECT_NEAR(bounds::adandd_gap(2.0, 400), 0.7567834479276162, 1e-14);
  EXPECT_NEAR(bounds::adandd_gap(2.0, 100), 1.4422853792204220, 1e-14);
}

TEST(Bounds, AdanddBudgets) {
  EXPECT_DOUBLE_EQ(bounds::adandd_iteration_budget(2, 0.5, 1.0, 1e-4, 0.1, 1), 80.0);
  EXPECT_DOUBLE_EQ(bounds::adandd_total_comparisons(2, 400, 2.0, 1.0, 1e-4, 0.1), 85600.0);
  EXPECT_THROW(bounds::adandd_iteration_budget(2, 0.5, 1.0, 1e-4, 1.0, 1), InvalidParameter);
}

TEST(Bounds, CoinBetting) {
  EXPECT_NEAR(bounds::kt_regret(5.0, 100), 198.5301887931246, 1e-10);
  EXPECT_DOUBLE_EQ(bounds::kt_iterate_radius(5, 2.0), 13.0);
  EXPECT_DOUBLE_EQ(bounds::kt_iterate_radius(1, 2.0), 1.0);
}

TEST(Bounds, HardInstanceAndEllipsoid) {
  EXPECT_DOUBLE_EQ(bounds::hard_instance_gap(1.0, 4), 0.375);
  EXPECT_NEAR(bounds::ellipsoid_iterations(2, 3.0, 1e-3), 96.0764, 1e-4);
}

TEST(Bounds, CeilPlus) {
  EXPECT_EQ(bounds::ceil_plus(-3.2), 0.0);
  EXPECT_EQ(bounds::ceil_plus(2.1), 3.0);
  EXPECT_EQ(bounds::ceil_plus(0.0), 0.0);
}
