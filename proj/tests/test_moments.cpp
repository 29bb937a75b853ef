#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "angint/moments.hpp"

using namespace angint;

namespace {

constexpr double kPi = std::numbers::pi;

// mpmath at 30 significant digits.
const std::vector<std::pair<int, double>> kFrozen = {{0, 1.83193118835443803010920702986},
                                                     {2, 0.866850275068084913677155687492},
                                                     {3, 0.635531421917553071048222304683},
                                                     {8, 0.226523691869999854877149637801},
                                                     {12, 0.143610981143575409843100766715},
                                                     {30, 0.0542016018265502698599669652518}};

}  // namespace

TEST(Moments, BaseValues) {
  EXPECT_NEAR(kn_oracle(1), kPi * kPi / 8, 1e-12);
  EXPECT_NEAR(kn_oracle(0), 2.0 * 0.915965594177219015054603514932, 1e-10);
  EXPECT_NEAR(kn_recursion_trace(1).values[1], kPi * kPi / 8, 1e-15);
}

TEST(Moments, OracleMatchesFrozenValues) {
  for (const auto& [n, expected] : kFrozen) {
    const QuadResult r = try_kn_oracle(n);
    EXPECT_TRUE(r.converged) << n;
    EXPECT_NEAR(r.value, expected, 1e-12) << n;
  }
}

TEST(Moments, SecondMomentClosedForm) {
  EXPECT_NEAR(kn_recursive(2), 0.25 + kPi * kPi / 16, 1e-14);
}

TEST(MomentsProperty, OracleIsPositiveAndDecreasing) {
  double prev = kn_oracle(0);
  for (int n = 1; n <= 30; ++n) {
    const double v = kn_oracle(n);
    EXPECT_GT(v, 0.0) << n;
    EXPECT_LT(v, prev) << n;
    prev = v;
  }
}

TEST(MomentsProperty, RecursionAgreesWithOracle) {
  for (int n = 2; n <= 12; ++n) {
    EXPECT_NEAR(kn_recursive(n), kn_oracle(n), 1e-8) << n;
  }
}

TEST(MomentsProperty, RecursionMatchesFrozenValues) {
  for (const auto& [n, expected] : kFrozen) {
    if (n >= 2 && n <= 12) {
      EXPECT_NEAR(kn_recursive(n), expected, 1e-13) << n;
    }
  }
}

TEST(Moments, TableShape) {
  const MomentTable small = moment_table(2);
  ASSERT_EQ(small.rows.size(), 2u);
  EXPECT_EQ(small.rows.front().n, 1);
  EXPECT_EQ(small.k0.n, 0);
  EXPECT_TRUE(small.all_pass());

  const MomentTable t = moment_table(8);
  ASSERT_EQ(t.rows.size(), 8u);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const MomentRow& row = t.rows[i];
    EXPECT_EQ(row.n, static_cast<int>(i) + 1);
    ASSERT_TRUE(row.recursion.has_value());
    ASSERT_TRUE(row.abs_diff.has_value());
    EXPECT_LE(*row.abs_diff, 1e-8);
    EXPECT_EQ(row.verdict, Verdict::pass);
    EXPECT_GT(row.largest_term, 0.0);
  }
  EXPECT_NEAR(t.k0.oracle.value, 1.83193118835443803010920702986, 1e-10);
}

TEST(Moments, TableFlagsFailuresAtTightTolerance) {
  const MomentTable t = moment_table(30, 1e-14);
  EXPECT_FALSE(t.all_pass());
  EXPECT_EQ(t.rows.back().verdict, Verdict::fail);
}

TEST(Moments, RejectsOutOfRangeInput) {
  EXPECT_THROW(moment_table(1), std::invalid_argument);
  EXPECT_THROW(moment_table(31), std::invalid_argument);
  EXPECT_THROW(moment_table(5, 0.0), std::invalid_argument);
  EXPECT_THROW(kn_recursive(1), angint::domain_error);
  EXPECT_THROW(kn_recursion_trace(0), angint::domain_error);
}
