#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "angint/quadrature.hpp"
#include "angint/reduction.hpp"
#include "angint/specfun.hpp"

namespace {

using namespace angint;
constexpr double kPi = std::numbers::pi;
constexpr double kCatalan = 0.915965594177219015054603514932;

TEST(Integrate1d, Linear) {
  const QuadResult r = integrate_1d([](double t) { return t; }, {0.0, 1.0});
  EXPECT_NEAR(r.value, 0.5, 1e-15);
  EXPECT_GE(r.err_estimate, 0.0);
  EXPECT_GE(r.evaluations, 1);
  EXPECT_TRUE(r.converged);
}

TEST(Integrate1d, ArcsineWeightWithSineSubstitution) {
  const QuadResult r = integrate_1d([](double t, double, double to_hi) { return 1.0 / std::sqrt(to_hi * (1.0 + t)); },
                                    {0.0, 1.0, Transform::inverse_sqrt_endpoint});
  EXPECT_NEAR(r.value, kPi / 2.0, 1e-14);
}

TEST(Integrate1d, LogKernelIntegratesToPi) {
  const QuadResult r = integrate_1d([](double u, double, double to_hi) { return log_kernel(u, to_hi); },
                                    {0.0, 1.0, Transform::inverse_sqrt_endpoint});
  EXPECT_NEAR(r.value, kPi, 1e-12);
}

TEST(Integrate1d, BudgetExhaustionCarriesBestEstimate) {
  const auto wild = [](double t) { return std::sin(1.0 / (t + 1e-3)); };
  try {
    integrate_1d(wild, {0.0, 1.0}, {1e-14, 1e-14, 50, 200});
    FAIL() << "expected accuracy_error";
  } catch (const accuracy_error& e) {
    EXPECT_FALSE(e.best().converged);
    EXPECT_GT(e.best().evaluations, 0);
    EXPECT_TRUE(std::isfinite(e.best().value));
  }
  const QuadResult soft = try_integrate_1d(wild, {0.0, 1.0}, {1e-14, 1e-14, 50, 200});
  EXPECT_FALSE(soft.converged);
}

TEST(Integrate1d, RejectsBadAxisAndPolicy) {
  EXPECT_THROW(integrate_1d([](double t) { return t; }, {1.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(integrate_1d([](double t) { return t; }, {0.0, 1.0}, {0.0, 1e-10, 50, 1000}), std::invalid_argument);
  EXPECT_THROW(integrate_1d([](double t) { return t; }, {0.0, 1.0}, {1e-10, 1e-10, 61, 1000}), std::invalid_argument);
}

TEST(Integrate1d, BreakpointsResolveAJump) {
  const double c = 0.4123;
  const std::array<double, 1> cuts = {c};
  const auto step = [c](double t) { return t >= c ? 1.0 : 0.0; };
  const QuadResult r = try_integrate_1d(step, {0.0, 1.0}, cuts);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 1.0 - c, 1e-15);
}

TEST(Integrate1d, BreakpointsKeepEndpointDistancesOfTheFullAxis) {
  const std::array<double, 2> cuts = {0.3, 0.7};
  double worst = 0.0;
  const QuadResult r = try_integrate_1d(
      [&](double t, double from_lo, double to_hi) {
        worst = std::max({worst, std::abs(from_lo - t), std::abs(to_hi - (1.0 - t))});
        return 1.0 / std::sqrt(to_hi * (1.0 + t));
      },
      {0.0, 1.0, Transform::inverse_sqrt_endpoint}, cuts);
  EXPECT_LT(worst, 1e-15);
  EXPECT_NEAR(r.value, kPi / 2.0, 1e-13);
}

struct KnownIntegral {
  const char* name;
  AxisSpec axis;
  std::function<double(double, double, double)> f;
  double truth;
};

std::vector<KnownIntegral> validation_set() {
  const double e = std::numbers::e;
  return {
      {"linear", {0.0, 1.0}, [](double t, double, double) { return t; }, 0.5},
      {"exp", {0.0, 1.0}, [](double t, double, double) { return std::exp(t); }, e - 1.0},
      {"sine", {0.0, kPi}, [](double t, double, double) { return std::sin(t); }, 2.0},
      {"arctan_derivative", {0.0, 1.0}, [](double t, double, double) { return 1.0 / (1.0 + t * t); }, kPi / 4.0},
      {"power10", {0.0, 1.0}, [](double t, double, double) { return std::pow(t, 10); }, 1.0 / 11.0},
      {"cos10", {0.0, 1.0}, [](double t, double, double) { return std::cos(10.0 * t); }, std::sin(10.0) / 10.0},
      {"sqrt", {0.0, 1.0}, [](double t, double, double) { return std::sqrt(t); }, 2.0 / 3.0},
      {"half_disc", {-1.0, 1.0}, [](double t, double, double) { return std::sqrt(1.0 - t * t); }, kPi / 2.0},
      {"arcsine", {0.0, 1.0, Transform::inverse_sqrt_endpoint},
       [](double t, double, double to_hi) { return 1.0 / std::sqrt(to_hi * (1.0 + t)); }, kPi / 2.0},
      {"arcsine_moment", {0.0, 1.0, Transform::inverse_sqrt_endpoint},
       [](double t, double, double to_hi) { return t / std::sqrt(to_hi * (1.0 + t)); }, 1.0},
      {"inv_sqrt_lo", {0.0, 1.0, Transform::inverse_sqrt_endpoint},
       [](double, double from_lo, double) { return 1.0 / std::sqrt(from_lo); }, 2.0},
      {"chebyshev_weight", {0.0, 1.0, Transform::inverse_sqrt_endpoint},
       [](double, double from_lo, double to_hi) { return 1.0 / std::sqrt(from_lo * to_hi); }, kPi},
      {"neg_log", {0.0, 1.0, Transform::log_endpoint}, [](double, double from_lo, double) { return -std::log(from_lo); },
       1.0},
      {"log_log", {0.0, 1.0, Transform::log_endpoint},
       [](double, double from_lo, double to_hi) { return std::log(from_lo) * std::log(to_hi); }, 2.0 - kPi * kPi / 6.0},
      {"log_kernel", {0.0, 1.0, Transform::log_endpoint},
       [](double u, double, double to_hi) { return log_kernel(u, to_hi); }, kPi},
      {"elliptic_k", {0.0, 1.0, Transform::log_endpoint},
       [](double k, double, double to_hi) {
         return ellip_k(Modulus::from_complement(std::min(1.0, std::sqrt(to_hi * (1.0 + k)))));
       },
       2.0 * kCatalan},
      {"log_sine", {0.0, kPi / 2.0, Transform::log_endpoint},
       [](double, double from_lo, double) { return std::log(std::sin(from_lo)); }, -kPi / 2.0 * std::numbers::ln2},
      {"log_over_sqrt", {0.0, 1.0, Transform::double_exponential},
       [](double, double from_lo, double) { return std::log(from_lo) / std::sqrt(from_lo); }, -4.0},
      {"inv_sqrt_hi", {0.0, 1.0, Transform::double_exponential},
       [](double, double, double to_hi) { return 1.0 / std::sqrt(to_hi); }, 2.0},
      {"power_minus_three_quarters", {0.0, 1.0, Transform::double_exponential},
       [](double, double from_lo, double) { return std::pow(from_lo, -0.75); }, 4.0},
  };
}

// Every member lands within the requested tolerance and within ten times its
// own error estimate (plus a few ulps of roundoff).
TEST(QuadratureProperty, ValidationSetMeetsToleranceAndErrorEstimate) {
  const QuadPolicy policy{1e-10, 1e-10, 50, 2'000'000};
  const auto set = validation_set();
  ASSERT_EQ(set.size(), 20u);
  for (const KnownIntegral& k : set) {
    const QuadResult r = integrate_1d(k.f, k.axis, policy);
    const double err = std::abs(r.value - k.truth);
    EXPECT_LE(err, std::max(policy.abs_tol, policy.rel_tol * std::abs(k.truth))) << k.name;
    EXPECT_LE(err, 10.0 * r.err_estimate + 1e-15 * std::max(1.0, std::abs(k.truth))) << k.name;
  }
}

TEST(QuadratureProperty, LinearOnRandomPolynomials) {
  std::mt19937_64 gen(99);
  auto coeff = [&] { return 2.0 * static_cast<double>(gen() >> 11) * 0x1.0p-53 - 1.0; };
  for (int trial = 0; trial < 20; ++trial) {
    std::array<double, 5> p{}, q{};
    for (auto& c : p) c = coeff();
    for (auto& c : q) c = coeff();
    const double a = 3.0 * coeff();
    const double b = 3.0 * coeff();
    auto poly = [](const std::array<double, 5>& c, double t) {
      return c[0] + t * (c[1] + t * (c[2] + t * (c[3] + t * c[4])));
    };
    const AxisSpec axis{-1.0, 2.0};
    const QuadResult fp = integrate_1d([&](double t) { return poly(p, t); }, axis);
    const QuadResult fq = integrate_1d([&](double t) { return poly(q, t); }, axis);
    const QuadResult combo = integrate_1d([&](double t) { return a * poly(p, t) + b * poly(q, t); }, axis);
    const double bound = std::abs(a) * fp.err_estimate + std::abs(b) * fq.err_estimate + combo.err_estimate + 1e-13;
    EXPECT_NEAR(combo.value, a * fp.value + b * fq.value, bound) << trial;
  }
}

TEST(QuadratureProperty, TransformsAgreeWithPlainRule) {
  const std::vector<std::function<double(double)>> smooth = {
      [](double t) { return std::exp(-t) * std::cos(3.0 * t); }, [](double t) { return 1.0 / (2.0 + t); },
      [](double t) { return t * t * t - t; }};
  for (const auto& f : smooth) {
    const double plain = integrate_1d(f, {0.0, 1.0}).value;
    for (Transform tr : {Transform::inverse_sqrt_endpoint, Transform::log_endpoint, Transform::double_exponential}) {
      EXPECT_NEAR(integrate_1d(f, {0.0, 1.0, tr}).value, plain, 1e-8);
    }
  }
}

TEST(QuadratureProperty, RepeatedCallsAreBitIdentical) {
  const auto f = [](std::span<const double> t) { return std::exp(-t[0] * t[1]) / (1.0 + t[0]); };
  const std::array<AxisSpec, 2> axes = {AxisSpec{0.0, 1.0}, AxisSpec{0.0, 2.0}};
  const QuadResult a = integrate_nd(f, axes);
  const QuadResult b = integrate_nd(f, axes);
  EXPECT_EQ(std::bit_cast<std::uint64_t>(a.value), std::bit_cast<std::uint64_t>(b.value));
  EXPECT_EQ(std::bit_cast<std::uint64_t>(a.err_estimate), std::bit_cast<std::uint64_t>(b.err_estimate));
  EXPECT_EQ(a.evaluations, b.evaluations);
}

TEST(IntegrateNd, SineWeightedSquare) {
  const std::array<AxisSpec, 2> axes = {AxisSpec{0.0, kPi / 2.0}, AxisSpec{0.0, kPi / 2.0}};
  EXPECT_NEAR(integrate_nd([](std::span<const double> t) { return std::sin(t[0]); }, axes).value, kPi / 2.0, 1e-13);
}

TEST(IntegrateNd, ExponentialDoubleAngularIntegral) {
  const std::array<AxisSpec, 2> axes = {AxisSpec{0.0, kPi / 2.0}, AxisSpec{0.0, kPi / 2.0}};
  const QuadResult r = integrate_nd(
      [](std::span<const double> t) { return std::sin(t[0]) * std::exp(-std::sin(t[0]) * std::sin(t[1])); }, axes,
      {1e-11, 1e-11, 50, 2'000'000});
  EXPECT_NEAR(r.value, kPi / 2.0 * (1.0 - std::exp(-1.0)), 1e-10);
}

TEST(IntegrateNd, CornerSingularTripleIntegralGivesPiCatalan) {
  const std::array<AxisSpec, 3> axes = {AxisSpec{0.0, 1.0, Transform::inverse_sqrt_endpoint},
                                        AxisSpec{0.0, 1.0, Transform::inverse_sqrt_endpoint},
                                        AxisSpec{0.0, 1.0, Transform::inverse_sqrt_endpoint}};
  const QuadResult r = integrate_nd(
      [](std::span<const double> t, std::span<const double>, std::span<const double> to_hi) {
        double w = t[0];
        double prod = 1.0;
        double one_minus = 0.0;
        for (std::size_t i = 0; i < 3; ++i) {
          w /= std::sqrt(to_hi[i] * (1.0 + t[i]));
          one_minus += prod * to_hi[i];
          prod *= t[i];
        }
        return w / std::sqrt(one_minus * (1.0 + prod));
      },
      axes, {2e-7, 2e-7, 50, 2'000'000});
  EXPECT_NEAR(r.value, kPi * kCatalan, 1e-5);
}

TEST(IntegrateNd, IntegrandMayReportItsOwnError) {
  const std::array<AxisSpec, 1> outer = {AxisSpec{0.0, 1.0}};
  const QuadResult r = integrate_nd(
      [](std::span<const double> t) {
        const double y = t[0];
        return integrate_1d([y](double x) { return x * y; }, {0.0, 1.0});
      },
      outer);
  EXPECT_NEAR(r.value, 0.25, 1e-14);
}

TEST(IntegrateNd, DimensionLimits) {
  const std::vector<AxisSpec> five(5, AxisSpec{0.0, 1.0});
  EXPECT_THROW(integrate_nd([](std::span<const double>) { return 1.0; }, five), unsupported_error);
  EXPECT_THROW(integrate_nd([](std::span<const double>) { return 1.0; }, std::span<const AxisSpec>{}),
               unsupported_error);
}

TEST(MonteCarlo, ConstantIntegrandIsExact) {
  const std::array<Interval, 3> box = {Interval{0, 1}, Interval{0, 1}, Interval{0, 1}};
  const QuadResult r = monte_carlo_nd([](std::span<const double>) { return 1.0; }, box, 100'000, 0);
  EXPECT_EQ(r.value, 1.0);
  EXPECT_EQ(r.err_estimate, 0.0);
  EXPECT_EQ(r.evaluations, 100'000);
}

TEST(MonteCarlo, SeededResultIndependentOfThreadCount) {
  const std::array<Interval, 2> box = {Interval{0, 1}, Interval{-1, 1}};
  const auto f = [](std::span<const double> t) { return std::exp(t[0] * t[1]); };
  const QuadResult one = monte_carlo_nd(f, box, 300'001, 42, 1);
  const QuadResult four = monte_carlo_nd(f, box, 300'001, 42, 4);
  EXPECT_EQ(std::bit_cast<std::uint64_t>(one.value), std::bit_cast<std::uint64_t>(four.value));
  EXPECT_EQ(std::bit_cast<std::uint64_t>(one.err_estimate), std::bit_cast<std::uint64_t>(four.err_estimate));
  const QuadResult other = monte_carlo_nd(f, box, 300'001, 43, 1);
  EXPECT_NE(one.value, other.value);
}

TEST(MonteCarlo, TripleCornerIntegralWithinThreeStandardErrors) {
  const QuadResult r = evaluate_monte_carlo({3, 1.0, TestFunction::inv_sqrt_one_minus_t2(), 0}, 10'000'000, 0);
  EXPECT_LE(std::abs(r.value - kPi * kCatalan), 3.0 * r.err_estimate);
}

TEST(MonteCarlo, WatsonIntegralWithinThreeStandardErrors) {
  const QuadResult r = evaluate_monte_carlo({3, 0.5, TestFunction::resolvent(), 0}, 10'000'000, 0);
  EXPECT_LE(std::abs(r.value - watson_closed_form(0.5)), 3.0 * r.err_estimate);
}

TEST(MonteCarlo, RejectsDegenerateInput) {
  const std::array<Interval, 1> bad = {Interval{1, 1}};
  EXPECT_THROW(monte_carlo_nd([](std::span<const double>) { return 1.0; }, bad, 100'000, 0), std::invalid_argument);
  const std::array<Interval, 1> ok = {Interval{0, 1}};
  EXPECT_THROW(monte_carlo_nd([](std::span<const double>) { return 1.0; }, ok, 9'999, 0), std::invalid_argument);
}

}  // namespace
