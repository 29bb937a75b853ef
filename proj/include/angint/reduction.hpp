#pragma once

/**
 * @file reduction.hpp
 * @brief Dimension reduction of sin-product angular integrals.
 *
 * A SinProductIntegral of order n is
 *
 *     I_n(x) = int_{[0, pi/2]^n} sin(a_w) F(x sin a_1 ... sin a_n) da,
 *
 * with exactly one sine weight, on axis w. Its reduced forms are
 *
 *     n = 2   (pi / 2x) int_0^x F(t) dt                              flat kernel
 *     n = 3   (pi / 4) int_0^1 L(u) F(x u) du                        log kernel
 *     n = 4   int_0^{pi/2} da (pi / 4) int_0^1 L(u) F(x sin a u) du  log kernel, one free angle
 *
 * where L(u) = ln((1 + sqrt(1 - u^2)) / (1 - sqrt(1 - u^2))) = 2 arccosh(1/u).
 * The n = 4 form is kept as an explicit two-step composition.
 */

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "angint/errors.hpp"
#include "angint/quadrature.hpp"
#include "angint/specfun.hpp"
#include "angint/test_functions.hpp"
#include "angint/verification.hpp"

namespace angint {

struct SinProductIntegral {
  int n = 2;
  double x = 1.0;
  TestFunction fn = TestFunction::power(0.0);
  /// Index of the one axis carrying the sin weight.
  int weighted_axis = 0;
};

enum class KernelKind { flat, log_kernel };

inline constexpr std::string_view to_string(KernelKind k) { return k == KernelKind::flat ? "flat" : "log_kernel"; }

struct ReductionStep {
  std::string rule;
  int dims_before = 0;
  int dims_after = 0;
};

struct ReducedForm {
  int original_dimension = 0;
  int dimension = 0;
  KernelKind kernel = KernelKind::flat;
  double prefactor = 0.0;
  double x = 0.0;
  TestFunction fn = TestFunction::power(0.0);
  std::vector<ReductionStep> steps;
};

inline void validate(const SinProductIntegral& integral) {
  if (integral.n < 2 || integral.n > 4) {
    throw unsupported_error("sin-product reduction is implemented for n in {2, 3, 4}, got n = " +
                            std::to_string(integral.n));
  }
  if (integral.weighted_axis < 0 || integral.weighted_axis >= integral.n) {
    throw std::invalid_argument("weighted axis index out of range");
  }
  if (!integral.fn.admits_scale(integral.x)) {
    throw domain_error("scale x = " + std::to_string(integral.x) + " outside the domain of " + integral.fn.name());
  }
}

/// ln((1 + sqrt(1 - u^2)) / (1 - sqrt(1 - u^2))), written as 2 ln((1 + sqrt(1 - u^2)) / u)
/// so that small u does not divide by a cancelled difference.
inline double log_kernel(double u, double one_minus_u) {
  const double s = std::sqrt(one_minus_u * (1.0 + u));
  return 2.0 * std::log((1.0 + s) / u);
}

inline double log_kernel(double u) { return log_kernel(u, 1.0 - u); }

inline ReducedForm reduce(const SinProductIntegral& integral) {
  validate(integral);
  ReducedForm form;
  form.original_dimension = integral.n;
  form.x = integral.x;
  form.fn = integral.fn;
  const ReductionStep collapse{"collapse the weighted angle pair onto a flat 1-D integral", 2, 1};
  switch (integral.n) {
    case 2:
      form.dimension = 1;
      form.kernel = KernelKind::flat;
      form.prefactor = std::numbers::pi / (2.0 * integral.x);
      form.steps = {collapse};
      break;
    case 3:
      form.dimension = 1;
      form.kernel = KernelKind::log_kernel;
      form.prefactor = std::numbers::pi / 4.0;
      form.steps = {{"collapse the weighted angle pair onto a flat 1-D integral", 3, 2},
                    {"integrate the scale angle by parts into the log kernel", 2, 1}};
      break;
    default:
      form.dimension = 2;
      form.kernel = KernelKind::log_kernel;
      form.prefactor = std::numbers::pi / 4.0;
      form.steps = {{"collapse the weighted angle pair onto a flat 1-D integral", 4, 3},
                    {"integrate the scale angle by parts into the log kernel", 3, 2},
                    {"keep the remaining unweighted angle as an outer integral", 2, 2}};
      break;
  }
  return form;
}

namespace detail {

/// 1 - sin(a) from the distance d = pi/2 - a, without cancellation.
inline double one_minus_sin(double d) {
  const double h = std::sin(0.5 * d);
  return 2.0 * h * h;
}

}  // namespace detail

/// Evaluates a reduced form by quadrature. The returned value includes the prefactor.
inline QuadResult try_evaluate_reduced(const ReducedForm& form, const QuadPolicy& policy) {
  const TestFunction& fn = form.fn;
  const double x = form.x;
  QuadResult r;
  if (form.kernel == KernelKind::flat) {
    const Transform tr = fn.singular_at_one() ? Transform::inverse_sqrt_endpoint : Transform::none;
    std::vector<double> cuts;
    if (const auto c = fn.jump()) {
      cuts.push_back(*c);
    }
    r = try_integrate_1d([&](double t, double, double to_hi) { return fn.evaluate(t, (1.0 - x) + to_hi); },
                         {0.0, x, tr}, cuts, policy);
  } else if (form.dimension == 1) {
    r = try_integrate_1d(
        [&](double u, double, double to_hi) {
          return log_kernel(u, to_hi) * fn.evaluate(x * u, (1.0 - x) + x * to_hi);
        },
        {0.0, 1.0, Transform::inverse_sqrt_endpoint}, policy);
  } else {
    const std::array<AxisSpec, 2> axes = {AxisSpec{0.0, 0.5 * std::numbers::pi, Transform::none},
                                          AxisSpec{0.0, 1.0, Transform::inverse_sqrt_endpoint}};
    r = try_integrate_nd(
        [&](std::span<const double> t, std::span<const double>, std::span<const double> to_hi) {
          const double sa = std::sin(t[0]);
          const double u = t[1];
          const double one_minus = (1.0 - x) + x * (detail::one_minus_sin(to_hi[0]) + sa * to_hi[1]);
          return log_kernel(u, to_hi[1]) * fn.evaluate(x * sa * u, one_minus);
        },
        axes, policy);
  }
  r.value *= form.prefactor;
  r.err_estimate *= std::abs(form.prefactor);
  return r;
}

inline QuadResult evaluate_reduced(const ReducedForm& form, const QuadPolicy& policy = {}) {
  QuadResult r = try_evaluate_reduced(form, policy);
  if (!r.converged) {
    throw accuracy_error(r);
  }
  return r;
}

/// Integrates F(x sin a_1 ... sin a_n) over [0, pi/2]^n, times sin(a_w) when
/// a weighted axis is given. The innermost angle is integrated with the jump
/// of a discontinuous F as a breakpoint, so the outer levels only ever see
/// continuous integrands.
inline QuadResult try_integrate_angular_product(const TestFunction& fn, double x, int n,
                                                std::optional<int> weighted_axis, const QuadPolicy& policy) {
  if (n < 1 || n > 4) {
    throw unsupported_error("angular products are integrated for 1 to 4 angles");
  }
  const double half_pi = 0.5 * std::numbers::pi;
  const std::size_t inner_axis = static_cast<std::size_t>(n - 1);
  QuadPolicy inner_policy = policy;
  for (int level = 0; level < n - 1; ++level) {
    inner_policy.abs_tol /= 3.0;
    inner_policy.rel_tol /= 3.0;
  }

  auto inner = [&](std::span<const double> outer, std::span<const double>,
                   std::span<const double> outer_to_hi) -> QuadResult {
    double prod = 1.0;
    double one_minus_prod = 0.0;
    double weight = 1.0;
    for (std::size_t i = 0; i < outer.size(); ++i) {
      const double s = std::sin(outer[i]);
      one_minus_prod += prod * detail::one_minus_sin(outer_to_hi[i]);
      prod *= s;
      if (weighted_axis && static_cast<std::size_t>(*weighted_axis) == i) {
        weight = s;
      }
    }
    const bool inner_weighted = weighted_axis && static_cast<std::size_t>(*weighted_axis) == inner_axis;
    auto g = [&](double theta, double, double to_hi) {
      const double s = std::sin(theta);
      const double om = one_minus_prod + prod * detail::one_minus_sin(to_hi);
      const double w = inner_weighted ? weight * s : weight;
      return w * fn.evaluate(x * prod * s, (1.0 - x) + x * om);
    };
    std::vector<double> cuts;
    if (const auto c = fn.jump()) {
      const double ratio = *c / (x * prod);
      if (ratio < 1.0) {
        cuts.push_back(std::asin(ratio));
      }
    }
    return try_integrate_1d(g, AxisSpec{0.0, half_pi, Transform::none}, cuts, inner_policy);
  };

  if (n == 1) {
    return inner({}, {}, {});
  }
  std::vector<AxisSpec> axes(inner_axis, AxisSpec{0.0, half_pi, Transform::none});
  return try_integrate_nd(inner, axes, policy);
}

/// The weighted sin-product integrand at one point, given each angle's distance to pi/2.
inline double sin_product_integrand(const SinProductIntegral& integral, std::span<const double> angles,
                                    std::span<const double> to_half_pi) {
  double prod = 1.0;
  double one_minus_prod = 0.0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double s = std::sin(angles[i]);
    one_minus_prod += prod * detail::one_minus_sin(to_half_pi[i]);
    prod *= s;
  }
  const double x = integral.x;
  const double weight = std::sin(angles[static_cast<std::size_t>(integral.weighted_axis)]);
  return weight * integral.fn.evaluate(x * prod, (1.0 - x) + x * one_minus_prod);
}

/// Direct n-D cubature of the original angular integral.
inline QuadResult try_evaluate_naive(const SinProductIntegral& integral, const QuadPolicy& policy) {
  validate(integral);
  return try_integrate_angular_product(integral.fn, integral.x, integral.n, integral.weighted_axis, policy);
}

inline QuadResult evaluate_naive(const SinProductIntegral& integral, const QuadPolicy& policy = {}) {
  QuadResult r = try_evaluate_naive(integral, policy);
  if (!r.converged) {
    throw accuracy_error(r);
  }
  return r;
}

inline QuadResult evaluate_monte_carlo(const SinProductIntegral& integral, std::int64_t samples, std::uint64_t seed,
                                       unsigned threads = 1) {
  validate(integral);
  std::vector<Interval> box(static_cast<std::size_t>(integral.n), Interval{0.0, 0.5 * std::numbers::pi});
  return monte_carlo_nd(
      [&](std::span<const double> t) {
        std::array<double, 4> to_hi{};
        for (std::size_t i = 0; i < t.size(); ++i) {
          to_hi[i] = 0.5 * std::numbers::pi - t[i];
        }
        return sin_product_integrand(integral, t, std::span<const double>(to_hi.data(), t.size()));
      },
      box, samples, seed, threads);
}

/// int_0^{pi/2} sin^q(a) da
inline double wallis(double q) {
  return 0.5 * std::sqrt(std::numbers::pi) * gamma_fn(0.5 * (q + 1.0)) / gamma_fn(0.5 * q + 1.0);
}

/// Known closed forms of sin-product integrals, where one is available.
inline std::optional<double> closed_form(const SinProductIntegral& integral) {
  validate(integral);
  const double x = integral.x;
  const TestFunction& fn = integral.fn;
  const double pi = std::numbers::pi;
  switch (fn.kind()) {
    case TestFunctionKind::power: {
      const double p = fn.parameter();
      return std::pow(x, p) * wallis(p + 1.0) * std::pow(wallis(p), integral.n - 1);
    }
    default:
      break;
  }
  if (integral.n == 2) {
    const double scale = pi / (2.0 * x);
    switch (fn.kind()) {
      case TestFunctionKind::exp_neg:
        return -scale * std::expm1(-x);
      case TestFunctionKind::rational_one_over_one_plus_t:
        return scale * std::log1p(x);
      case TestFunctionKind::cosine:
        return scale * std::sin(x);
      case TestFunctionKind::heaviside_step:
        return scale * std::max(0.0, x - fn.parameter());
      case TestFunctionKind::inv_sqrt_one_minus_t2:
        return scale * std::asin(x);
      case TestFunctionKind::resolvent:
        return -scale * std::log1p(-x);
      default:
        return std::nullopt;
    }
  }
  if (integral.n == 3) {
    if (fn.kind() == TestFunctionKind::inv_sqrt_one_minus_t2 && x == 1.0) {
      return pi * catalan_const();
    }
    if (fn.kind() == TestFunctionKind::resolvent) {
      const double a = std::asin(x);
      return pi / (4.0 * x) * a * (pi + a);
    }
  }
  return std::nullopt;
}

/// Right side of the triple Watson integral
///   int_{[0,pi/2]^3} sin b / (1 - x sin b sin p sin t) = (pi/4x)[acos^2 x - 2 pi acos x + 3 pi^2/4],
/// evaluated as (pi/4x) asin(x) (pi + asin(x)), the same bracket factored so it
/// stays accurate as x -> 0.
inline double watson_closed_form(double x) {
  if (!(x > 0.0 && x < 1.0)) {
    throw domain_error("watson_closed_form requires 0 < x < 1");
  }
  const double a = std::asin(x);
  return std::numbers::pi / (4.0 * x) * a * (std::numbers::pi + a);
}

/// The same closed form with the arccos bracket expanded; cancels badly as x -> 0.
inline double watson_closed_form_expanded(double x) {
  const double pi = std::numbers::pi;
  const double c = std::acos(x);
  return pi / (4.0 * x) * (c * c - 2.0 * pi * c + 0.75 * pi * pi);
}

// ---------------------------------------------------------------------------
// Square-to-region change of variables (x, y) -> (u = x + y, v = x y).

using RealFunction = std::function<double(double)>;

struct STransformSides {
  QuadResult square;
  QuadResult region;
};

/// Evaluates
///   S = int_0^1 int_0^1 f(x + y) F(x y) / sqrt((1 - x^2)(1 - y^2)) dx dy
/// directly on the square, and as
///   2 int_0^1 dv F(v) int_{2 sqrt v}^{1 + v} f(u) du / sqrt((u^2 - 4v)((1 + v)^2 - u^2)).
/// The inner u-integral is taken in the variable phi with
/// u = (a + b)/2 - (b - a)/2 cos(phi), a = 2 sqrt v, b = 1 + v, which absorbs
/// both inverse-square-root endpoints exactly.
inline STransformSides s_transform_sides(const RealFunction& f, const RealFunction& big_f, const QuadPolicy& policy) {
  STransformSides out;
  const std::array<AxisSpec, 2> square_axes = {AxisSpec{0.0, 1.0, Transform::inverse_sqrt_endpoint},
                                               AxisSpec{0.0, 1.0, Transform::inverse_sqrt_endpoint}};
  out.square = try_integrate_nd(
      [&](std::span<const double> p, std::span<const double>, std::span<const double> to_hi) {
        const double x = p[0];
        const double y = p[1];
        return f(x + y) * big_f(x * y) / std::sqrt(to_hi[0] * (1.0 + x) * to_hi[1] * (1.0 + y));
      },
      square_axes, policy);

  const std::array<AxisSpec, 2> region_axes = {AxisSpec{0.0, 1.0, Transform::log_endpoint},
                                               AxisSpec{0.0, std::numbers::pi, Transform::none}};
  out.region = try_integrate_nd(
      [&](std::span<const double> p) {
        const double v = p[0];
        const double phi = p[1];
        const double root = std::sqrt(v);
        const double a = 2.0 * root;
        const double b = 1.0 + v;
        const double half_width = 0.5 * (1.0 - root) * (1.0 - root);
        const double u = 0.5 * (a + b) - half_width * std::cos(phi);
        return 2.0 * big_f(v) * f(u) / std::sqrt((u + a) * (u + b));
      },
      region_axes, policy);
  return out;
}

/// Checks the square/region equivalence for one (f, F) pair; verdict at tolerance `tol`.
inline VerificationRecord verify_s_transform(const RealFunction& f, const RealFunction& big_f, double tol,
                                             std::string label = {}) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("verify_s_transform needs tol > 0");
  }
  const double quad_tol = std::max(tol * 1e-2, 1e-13);
  const STransformSides sides = s_transform_sides(f, big_f, {quad_tol, quad_tol, 50, 2'000'000});
  VerificationRecord r;
  r.id = "EQ12_14";
  r.label = std::move(label);
  r.lhs_quad = sides.square;
  r.rhs_quad = sides.region;
  ToleranceTable table;
  table.standard = tol;
  r.tol_class = ToleranceClass::standard;
  finalize(r, table);
  return r;
}

// ---------------------------------------------------------------------------

struct RouteCost {
  double value = 0.0;
  double abs_error = 0.0;
  std::int64_t evaluations = 0;
  /// Tolerance requested on the attempt that met the target.
  double requested_tol = 0.0;
  bool met_target = false;
  double seconds = 0.0;
};

struct BenchmarkRecord {
  SinProductIntegral integral;
  double target_error = 0.0;
  double reference = 0.0;
  bool reference_is_closed_form = false;
  RouteCost naive;
  RouteCost reduced;
};

/// Tightens the requested tolerance by decades until each route lands within
/// target_error of the reference (closed form when known, otherwise a tight
/// reduced-form evaluation) and records the evaluations that took.
inline BenchmarkRecord benchmark_reduction(const SinProductIntegral& integral, double target_error) {
  validate(integral);
  if (!(target_error > 0.0)) {
    throw std::invalid_argument("benchmark target error must be positive");
  }
  const ReducedForm form = reduce(integral);
  BenchmarkRecord rec;
  rec.integral = integral;
  rec.target_error = target_error;
  if (const auto exact = closed_form(integral)) {
    rec.reference = *exact;
    rec.reference_is_closed_form = true;
  } else {
    rec.reference = try_evaluate_reduced(form, {1e-14, 1e-13, 50, 4'000'000}).value;
  }

  auto measure = [&](auto&& route) {
    RouteCost cost;
    double tol = target_error;
    for (int attempt = 0; attempt < 6; ++attempt, tol *= 0.1) {
      const auto start = std::chrono::steady_clock::now();
      const QuadResult r = route(QuadPolicy{tol, tol, 50, 2'000'000});
      cost.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      cost.value = r.value;
      cost.abs_error = std::abs(r.value - rec.reference);
      cost.evaluations = r.evaluations;
      cost.requested_tol = tol;
      if (cost.abs_error <= target_error) {
        cost.met_target = true;
        break;
      }
    }
    return cost;
  };
  rec.naive = measure([&](const QuadPolicy& p) { return try_evaluate_naive(integral, p); });
  rec.reduced = measure([&](const QuadPolicy& p) { return try_evaluate_reduced(form, p); });
  return rec;
}

}  // namespace angint
