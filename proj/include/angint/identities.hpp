#pragma once

/**
 * @file identities.hpp
 * @brief Registry of the angular-integral identities and the suite runner.
 *
 * Each Identity evaluates its left and right sides independently at one
 * ParamPoint and hands both QuadResults to finalize(). Quadrature that stops
 * short of its tolerance yields an inconclusive record, never a pass.
 */

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "angint/errors.hpp"
#include "angint/quadrature.hpp"
#include "angint/reduction.hpp"
#include "angint/specfun.hpp"
#include "angint/test_functions.hpp"
#include "angint/verification.hpp"

namespace angint {

/// The u-integral of the region form with f = 1:
///   int_{2 sqrt v}^{1+v} du / sqrt((u^2 - 4v)((1+v)^2 - u^2)) = K((1-v)/(1+v)) / (1+v).
inline double kernel_eq15(double v) {
  if (!(v > 0.0 && v <= 1.0)) {
    throw domain_error("kernel_eq15 requires 0 < v <= 1");
  }
  return ellip_k(Modulus::from_complement(std::min(1.0, 2.0 * std::sqrt(v) / (1.0 + v)))) / (1.0 + v);
}

/// Settings shared by every record of a run.
struct VerifyContext {
  ToleranceTable tolerances;
  std::uint64_t seed = 0;
  std::int64_t mc_samples = 10'000'000;
};

struct Identity {
  std::string id;
  /// What the identity states, in words.
  std::string description;
  ParamGrid grid;
  /// Test functions addressed by the integer-valued "fn" axis, when present.
  std::vector<TestFunction> functions;
  std::function<bool(const ParamPoint&)> in_domain;
  std::function<ToleranceClass(const ParamPoint&)> tol_class;
  /// Fills lhs_quad, rhs_quad and optionally note.
  std::function<void(const ParamPoint&, const Identity&, const VerifyContext&, const QuadPolicy&,
                     VerificationRecord&)>
      evaluate;
  /// Fixed remark attached to every record (reading choices, corrected constants).
  std::string note;

  const TestFunction& function_at(const ParamPoint& p) const {
    const double index = p.at("fn");
    if (!(index >= 0.0) || index != std::floor(index) || index >= static_cast<double>(functions.size())) {
      throw std::invalid_argument(id + ": fn index out of range");
    }
    return functions[static_cast<std::size_t>(index)];
  }
};

namespace detail {

inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// Product of a point's coordinates and its distance to 1, given each
/// coordinate's own distance to 1, without forming 1 - prod directly.
inline std::pair<double, double> product_and_complement(std::span<const double> t, std::span<const double> to_one) {
  double prod = 1.0;
  double complement = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    complement += prod * to_one[i];
    prod *= t[i];
  }
  return {prod, complement};
}

inline QuadPolicy record_policy(double tolerance) {
  const double q = std::max(tolerance * 0.02, 2e-13);
  return {q, q, 50, 2'000'000};
}

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

inline ParamGrid grid(std::vector<ParamAxis> axes) { return ParamGrid(std::move(axes)); }

inline std::vector<double> index_axis(std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = static_cast<double>(i);
  }
  return out;
}

inline bool positive_x(const ParamPoint& p) { return p.at("x") > 0.0; }
inline bool unit_open_x(const ParamPoint& p) { return p.at("x") > 0.0 && p.at("x") < 1.0; }

inline auto fixed_class(ToleranceClass c) {
  return [c](const ParamPoint&) { return c; };
}

/// Smooth random polynomial for the change-of-variables check; coefficients in [-1, 1].
inline std::vector<double> random_polynomial(std::uint64_t seed, std::uint64_t stream, int degree) {
  std::vector<double> coeffs(static_cast<std::size_t>(degree + 1));
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    coeffs[i] = 2.0 * counter_uniform(seed ^ 0x5eed5eedULL, stream * 16 + i) - 1.0;
  }
  return coeffs;
}

inline double horner(const std::vector<double>& c, double t) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = acc * t + *it;
  }
  return acc;
}

inline std::string polynomial_name(const std::vector<double>& c) {
  std::string s = "poly[";
  for (std::size_t i = 0; i < c.size(); ++i) {
    s += (i ? "," : "") + format_double(c[i]);
  }
  return s + "]";
}

// t / sqrt(1 - t^2) weighted transforms on [0, 1]; g receives (s, 1 - s).
template <class G>
QuadResult weighted_arcsine(G&& g, const QuadPolicy& policy) {
  return try_integrate_1d(
      [&](double t, double, double to_hi) { return t / std::sqrt(to_hi * (1.0 + t)) * g(t, to_hi); },
      AxisSpec{0.0, 1.0, Transform::inverse_sqrt_endpoint}, policy);
}

inline std::vector<Identity> build_registry() {
  using TC = ToleranceClass;
  std::vector<Identity> reg;
  const std::vector<double> exp_grid = {0.1, 0.5, 1.0, 2.0, 5.0, 10.0};
  const std::vector<double> unit_grid = {0.1, 0.3, 0.5, 0.6, 0.7, 0.9};

  reg.push_back({"EQ1", "int_0^1 t I0(x t) / sqrt(1 - t^2) dt = sinh(x) / x", grid({{"x", exp_grid}}), {}, positive_x,
                 fixed_class(TC::tight),
                 [](const ParamPoint& p, const Identity&, const VerifyContext&, const QuadPolicy& q,
                    VerificationRecord& r) {
                   const double x = p.at("x");
                   r.lhs_quad = weighted_arcsine([&](double t, double) { return bessel_i0(x * t); }, q);
                   r.rhs_quad = exact_value(std::sinh(x) / x);
                 },
                 {}});

  reg.push_back({"EQ3", "int_0^1 t L0(x t) / sqrt(1 - t^2) dt = (cosh(x) - 1) / x", grid({{"x", exp_grid}}), {},
                 positive_x, fixed_class(TC::tight),
                 [](const ParamPoint& p, const Identity&, const VerifyContext&, const QuadPolicy& q,
                    VerificationRecord& r) {
                   const double x = p.at("x");
                   r.lhs_quad = weighted_arcsine([&](double t, double) { return struve_l0(x * t); }, q);
                   const double h = std::sinh(0.5 * x);
                   r.rhs_quad = exact_value(2.0 * h * h / x);
                 },
                 {}});

  reg.push_back({"EQ4", "int_0^1 t [I0 - L0](x t) / sqrt(1 - t^2) dt = (1 - e^-x) / x", grid({{"x", exp_grid}}), {},
                 positive_x, fixed_class(TC::tight),
                 [](const ParamPoint& p, const Identity&, const VerifyContext&, const QuadPolicy& q,
                    VerificationRecord& r) {
                   const double x = p.at("x");
                   r.lhs_quad =
                       weighted_arcsine([&](double t, double) { return bessel_i0_minus_struve_l0(x * t); }, q);
                   r.rhs_quad = exact_value(-std::expm1(-x) / x);
                 },
                 {}});

  reg.push_back({"EQ5", "(pi/2) [I0(x) - L0(x)] = int_0^1 e^(-x t) / sqrt(1 - t^2) dt", grid({{"x", exp_grid}}), {},
                 [](const ParamPoint& p) { return p.at("x") >= 0.0; }, fixed_class(TC::tight),
                 [](const ParamPoint& p, const Identity&, const VerifyContext&, const QuadPolicy& q,
                    VerificationRecord& r) {
                   const double x = p.at("x");
                   r.lhs_quad = exact_value(kHalfPi * bessel_i0_minus_struve_l0(x));
                   r.rhs_quad = try_integrate_1d(
                       [&](double t, double, double to_hi) { return std::exp(-x * t) / std::sqrt(to_hi * (1.0 + t)); },
                       AxisSpec{0.0, 1.0, Transform::inverse_sqrt_endpoint}, q);
                 },
                 {}});

  reg.push_back({"EQ7", "int int sin(p) exp(-x sin(p) sin(t)) dp dt over [0,pi/2]^2 = (pi/2x) (1 - e^-x)",
                 grid({{"x", {0.1, 1.0, 5.0, 10.0}}}), {}, positive_x, fixed_class(TC::standard),
                 [](const ParamPoint& p, const Identity&, const VerifyContext&, const QuadPolicy& q,
                    VerificationRecord& r) {
                   const double x = p.at("x");
                   r.lhs_quad = try_integrate_angular_product(TestFunction::exp_neg(), x, 2, 0, q);
                   r.rhs_quad = exact_value(-kPi / (2.0 * x) * std::expm1(-x));
                 },
                 {}});

  {
    Identity eq9{"EQ9", "int int sin(p) F(x sin(p) sin(t)) dp dt over [0,pi/2]^2 = (pi/2x) int_0^x F(t) dt",
                 grid({{"fn", index_axis(test_function_catalog().size())}, {"x", {0.1, 0.5, 0.9, 1.0, 5.0, 10.0}}}),
                 test_function_catalog(), {}, {},
                 [](const ParamPoint& p, const Identity& self, const VerifyContext&, const QuadPolicy& q,
                    VerificationRecord& r) {
                   const TestFunction& fn = self.function_at(p);
                   const double x = p.at("x");
                   r.lhs_quad = try_integrate_angular_product(fn, x, 2, 0, q);
                   r.rhs_quad = try_evaluate_reduced(reduce({2, x, fn, 0}), q);
                 },
                 {}};
    eq9.in_domain = [fns = eq9.functions](const ParamPoint& p) {
      const auto i = static_cast<std::size_t>(p.at("fn"));
      return i < fns.size() && fns[i].admits_scale(p.at("x"));
    };
    eq9.tol_class = [fns = eq9.functions](const ParamPoint& p) {
      return fns[static_cast<std::size_t>(p.at("fn"))].discontinuous() ? TC::piecewise : TC::standard;
    };
    reg.push_back(std::move(eq9));
  }

  {
    Identity eq11{"EQ11",
                  "int_[0,1]^3 u F(x u v w) / sqrt((1-u^2)(1-v^2)(1-w^2)) = (pi/4) int_0^1 L(u) F(x u) du, "
                  "L(u) = ln((1 + sqrt(1-u^2)) / (1 - sqrt(1-u^2)))",
                  grid({{"fn", index_axis(6)}, {"x", {0.5, 1.0, 2.0}}}),
                  {TestFunction::exp_neg(), TestFunction::power(0.0), TestFunction::power(1.0), TestFunction::power(2.0),
                   TestFunction::rational_one_over_one_plus_t(), TestFunction::cosine()},
                  {}, fixed_class(TC::singular3d),
                  [](const ParamPoint& p, const Identity& self, const VerifyContext&, const QuadPolicy& q,
                     VerificationRecord& r) {
                    const TestFunction& fn = self.function_at(p);
                    const double x = p.at("x");
                    const std::array<AxisSpec, 3> axes = {AxisSpec{0.0, 1.0, Transform::inverse_sqrt_endpoint},
                                                          AxisSpec{0.0, 1.0, Transform::inverse_sqrt_endpoint},
                                                          AxisSpec{0.0, 1.0, Transform::inverse_sqrt_endpoint}};
                    r.lhs_quad = try_integrate_nd(
                        [&](std::span<const double> t, std::span<const double>, std::span<const double> to_hi) {
                          double weight = t[0];
                          for (std::size_t i = 0; i < 3; ++i) {
                            weight /= std::sqrt(to_hi[i] * (1.0 + t[i]));
                          }
                          const auto [prod, complement] = product_and_complement(t, to_hi);
                          return weight * fn.evaluate(x * prod, (1.0 - x) + x * complement);
                        },
                        axes, q);
                    r.rhs_quad = try_evaluate_reduced(reduce({3, x, fn, 0}), q);
                  },
                  {}};
    eq11.in_domain = [fns = eq11.functions](const ParamPoint& p) {
      const auto i = static_cast<std::size_t>(p.at("fn"));
      return i < fns.size() && fns[i].admits_scale(p.at("x"));
    };
    reg.push_back(std::move(eq11));
  }

  reg.push_back(
      {"EQ12_14",
       "int_[0,1]^2 f(x+y) F(x y) / sqrt((1-x^2)(1-y^2)) = 2 int_0^1 dv F(v) int_{2 sqrt v}^{1+v} du f(u) / "
       "sqrt((u^2 - 4v)((1+v)^2 - u^2))",
       grid({{"case", index_axis(13)}}), {}, [](const ParamPoint& p) { return p.at("case") >= 0.0; },
       fixed_class(TC::standard),
       [](const ParamPoint& p, const Identity&, const VerifyContext& ctx, const QuadPolicy& q, VerificationRecord& r) {
         const auto c = static_cast<std::uint64_t>(p.at("case"));
         RealFunction f;
         RealFunction big_f;
         std::string what;
         if (c == 0) {
           f = [](double t) { return t; };
           big_f = [](double t) { return t; };
           what = "f=x F=power:1";
         } else if (c == 1) {
           f = [](double) { return 1.0; };
           big_f = [](double t) { return t * t; };
           what = "f=1 F=power:2";
         } else if (c == 2) {
           f = [](double t) { return t * t; };
           big_f = [](double t) { return std::exp(-t); };
           what = "f=x^2 F=exp_neg";
         } else {
           const auto fc = random_polynomial(ctx.seed, 2 * c, 1 + static_cast<int>(c % 3));
           const auto bc = random_polynomial(ctx.seed, 2 * c + 1, 1 + static_cast<int>((c + 1) % 3));
           f = [fc](double t) { return horner(fc, t); };
           big_f = [bc](double t) { return horner(bc, t); };
           what = "f=" + polynomial_name(fc) + " F=" + polynomial_name(bc);
         }
         const STransformSides sides = s_transform_sides(f, big_f, q);
         r.lhs_quad = sides.square;
         r.rhs_quad = sides.region;
         r.note = what;
       },
       "inner differential of the region form read as du"});

  reg.push_back({"EQ15",
                 "int_{2 sqrt v}^{1+v} du / sqrt((u^2 - 4v)((1+v)^2 - u^2)) = K((1-v)/(1+v)) / (1+v)",
                 grid({{"v", {0.1, 0.25, 0.5, 0.75, 0.9}}}), {},
                 [](const ParamPoint& p) { return p.at("v") > 0.0 && p.at("v") <= 1.0; }, fixed_class(TC::standard),
                 [](const ParamPoint& p, const Identity&, const VerifyContext&, const QuadPolicy& q,
                    VerificationRecord& r) {
                   const double v = p.at("v");
                   const double a = 2.0 * std::sqrt(v);
                   const double b = 1.0 + v;
                   if (a < b) {
                     r.lhs_quad = try_integrate_1d(
                         [&](double u, double from_lo, double to_hi) {
                           return 1.0 / std::sqrt(from_lo * (u + a) * to_hi * (b + u));
                         },
                         AxisSpec{a, b, Transform::inverse_sqrt_endpoint}, q);
                   } else {
                     // v = 1: the interval shrinks to a point and the integral tends to pi/4.
                     r.lhs_quad = exact_value(0.25 * kPi);
                   }
                   r.rhs_quad = exact_value(kernel_eq15(v));
                 },
                 {}});

  {
    Identity eq16{"EQ16",
                  "int_0^1 K(t) F((1-t)/(1+t)) / (1+t) dt = (1/2) int int F(sin(t) sin(p)) dt dp over [0,pi/2]^2",
                  grid({{"fn", index_axis(7)}}),
                  {TestFunction::power(0.0), TestFunction::power(1.0), TestFunction::power(2.0), TestFunction::exp_neg(),
                   TestFunction::rational_one_over_one_plus_t(), TestFunction::cosine(),
                   TestFunction::heaviside_step(0.4)},
                  {}, {},
                  [](const ParamPoint& p, const Identity& self, const VerifyContext&, const QuadPolicy& q,
                     VerificationRecord& r) {
                    const TestFunction& fn = self.function_at(p);
                    std::vector<double> cuts;
                    if (const auto c = fn.jump()) {
                      cuts.push_back((1.0 - *c) / (1.0 + *c));
                    }
                    r.lhs_quad = try_integrate_1d(
                        [&](double t, double, double to_hi) {
                          const double k = ellip_k(Modulus::from_complement(std::min(1.0, std::sqrt(to_hi * (1.0 + t)))));
                          return k * fn(to_hi / (1.0 + t)) / (1.0 + t);
                        },
                        AxisSpec{0.0, 1.0, Transform::log_endpoint}, cuts, q);
                    const QuadResult angular = try_integrate_angular_product(fn, 1.0, 2, std::nullopt, q);
                    r.rhs_quad = {0.5 * angular.value, 0.5 * angular.err_estimate, angular.evaluations,
                                  angular.converged};
                  },
                  {}};
    eq16.in_domain = [](const ParamPoint& p) { return p.at("fn") >= 0.0 && p.at("fn") < 7.0; };
    eq16.tol_class = [fns = eq16.functions](const ParamPoint& p) {
      return fns[static_cast<std::size_t>(p.at("fn"))].discontinuous() ? TC::piecewise : TC::tight;
    };
    reg.push_back(std::move(eq16));
  }

  reg.push_back({"EQ19", "int int dt dp / K((1 - s)/(1 + s)), s = sin(t) sin(p), over [0,pi/2]^2 = 2 ln 2", ParamGrid{},
                 {}, [](const ParamPoint&) { return true; }, fixed_class(TC::standard),
                 [](const ParamPoint&, const Identity&, const VerifyContext&, const QuadPolicy& q,
                    VerificationRecord& r) {
                   const std::array<AxisSpec, 2> axes = {AxisSpec{0.0, kHalfPi, Transform::none},
                                                         AxisSpec{0.0, kHalfPi, Transform::none}};
                   r.lhs_quad = try_integrate_nd(
                       [](std::span<const double> t) {
                         const double s = std::sin(t[0]) * std::sin(t[1]);
                         if (s <= 0.0) {
                           return 0.0;
                         }
                         return 1.0 / ellip_k(Modulus::from_complement(std::min(1.0, 2.0 * std::sqrt(s) / (1.0 + s))));
                       },
                       axes, q);
                   r.rhs_quad = exact_value(2.0 * std::numbers::ln2);
                 },
                 {}});

  reg.push_back({"EQ20", "int_0^{pi/2} K(a sin(t)) dt = K^2(sqrt((1 - sqrt(1 - a^2)) / 2))", grid({{"a", unit_grid}}),
                 {}, [](const ParamPoint& p) { return p.at("a") > 0.0 && p.at("a") < 1.0; }, fixed_class(TC::tight),
                 [](const ParamPoint& p, const Identity&, const VerifyContext&, const QuadPolicy& q,
                    VerificationRecord& r) {
                   const double a = p.at("a");
                   r.lhs_quad = try_integrate_1d([&](double t) { return ellip_k(Modulus(a * std::sin(t))); },
                                                 AxisSpec{0.0, kHalfPi, Transform::none}, q);
                   const double k = a / std::sqrt(2.0 * (1.0 + std::sqrt((1.0 - a) * (1.0 + a))));
                   const double kk = ellip_k(Modulus(k));
                   r.rhs_quad = exact_value(kk * kk);
                 },
                 {}});

  reg.push_back({"EQ21", "int_0^1 K(x t) dt = (pi/2) 3F2(1/2,1/2,1/2; 1,3/2; x^2)", grid({{"x", unit_grid}}), {},
                 unit_open_x, fixed_class(TC::standard),
                 [](const ParamPoint& p, const Identity&, const VerifyContext&, const QuadPolicy& q,
                    VerificationRecord& r) {
                   const double x = p.at("x");
                   r.lhs_quad = try_integrate_1d([&](double t) { return ellip_k(Modulus(x * t)); },
                                                 AxisSpec{0.0, 1.0, Transform::none}, q);
                   r.rhs_quad = exact_value(kHalfPi * hyp3f2_half_series(x));
                 },
                 "prefactor pi/2: at x = 0 the left side is K(0) = pi/2 and the hypergeometric factor is 1"});

  reg.push_back({"EQ22",
                 "int_0^1 u K^2(sqrt((1 - sqrt(1 - x^2 u^2)) / 2)) / sqrt(1 - u^2) du = (pi^2/4) "
                 "3F2(1/2,1/2,1/2; 1,3/2; x^2)",
                 grid({{"x", unit_grid}}), {}, unit_open_x, fixed_class(TC::standard),
                 [](const ParamPoint& p, const Identity&, const VerifyContext&, const QuadPolicy& q,
                    VerificationRecord& r) {
                   const double x = p.at("x");
                   r.lhs_quad = weighted_arcsine(
                       [&](double u, double) {
                         const double xu = x * u;
                         const double k = xu / std::sqrt(2.0 * (1.0 + std::sqrt((1.0 - xu) * (1.0 + xu))));
                         const double kk = ellip_k(Modulus(k));
                         return kk * kk;
                       },
                       q);
                   r.rhs_quad = exact_value(0.25 * kPi * kPi * hyp3f2_half_series(x));
                 },
                 {}});

  reg.push_back({"EQ23", "int_0^{1/sqrt 2} k K^2(k) dk = pi G / 4", ParamGrid{}, {},
                 [](const ParamPoint&) { return true; }, fixed_class(TC::tight),
                 [](const ParamPoint&, const Identity&, const VerifyContext&, const QuadPolicy& q,
                    VerificationRecord& r) {
                   r.lhs_quad = try_integrate_1d(
                       [](double k) {
                         const double kk = ellip_k(Modulus(k));
                         return k * kk * kk;
                       },
                       AxisSpec{0.0, std::numbers::sqrt2 / 2.0, Transform::none}, q);
                   r.rhs_quad = exact_value(0.25 * kPi * catalan_const());
                 },
                 {}});

  reg.push_back(
      {"EQ24",
       "int_[0,1]^3 u du dv dw / sqrt((1-u^2)(1-v^2)(1-w^2)(1-u^2 v^2 w^2)) = pi G; route 0 cubature, 1 log-kernel "
       "reduction, 2 Monte Carlo",
       grid({{"route", {0.0, 1.0, 2.0}}}), {},
       [](const ParamPoint& p) {
         const double route = p.at("route");
         return route == 0.0 || route == 1.0 || route == 2.0;
       },
       [](const ParamPoint& p) {
         const double route = p.at("route");
         return route == 0.0 ? TC::singular3d : route == 1.0 ? TC::tight : TC::statistical;
       },
       [](const ParamPoint& p, const Identity&, const VerifyContext& ctx, const QuadPolicy& q, VerificationRecord& r) {
         const double route = p.at("route");
         const TestFunction fn = TestFunction::inv_sqrt_one_minus_t2();
         if (route == 0.0) {
           const std::array<AxisSpec, 3> axes = {AxisSpec{0.0, 1.0, Transform::inverse_sqrt_endpoint},
                                                 AxisSpec{0.0, 1.0, Transform::inverse_sqrt_endpoint},
                                                 AxisSpec{0.0, 1.0, Transform::inverse_sqrt_endpoint}};
           r.lhs_quad = try_integrate_nd(
               [](std::span<const double> t, std::span<const double>, std::span<const double> to_hi) {
                 double weight = t[0];
                 for (std::size_t i = 0; i < 3; ++i) {
                   weight /= std::sqrt(to_hi[i] * (1.0 + t[i]));
                 }
                 const auto [prod, complement] = product_and_complement(t, to_hi);
                 return weight / std::sqrt(complement * (1.0 + prod));
               },
               axes, q);
         } else if (route == 1.0) {
           r.lhs_quad = try_evaluate_reduced(reduce({3, 1.0, fn, 0}), q);
         } else {
           r.lhs_quad = evaluate_monte_carlo({3, 1.0, fn, 0}, ctx.mc_samples, ctx.seed);
         }
         r.rhs_quad = exact_value(kPi * catalan_const());
       },
       "Monte Carlo samples the angle form, where the variance is finite"});

  reg.push_back(
      {"EQ25",
       "int_[0,pi/2]^3 sin(b) db dp dt / (1 - x sin(b) sin(p) sin(t)) = (pi/4x) [acos^2 x - 2 pi acos x + 3 pi^2/4]; "
       "route 0 cubature, 1 log-kernel reduction, 2 Monte Carlo",
       grid({{"x", {1e-6, 0.3, 0.5, 0.9}}, {"route", {0.0, 1.0, 2.0}}}), {},
       [](const ParamPoint& p) {
         const double route = p.at("route");
         return unit_open_x(p) && (route == 0.0 || route == 1.0 || route == 2.0);
       },
       [](const ParamPoint& p) {
         const double route = p.at("route");
         return route == 0.0 ? TC::singular3d : route == 1.0 ? TC::standard : TC::statistical;
       },
       [](const ParamPoint& p, const Identity&, const VerifyContext& ctx, const QuadPolicy& q, VerificationRecord& r) {
         const double x = p.at("x");
         const double route = p.at("route");
         const TestFunction fn = TestFunction::resolvent();
         if (route == 0.0) {
           r.lhs_quad = try_integrate_angular_product(fn, x, 3, 0, q);
         } else if (route == 1.0) {
           r.lhs_quad = try_evaluate_reduced(reduce({3, x, fn, 0}), q);
         } else {
           r.lhs_quad = evaluate_monte_carlo({3, x, fn, 0}, ctx.mc_samples, ctx.seed);
         }
         r.rhs_quad = exact_value(watson_closed_form(x));
       },
       "closed form evaluated as (pi/4x) asin(x) (pi + asin(x)), algebraically equal and stable as x -> 0"});

  {
    Identity eq26{"EQ26",
                  "int_0^1 K(u) f(u) du = int int f((1 - s)/(1 + s)) / (1 + s) dt dp, s = sin(t) sin(p), over "
                  "[0,pi/2]^2",
                  grid({{"fn", index_axis(6)}}),
                  {TestFunction::power(0.0), TestFunction::power(1.0), TestFunction::power(2.0), TestFunction::exp_neg(),
                   TestFunction::rational_one_over_one_plus_t(), TestFunction::cosine()},
                  [](const ParamPoint& p) { return p.at("fn") >= 0.0 && p.at("fn") < 6.0; },
                  fixed_class(TC::standard),
                  [](const ParamPoint& p, const Identity& self, const VerifyContext&, const QuadPolicy& q,
                     VerificationRecord& r) {
                    const TestFunction& fn = self.function_at(p);
                    r.lhs_quad = try_integrate_1d(
                        [&](double u, double, double to_hi) {
                          return ellip_k(Modulus::from_complement(std::min(1.0, std::sqrt(to_hi * (1.0 + u))))) * fn(u);
                        },
                        AxisSpec{0.0, 1.0, Transform::log_endpoint}, q);
                    const std::array<AxisSpec, 2> axes = {AxisSpec{0.0, kHalfPi, Transform::none},
                                                          AxisSpec{0.0, kHalfPi, Transform::none}};
                    r.rhs_quad = try_integrate_nd(
                        [&](std::span<const double> t) {
                          const double s = std::sin(t[0]) * std::sin(t[1]);
                          return fn((1.0 - s) / (1.0 + s)) / (1.0 + s);
                        },
                        axes, q);
                  },
                  {}};
    reg.push_back(std::move(eq26));
  }

  reg.push_back({"EQ27",
                 "int int dt dp / sqrt(s (1 + s)), s = sin(t) sin(p), over [0,pi/2]^2 = 4 k K(k) K'(k), k = sqrt 2 - 1",
                 ParamGrid{}, {}, [](const ParamPoint&) { return true; }, fixed_class(TC::standard),
                 [](const ParamPoint&, const Identity&, const VerifyContext&, const QuadPolicy& q,
                    VerificationRecord& r) {
                   const std::array<AxisSpec, 2> axes = {AxisSpec{0.0, kHalfPi, Transform::inverse_sqrt_endpoint},
                                                         AxisSpec{0.0, kHalfPi, Transform::inverse_sqrt_endpoint}};
                   r.lhs_quad = try_integrate_nd(
                       [](std::span<const double> t) {
                         const double s = std::sin(t[0]) * std::sin(t[1]);
                         return 1.0 / std::sqrt(s * (1.0 + s));
                       },
                       axes, q);
                   const double k = std::numbers::sqrt2 - 1.0;
                   const Modulus m(k);
                   r.rhs_quad = exact_value(4.0 * k * ellip_k(m) * ellip_k_comp(m));
                 },
                 {}});

  for (auto& identity : reg) {
    if (!identity.in_domain) {
      identity.in_domain = [](const ParamPoint&) { return true; };
    }
  }
  return reg;
}

}  // namespace detail

/// The compiled-in registry, in presentation order.
inline const std::vector<Identity>& identity_registry() {
  static const std::vector<Identity> registry = detail::build_registry();
  return registry;
}

inline const Identity* find_identity(std::string_view id) {
  for (const Identity& identity : identity_registry()) {
    if (identity.id == id) {
      return &identity;
    }
  }
  return nullptr;
}

/// Human-readable point description, with function indices resolved to names.
inline std::string describe_point(const Identity& identity, const ParamPoint& p) {
  std::string out;
  for (const auto& [name, value] : p.coords) {
    if (!out.empty()) {
      out += ' ';
    }
    out += name + '=';
    if (name == "fn" && !identity.functions.empty()) {
      out += identity.function_at(p).name();
    } else {
      out += detail::format_double(value);
    }
  }
  return out;
}

/// Evaluates both sides of one identity at one point. A point outside the
/// identity's domain is a precondition violation and throws domain_error.
inline VerificationRecord evaluate_identity(const Identity& identity, const ParamPoint& point,
                                            const VerifyContext& ctx = {}, std::size_t point_index = 0) {
  if (!identity.in_domain(point)) {
    throw domain_error(identity.id + ": point " + describe_point(identity, point) + " outside the identity's domain");
  }
  VerificationRecord r;
  r.id = identity.id;
  r.point_index = point_index;
  r.point = point;
  r.label = describe_point(identity, point);
  r.tol_class = identity.tol_class(point);
  const QuadPolicy policy = detail::record_policy(ctx.tolerances[r.tol_class]);
  try {
    identity.evaluate(point, identity, ctx, policy, r);
  } catch (const accuracy_error& e) {
    r.lhs_quad.converged = false;
    r.note = e.what();
  }
  std::string note = r.note;
  if (!identity.note.empty()) {
    note = note.empty() ? identity.note : note + "; " + identity.note;
  }
  r.note = note;
  finalize(r, ctx.tolerances);
  return r;
}

inline VerificationRecord evaluate_identity(std::string_view id, const ParamPoint& point,
                                            const VerifyContext& ctx = {}) {
  const Identity* identity = find_identity(id);
  if (!identity) {
    throw std::invalid_argument("unknown identity id '" + std::string(id) + "'");
  }
  return evaluate_identity(*identity, point, ctx);
}

/// Replacement values for one grid axis. An empty `id` applies the override
/// to every selected identity that has the axis.
struct GridOverride {
  std::string id;
  std::string axis;
  std::vector<double> values;
};

struct SuiteConfig {
  std::vector<std::string> ids;
  std::vector<GridOverride> grids;
  VerifyContext context;
  unsigned jobs = 1;
};

enum class SuiteStatus { pass, fail, inconclusive };

inline constexpr std::string_view to_string(SuiteStatus s) {
  switch (s) {
    case SuiteStatus::pass:
      return "pass";
    case SuiteStatus::fail:
      return "fail";
    case SuiteStatus::inconclusive:
      return "inconclusive";
  }
  return "?";
}

struct SuiteSummary {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t inconclusive = 0;
  std::size_t total() const noexcept { return pass + fail + inconclusive; }
};

struct SuiteReport {
  std::vector<VerificationRecord> records;
  SuiteSummary summary;
  SuiteStatus status = SuiteStatus::pass;
};

/// The sampled points of one identity after overrides, restricted to its domain.
inline std::vector<ParamPoint> identity_points(const Identity& identity, const std::vector<GridOverride>& overrides) {
  ParamGrid g = identity.grid;
  for (const GridOverride& o : overrides) {
    if ((o.id.empty() || o.id == identity.id) && g.has_axis(o.axis)) {
      g.set_axis(o.axis, o.values);
    }
  }
  std::vector<ParamPoint> out;
  for (ParamPoint& p : g.points()) {
    if (identity.in_domain(p)) {
      out.push_back(std::move(p));
    }
  }
  return out;
}

/// Validates ids and overrides before anything is computed. Throws
/// std::invalid_argument on an unknown id, an override naming no selected
/// axis, or an identity left with no points inside its domain.
inline std::vector<std::pair<const Identity*, std::vector<ParamPoint>>> plan_suite(const SuiteConfig& config) {
  std::vector<const Identity*> selected;
  for (const std::string& id : config.ids) {
    const Identity* identity = find_identity(id);
    if (!identity) {
      throw std::invalid_argument("unknown identity id '" + id + "'");
    }
    if (std::find(selected.begin(), selected.end(), identity) == selected.end()) {
      selected.push_back(identity);
    }
  }
  // Pointers into the registry vector compare in registry order.
  std::sort(selected.begin(), selected.end(), std::less<const Identity*>());
  for (const GridOverride& o : config.grids) {
    if (o.values.empty()) {
      throw std::invalid_argument("grid override for '" + o.axis + "' has no values");
    }
    const bool used = std::any_of(selected.begin(), selected.end(), [&](const Identity* identity) {
      return (o.id.empty() || o.id == identity->id) && identity->grid.has_axis(o.axis);
    });
    if (!used) {
      throw std::invalid_argument("grid override '" + (o.id.empty() ? "" : o.id + ".") + o.axis +
                                  "' matches no axis of the selected identities");
    }
  }
  std::vector<std::pair<const Identity*, std::vector<ParamPoint>>> plan;
  for (const Identity* identity : selected) {
    auto points = identity_points(*identity, config.grids);
    if (points.empty()) {
      throw std::invalid_argument(identity->id + ": no grid point lies inside the identity's domain");
    }
    plan.emplace_back(identity, std::move(points));
  }
  return plan;
}

/// Runs every (identity, point) record, `jobs` at a time. Records come back
/// in registry order, then point order, whatever the job count.
inline SuiteReport verify_suite(const SuiteConfig& config) {
  const auto plan = plan_suite(config);
  struct Task {
    const Identity* identity;
    const ParamPoint* point;
    std::size_t index;
  };
  std::vector<Task> tasks;
  for (const auto& [identity, points] : plan) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      tasks.push_back({identity, &points[i], i});
    }
  }
  SuiteReport report;
  report.records.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      report.records[i] = evaluate_identity(*tasks[i].identity, *tasks[i].point, config.context, tasks[i].index);
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(config.jobs, static_cast<unsigned>(tasks.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) {
      pool.emplace_back(worker);
    }
  }
  for (const VerificationRecord& r : report.records) {
    switch (r.verdict) {
      case Verdict::pass:
        ++report.summary.pass;
        break;
      case Verdict::fail:
        ++report.summary.fail;
        break;
      case Verdict::inconclusive:
        ++report.summary.inconclusive;
        break;
    }
  }
  report.status = report.summary.fail > 0           ? SuiteStatus::fail
                  : report.summary.inconclusive > 0 ? SuiteStatus::inconclusive
                                                    : SuiteStatus::pass;
  return report;
}

inline std::vector<std::string> all_identity_ids() {
  std::vector<std::string> ids;
  for (const Identity& identity : identity_registry()) {
    ids.push_back(identity.id);
  }
  return ids;
}

}  // namespace angint
