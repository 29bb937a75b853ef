#pragma once

/**
 * @file specfun.hpp
 * @brief Special functions used by the identity registry.
 *
 * Modified Bessel I0, modified Struve L0, complete elliptic integrals K and
 * K', Gamma on the positive half-line, the 3F2(1/2,1/2,1/2; 1,3/2; x^2)
 * hypergeometric value, and Catalan's constant.
 *
 * Elliptic integrals use the modulus convention throughout:
 *     K(k) = int_0^{pi/2} dtheta / sqrt(1 - k^2 sin^2 theta),
 * so K(1/sqrt 2) is the lemniscatic value. Functions take a Modulus, never
 * the parameter m = k^2.
 *
 * I0 and L0 accept negative arguments by parity (I0 even, L0 odd).
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

#include "angint/errors.hpp"
#include "angint/quadrature.hpp"

namespace angint {

/// Elliptic modulus k in [0, 1] with its complement k' = sqrt(1 - k^2).
/// k = 1 is representable (K'(1) = K(0)) but ellip_k rejects it.
class Modulus {
 public:
  explicit Modulus(double k) : k_(k) {
    if (!(k >= 0.0 && k <= 1.0)) {
      throw domain_error("elliptic modulus must lie in [0, 1], got " + std::to_string(k));
    }
    kc_ = std::sqrt((1.0 - k) * (1.0 + k));
  }

  /// Builds the modulus from its complement, keeping kc exact when k is
  /// within rounding of 1.
  static Modulus from_complement(double kc) {
    if (!(kc >= 0.0 && kc <= 1.0)) {
      throw domain_error("complementary modulus must lie in [0, 1], got " + std::to_string(kc));
    }
    Modulus m(std::sqrt((1.0 - kc) * (1.0 + kc)));
    m.kc_ = kc;
    return m;
  }

  double k() const noexcept { return k_; }
  double complement() const noexcept { return kc_; }

 private:
  double k_;
  double kc_;
};

struct SeriesPolicy {
  /// Stop once |term| <= rel_term_cutoff * |partial sum|.
  double rel_term_cutoff = 1e-16;
  int max_terms = 10'000;
};

inline void validate(const SeriesPolicy& policy) {
  if (!(policy.rel_term_cutoff > 0.0) || policy.max_terms < 1) {
    throw std::invalid_argument("series policy requires cutoff > 0 and max_terms >= 1");
  }
}

/// Above this argument L0 is evaluated through the arcsine-Laplace integral
/// instead of its power series.
inline constexpr double kStruveSeriesLimit = 20.0;

/// Above this |x| hyp3f2_half switches from its series to quadrature.
inline constexpr double kHyp3f2SeriesLimit = 0.95;

namespace detail {

// Series terms are accumulated in long double: the Struve series has terms of
// size ~I0(x) that cancel against I0 in I0 - L0.
inline long double i0_series(long double x, const SeriesPolicy& policy) {
  const long double q = 0.25L * x * x;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int m = 1; m <= policy.max_terms; ++m) {
    term *= q / (static_cast<long double>(m) * m);
    sum += term;
    if (term <= policy.rel_term_cutoff * sum) {
      return sum;
    }
  }
  throw series_error("I0 series did not converge within max_terms");
}

inline long double l0_series(long double x, const SeriesPolicy& policy) {
  if (x == 0.0L) {
    return 0.0L;
  }
  const long double q = 0.25L * x * x;
  // (x/2) / Gamma(3/2)^2 = 2x/pi
  long double term = 2.0L * x / std::numbers::pi_v<long double>;
  long double sum = term;
  for (int m = 0; m < policy.max_terms; ++m) {
    const long double a = m + 1.5L;
    term *= q / (a * a);
    sum += term;
    if (std::abs(term) <= policy.rel_term_cutoff * std::abs(sum)) {
      return sum;
    }
  }
  throw series_error("L0 series did not converge within max_terms");
}

}  // namespace detail

inline double bessel_i0(double x, const SeriesPolicy& policy = {}) {
  validate(policy);
  if (!std::isfinite(x)) {
    throw domain_error("bessel_i0 requires a finite argument");
  }
  const double value = static_cast<double>(detail::i0_series(std::abs(x), policy));
  if (!std::isfinite(value)) {
    throw saturation_error("bessel_i0 overflows double at x = " + std::to_string(x));
  }
  return value;
}

/// int_0^1 exp(-x t) / sqrt(1 - t^2) dt, equal to (pi/2)(I0(x) - L0(x)).
inline double arcsine_laplace(double x, const QuadPolicy& policy = {1e-15, 1e-13, 50, 2'000'000}) {
  auto integrand = [x](double t, double, double to_hi) { return std::exp(-x * t) / std::sqrt(to_hi * (1.0 + t)); };
  return integrate_1d(integrand, {0.0, 1.0, Transform::inverse_sqrt_endpoint}, policy).value;
}

/// Modified Struve function L0: power series for |x| <= 20, otherwise
/// I0(x) - (2/pi) arcsine_laplace(x).
inline double struve_l0(double x, const SeriesPolicy& policy = {}) {
  validate(policy);
  if (!std::isfinite(x)) {
    throw domain_error("struve_l0 requires a finite argument");
  }
  const double ax = std::abs(x);
  double value = 0.0;
  if (ax <= kStruveSeriesLimit) {
    value = static_cast<double>(detail::l0_series(ax, policy));
  } else {
    value = bessel_i0(ax, policy) - 2.0 / std::numbers::pi * arcsine_laplace(ax);
  }
  if (!std::isfinite(value)) {
    throw saturation_error("struve_l0 overflows double at x = " + std::to_string(x));
  }
  return x < 0.0 ? -value : value;
}

/// I0(x) - L0(x) without the cancellation of subtracting two doubles of size ~e^x.
inline double bessel_i0_minus_struve_l0(double x, const SeriesPolicy& policy = {}) {
  validate(policy);
  if (!std::isfinite(x)) {
    throw domain_error("bessel_i0_minus_struve_l0 requires a finite argument");
  }
  if (x < 0.0) {
    return bessel_i0(-x, policy) + struve_l0(-x, policy);
  }
  if (x <= kStruveSeriesLimit) {
    // Both tails must be negligible against the difference, not against I0.
    SeriesPolicy tight = policy;
    tight.rel_term_cutoff = std::min(policy.rel_term_cutoff, 1e-24);
    return static_cast<double>(detail::i0_series(x, tight) - detail::l0_series(x, tight));
  }
  return 2.0 / std::numbers::pi * arcsine_laplace(x);
}

/// K(k) by the arithmetic-geometric mean: K = pi / (2 AGM(1, k')).
inline double ellip_k(const Modulus& m) {
  if (m.complement() <= 0.0) {
    throw domain_error("ellip_k diverges at k = 1");
  }
  double a = 1.0;
  double b = m.complement();
  for (int i = 0; i < 64 && std::abs(a - b) > 2.0 * std::numeric_limits<double>::epsilon() * a; ++i) {
    const double next = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = next;
  }
  return 0.5 * std::numbers::pi / a;
}

/// K'(k) = K(sqrt(1 - k^2)).
inline double ellip_k_comp(const Modulus& m) {
  if (m.k() <= 0.0) {
    throw domain_error("ellip_k_comp diverges at k = 0");
  }
  return ellip_k(Modulus::from_complement(m.k()));
}

/// Gamma on (0, ~171] by the Lanczos approximation (g = 7, nine terms).
/// Arguments below 1 go through Gamma(x) = Gamma(x + 1) / x.
inline double gamma_fn(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw domain_error("gamma_fn requires a finite x > 0");
  }
  static constexpr double kG = 7.0;
  static constexpr std::array<double, 9> kCoeff = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  // Long double keeps the t^(z+1/2) e^-t factor accurate for large x.
  const long double z = x < 1.0 ? x : x - 1.0;
  long double series = kCoeff[0];
  for (std::size_t i = 1; i < kCoeff.size(); ++i) {
    series += kCoeff[i] / (z + static_cast<long double>(i));
  }
  const long double t = z + kG + 0.5L;
  const long double scaled = std::pow(t, z + 0.5L) * std::exp(-t);
  const double value = static_cast<double>(std::sqrt(2.0L * std::numbers::pi_v<long double>) * scaled * series);
  if (!std::isfinite(value)) {
    throw saturation_error("gamma_fn overflows double at x = " + std::to_string(x));
  }
  return x < 1.0 ? value / x : value;
}

/// Gamma(n/2) for integer n >= 1 from Gamma(1/2) = sqrt(pi), Gamma(1) = 1
/// and the functional equation; no approximation error beyond rounding.
inline double gamma_half_integer(int twice_x) {
  if (twice_x < 1) {
    throw domain_error("gamma_half_integer requires n >= 1");
  }
  double value = twice_x % 2 == 0 ? 1.0 : std::sqrt(std::numbers::pi);
  for (int j = twice_x % 2 == 0 ? 2 : 1; j + 2 <= twice_x; j += 2) {
    value *= 0.5 * j;
  }
  return value;
}

/// 3F2(1/2,1/2,1/2; 1,3/2; x^2) by its power series.
inline double hyp3f2_half_series(double x, const SeriesPolicy& policy = {}) {
  validate(policy);
  if (!(std::abs(x) <= 1.0)) {
    throw domain_error("hyp3f2_half requires |x| <= 1");
  }
  const long double x2 = static_cast<long double>(x) * x;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int m = 0; m < policy.max_terms; ++m) {
    const long double a = m + 0.5L;
    term *= a * a * a * x2 / ((m + 1.0L) * (m + 1.5L) * (m + 1.0L));
    sum += term;
    if (term <= policy.rel_term_cutoff * sum) {
      return static_cast<double>(sum);
    }
  }
  throw series_error("3F2 series did not converge within max_terms (use the quadrature path near |x| = 1)");
}

/// Same value through (2/pi) int_0^1 K(|x| t) dt.
inline double hyp3f2_half_quadrature(double x) {
  if (!(std::abs(x) <= 1.0)) {
    throw domain_error("hyp3f2_half requires |x| <= 1");
  }
  const double ax = std::abs(x);
  if (ax == 0.0) {
    return 1.0;
  }
  // On [0, 1] in the variable t the modulus is ax*t; at ax = 1 the
  // complement is built from the endpoint distance to stay exact near t = 1.
  auto integrand = [ax](double t, double, double to_hi) {
    if (ax == 1.0) {
      return ellip_k(Modulus::from_complement(std::min(1.0, std::sqrt(to_hi * (1.0 + t)))));
    }
    return ellip_k(Modulus(ax * t));
  };
  const QuadResult r = integrate_1d(integrand, {0.0, 1.0, Transform::log_endpoint}, {1e-15, 1e-13, 50, 2'000'000});
  return 2.0 / std::numbers::pi * r.value;
}

/// Series for |x| <= 0.95, quadrature fallback above.
inline double hyp3f2_half(double x, const SeriesPolicy& policy = {}) {
  if (!(std::abs(x) <= 1.0)) {
    throw domain_error("hyp3f2_half requires |x| <= 1");
  }
  if (std::abs(x) <= kHyp3f2SeriesLimit) {
    return hyp3f2_half_series(x, policy);
  }
  return hyp3f2_half_quadrature(x);
}

/// Catalan's constant sum_{n>=0} (-1)^n / (2n+1)^2, by Cohen-Rodriguez
/// Villegas-Zagier acceleration of the alternating series.
inline double catalan_const() {
  constexpr int kTerms = 28;
  const long double n = kTerms;
  long double d = std::pow(3.0L + std::sqrt(8.0L), n);
  d = 0.5L * (d + 1.0L / d);
  long double b = -1.0L;
  long double c = -d;
  long double s = 0.0L;
  for (int k = 0; k < kTerms; ++k) {
    c = b - c;
    const long double odd = 2.0L * k + 1.0L;
    s += c / (odd * odd);
    b = (k + n) * (k - n) * b / ((k + 0.5L) * (k + 1.0L));
  }
  return static_cast<double>(s / d);
}

}  // namespace angint
