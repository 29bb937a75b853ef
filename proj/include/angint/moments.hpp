#pragma once

/**
 * @file moments.hpp
 * @brief Moments K_n = int_0^1 K(k) / (1 + k)^n dk by recursion and by quadrature.
 *
 * The recursion, for n = 1, 2, 3, ...
 *
 *     K_{n+1} = pi / 2^{n+3} [Gamma^2((n+1)/2) / Gamma^2((n+2)/2) - (-1)^n pi]
 *               - sum_{k=1}^{n-1} (-1)^k C(n, k) 2^{-k} K_{n+1-k},
 *
 * is implemented exactly as stated and checked row by row against the oracle.
 * A disagreement is reported, never patched.
 */

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "angint/errors.hpp"
#include "angint/quadrature.hpp"
#include "angint/specfun.hpp"
#include "angint/verification.hpp"

namespace angint {

inline constexpr QuadPolicy kMomentOraclePolicy{1e-13, 1e-12, 50, 2'000'000};

/// int_0^1 K(k) (1 + k)^-n dk by quadrature, with the logarithmic endpoint at k = 1 smoothed.
inline QuadResult try_kn_oracle(int n, const QuadPolicy& policy = kMomentOraclePolicy) {
  if (n < 0) {
    throw domain_error("moment index n must be >= 0");
  }
  return try_integrate_1d(
      [n](double k, double, double to_hi) {
        const double kc = std::min(1.0, std::sqrt(to_hi * (1.0 + k)));
        return ellip_k(Modulus::from_complement(kc)) * std::pow(1.0 + k, -n);
      },
      AxisSpec{0.0, 1.0, Transform::log_endpoint}, policy);
}

inline double kn_oracle(int n, const QuadPolicy& policy = kMomentOraclePolicy) {
  const QuadResult r = try_kn_oracle(n, policy);
  if (!r.converged) {
    throw accuracy_error(r);
  }
  return r.value;
}

/// Recursion values K_1..K_{n_max}, plus the largest magnitude among the
/// terms combined for each (a cancellation indicator). K_1 = pi^2/8 is the base.
struct RecursionTrace {
  std::vector<double> values;
  std::vector<double> largest_term;
};

inline RecursionTrace kn_recursion_trace(int n_max) {
  if (n_max < 1) {
    throw domain_error("recursion needs n_max >= 1");
  }
  const double pi = std::numbers::pi;
  RecursionTrace trace;
  trace.values.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  trace.largest_term.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  trace.values[1] = pi * pi / 8.0;
  trace.largest_term[1] = trace.values[1];
  for (int n = 1; n + 1 <= n_max; ++n) {
    const double ratio = gamma_half_integer(n + 1) / gamma_half_integer(n + 2);
    const double sign_n = n % 2 == 0 ? 1.0 : -1.0;
    const double head = pi / std::ldexp(1.0, n + 3) * (ratio * ratio - sign_n * pi);
    double largest = std::abs(head);
    double sum = 0.0;
    double binom = 1.0;
    for (int k = 1; k <= n - 1; ++k) {
      binom = binom * static_cast<double>(n - k + 1) / static_cast<double>(k);
      const double sign_k = k % 2 == 0 ? 1.0 : -1.0;
      const double term = sign_k * binom * std::ldexp(1.0, -k) * trace.values[static_cast<std::size_t>(n + 1 - k)];
      largest = std::max(largest, std::abs(term));
      sum += term;
    }
    trace.values[static_cast<std::size_t>(n) + 1] = head - sum;
    trace.largest_term[static_cast<std::size_t>(n) + 1] = largest;
  }
  return trace;
}

/// K_n from the recursion, n >= 2.
inline double kn_recursive(int n) {
  if (n < 2) {
    throw domain_error("kn_recursive needs n >= 2; K_0 and K_1 are base constants");
  }
  return kn_recursion_trace(n).values[static_cast<std::size_t>(n)];
}

struct MomentRow {
  int n = 0;
  /// Absent where the recursion does not apply.
  std::optional<double> recursion;
  QuadResult oracle;
  std::optional<double> abs_diff;
  double largest_term = 0.0;
  Verdict verdict = Verdict::inconclusive;
};

struct MomentTable {
  double tolerance = 1e-8;
  /// K_0, oracle only.
  MomentRow k0;
  /// Rows n = 1 .. n_max.
  std::vector<MomentRow> rows;

  bool all_pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const MomentRow& r) { return r.verdict == Verdict::pass; });
  }
};

inline constexpr int kMomentTableMaxN = 30;

/// Recursion against oracle for n = 1..n_max. Each row passes when
/// |recursion - oracle| <= tolerance; a non-converged oracle leaves the row
/// inconclusive.
inline MomentTable moment_table(int n_max, double tolerance = 1e-8) {
  if (n_max < 2 || n_max > kMomentTableMaxN) {
    throw std::invalid_argument("moment_table needs 2 <= n_max <= 30");
  }
  if (!(tolerance > 0.0)) {
    throw std::invalid_argument("moment_table tolerance must be positive");
  }
  MomentTable table;
  table.tolerance = tolerance;
  table.k0.n = 0;
  table.k0.oracle = try_kn_oracle(0);
  table.k0.largest_term = std::abs(table.k0.oracle.value);
  table.k0.verdict = table.k0.oracle.converged ? Verdict::pass : Verdict::inconclusive;

  const RecursionTrace trace = kn_recursion_trace(n_max);
  for (int n = 1; n <= n_max; ++n) {
    MomentRow row;
    row.n = n;
    row.recursion = trace.values[static_cast<std::size_t>(n)];
    row.largest_term = trace.largest_term[static_cast<std::size_t>(n)];
    row.oracle = try_kn_oracle(n);
    row.abs_diff = std::abs(*row.recursion - row.oracle.value);
    if (!row.oracle.converged || !std::isfinite(*row.recursion)) {
      row.verdict = Verdict::inconclusive;
    } else {
      row.verdict = *row.abs_diff <= tolerance ? Verdict::pass : Verdict::fail;
    }
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace angint
