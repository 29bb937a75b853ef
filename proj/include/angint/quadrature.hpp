#pragma once

/**
 * @file quadrature.hpp
 * @brief Singularity-aware numerical integration.
 *
 * Three integrators share one result type:
 *
 *   integrate_1d    global adaptive Gauss-Kronrod (G7/K15) on a transformed
 *                   axis, or level-doubling tanh-sinh for
 *                   Transform::double_exponential
 *   integrate_nd    nested 1-D integration, innermost axis last, for up to
 *                   four axes
 *   monte_carlo_nd  seeded mean-value estimate, reproducible for any
 *                   thread count
 *
 * Endpoint singularities are declared on the axis rather than handled by the
 * integrand. A 1-D integrand may be written either as f(t) or as
 * f(t, t - lo, hi - t); the second form receives both endpoint distances as
 * computed by the substitution, so a factor like 1/sqrt(1 - t) can be
 * evaluated without the cancellation that 1 - t suffers once t has been
 * rounded.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include "angint/errors.hpp"

namespace angint {

struct QuadResult {
  double value = 0.0;
  double err_estimate = 0.0;
  std::int64_t evaluations = 0;
  /// False when the policy tolerance was not met; value is then the best estimate.
  bool converged = true;
};

/// Thrown by the throwing integrators; carries the best estimate reached.
class accuracy_error : public std::runtime_error {
 public:
  explicit accuracy_error(const QuadResult& best)
      : std::runtime_error("quadrature tolerance not reached within the evaluation budget"),
        best_(best) {}

  const QuadResult& best() const noexcept { return best_; }

 private:
  QuadResult best_;
};

enum class Transform {
  none,
  /// t = lo + (hi - lo) sin^2(phi/2), phi in [0, pi]. Absorbs (t - lo)^(-1/2)
  /// and (hi - t)^(-1/2); the arcsine weight 1/sqrt(1 - t^2) on [0, 1] becomes
  /// smooth.
  inverse_sqrt_endpoint,
  /// Quintic smoothstep map whose Jacobian vanishes quadratically at both
  /// ends; tames logarithmic endpoint singularities.
  log_endpoint,
  /// tanh-sinh substitution, integrated by step-halving trapezoid sums.
  double_exponential,
};

struct AxisSpec {
  double lo = 0.0;
  double hi = 1.0;
  Transform transform = Transform::none;
};

struct QuadPolicy {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_depth = 50;
  /// Budget on integrand calls made by one 1-D pass (per nesting level for integrate_nd).
  std::int64_t max_evals = 2'000'000;
};

inline void validate(const AxisSpec& axis) {
  if (!(axis.lo < axis.hi) || !std::isfinite(axis.lo) || !std::isfinite(axis.hi)) {
    throw std::invalid_argument("axis requires finite lo < hi");
  }
}

inline void validate(const QuadPolicy& policy) {
  if (!(policy.abs_tol > 0.0) || !(policy.rel_tol > 0.0) || policy.max_depth <= 0 ||
      policy.max_depth > 60 || policy.max_evals <= 0) {
    throw std::invalid_argument("quadrature policy requires positive tolerances, 0 < max_depth <= 60");
  }
}

namespace detail {

/// A point on an integration axis together with its unrounded endpoint
/// distances and the Jacobian of the axis substitution.
struct AxisPoint {
  double t;
  double from_lo;
  double to_hi;
  double jacobian;
};

/// One integrand value as seen by an enclosing integration level.
struct Sample {
  double value = 0.0;
  double err = 0.0;
  std::int64_t evals = 1;
  bool ok = true;
};

inline AxisPoint map_sine(const AxisSpec& axis, double phi) {
  const double len = axis.hi - axis.lo;
  const double sh = std::sin(0.5 * phi);
  const double ch = std::cos(0.5 * phi);
  const double from_lo = len * sh * sh;
  const double to_hi = len * ch * ch;
  const double t = phi <= 0.5 * std::numbers::pi ? axis.lo + from_lo : axis.hi - to_hi;
  return {t, from_lo, to_hi, len * sh * ch};
}

inline double smoothstep5(double s) { return s * s * s * (10.0 + s * (-15.0 + 6.0 * s)); }

inline AxisPoint map_smoothstep(const AxisSpec& axis, double s) {
  const double len = axis.hi - axis.lo;
  const double c = 1.0 - s;
  const double from_lo = len * smoothstep5(s);
  const double to_hi = len * smoothstep5(c);
  const double t = s <= 0.5 ? axis.lo + from_lo : axis.hi - to_hi;
  return {t, from_lo, to_hi, 30.0 * len * s * s * c * c};
}

inline AxisPoint map_tanh_sinh(const AxisSpec& axis, double s) {
  const double len = axis.hi - axis.lo;
  const double u = 0.5 * std::numbers::pi * std::sinh(s);
  const double near = len / (1.0 + std::exp(2.0 * std::abs(u)));
  const double far = len - near;
  const double cu = std::cosh(u);
  const double jac = 0.25 * std::numbers::pi * len * std::cosh(s) / (cu * cu);
  if (u >= 0.0) {
    return {axis.hi - near, far, near, jac};
  }
  return {axis.lo + near, near, far, jac};
}

inline AxisPoint map_identity(const AxisSpec& axis, double s) {
  return {s, s - axis.lo, axis.hi - s, 1.0};
}

inline std::pair<double, double> transform_range(const AxisSpec& axis) {
  switch (axis.transform) {
    case Transform::inverse_sqrt_endpoint:
      return {0.0, std::numbers::pi};
    case Transform::log_endpoint:
      return {0.0, 1.0};
    case Transform::double_exponential:
      return {-4.0, 4.0};
    case Transform::none:
      break;
  }
  return {axis.lo, axis.hi};
}

inline AxisPoint map_axis(const AxisSpec& axis, double s) {
  switch (axis.transform) {
    case Transform::inverse_sqrt_endpoint:
      return map_sine(axis, s);
    case Transform::log_endpoint:
      return map_smoothstep(axis, s);
    case Transform::double_exponential:
      return map_tanh_sinh(axis, s);
    case Transform::none:
      break;
  }
  return map_identity(axis, s);
}

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1]; the Gauss nodes are
// the odd-indexed Kronrod nodes plus the centre.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double tolerance_for(const QuadPolicy& policy, double value) {
  return std::max(policy.abs_tol, policy.rel_tol * std::abs(value));
}

/// Evaluates the sampler at an axis point. Nodes sitting exactly on an
/// endpoint are dropped. A node whose t rounded onto an endpoint still
/// carries its exact endpoint distance and is kept, unless the integrand is
/// not finite there (a plain integrand evaluated at its singular endpoint).
template <class Sampler>
Sample sample_at(Sampler& sampler, const AxisSpec& axis, double s) {
  const AxisPoint p = map_axis(axis, s);
  if (p.jacobian == 0.0 || p.from_lo <= 0.0 || p.to_hi <= 0.0) {
    return {0.0, 0.0, 0, true};
  }
  Sample x = sampler(p);
  if ((p.t <= axis.lo || p.t >= axis.hi) && !std::isfinite(x.value)) {
    return {0.0, 0.0, x.evals, true};
  }
  x.value *= p.jacobian;
  x.err *= std::abs(p.jacobian);
  return x;
}

template <class Sampler>
QuadResult adaptive_kronrod(Sampler& sampler, const AxisSpec& axis, const QuadPolicy& policy) {
  struct Panel {
    double a = 0.0;
    double b = 0.0;
    double kronrod = 0.0;
    double err = 0.0;
    double propagated = 0.0;
    int depth = 0;
    bool splittable = true;
  };

  std::int64_t nodes = 0;
  std::int64_t evaluations = 0;
  bool inner_ok = true;

  auto eval_panel = [&](double a, double b, int depth) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double kronrod = 0.0;
    double gauss = 0.0;
    double resabs = 0.0;
    double propagated = 0.0;
    for (std::size_t i = 0; i < kKronrodNodes.size(); ++i) {
      const bool centre_node = i + 1 == kKronrodNodes.size();
      const int copies = centre_node ? 1 : 2;
      for (int side = 0; side < copies; ++side) {
        const double s = side == 0 ? centre - half * kKronrodNodes[i] : centre + half * kKronrodNodes[i];
        const Sample x = sample_at(sampler, axis, s);
        ++nodes;
        evaluations += x.evals;
        inner_ok = inner_ok && x.ok;
        kronrod += kKronrodWeights[i] * x.value;
        resabs += kKronrodWeights[i] * std::abs(x.value);
        propagated += kKronrodWeights[i] * x.err;
        if (i % 2 == 1) {
          gauss += kGaussWeights[i / 2] * x.value;
        }
      }
    }
    Panel panel;
    panel.a = a;
    panel.b = b;
    panel.depth = depth;
    panel.kronrod = kronrod * half;
    panel.propagated = propagated * half;
    panel.err = std::abs(kronrod - gauss) * half;
    const double floor = 50.0 * std::numeric_limits<double>::epsilon() * resabs * half;
    if (panel.err <= floor) {
      panel.err = floor;
      panel.splittable = false;
    }
    if (depth >= policy.max_depth) {
      panel.splittable = false;
    }
    return panel;
  };

  const auto [s_lo, s_hi] = transform_range(axis);
  std::vector<Panel> heap;
  std::vector<Panel> frozen;
  const auto worse = [](const Panel& lhs, const Panel& rhs) { return lhs.err < rhs.err; };

  auto totals = [&]() {
    CompensatedSum value;
    double err = 0.0;
    for (const auto* set : {&heap, &frozen}) {
      for (const Panel& p : *set) {
        value.add(p.kronrod);
        err += p.err + p.propagated;
      }
    }
    return std::pair{value.value(), err};
  };

  heap.push_back(eval_panel(s_lo, s_hi, 0));
  double value = heap.front().kronrod;
  double err = heap.front().err + heap.front().propagated;
  if (!heap.front().splittable) {
    frozen.push_back(heap.front());
    heap.clear();
  }

  while (err > tolerance_for(policy, value) && !heap.empty() && nodes < policy.max_evals) {
    std::pop_heap(heap.begin(), heap.end(), worse);
    const Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    for (Panel child : {eval_panel(worst.a, mid, worst.depth + 1), eval_panel(mid, worst.b, worst.depth + 1)}) {
      if (child.splittable) {
        heap.push_back(child);
        std::push_heap(heap.begin(), heap.end(), worse);
      } else {
        frozen.push_back(child);
      }
    }
    std::tie(value, err) = totals();
  }

  // Re-sum in axis order so the result does not depend on heap layout.
  std::vector<Panel> all;
  all.reserve(heap.size() + frozen.size());
  all.insert(all.end(), heap.begin(), heap.end());
  all.insert(all.end(), frozen.begin(), frozen.end());
  std::sort(all.begin(), all.end(), [](const Panel& lhs, const Panel& rhs) { return lhs.a < rhs.a; });
  CompensatedSum total;
  double total_err = 0.0;
  for (const Panel& p : all) {
    total.add(p.kronrod);
    total_err += p.err + p.propagated;
  }
  QuadResult result;
  result.value = total.value();
  result.err_estimate = total_err;
  result.evaluations = evaluations;
  result.converged = inner_ok && total_err <= tolerance_for(policy, result.value);
  return result;
}

template <class Sampler>
QuadResult tanh_sinh(Sampler& sampler, const AxisSpec& axis, const QuadPolicy& policy) {
  const auto [s_lo, s_hi] = transform_range(axis);
  std::int64_t evaluations = 0;
  bool inner_ok = true;
  CompensatedSum sum;
  double err_sum = 0.0;

  auto visit = [&](double s) {
    const Sample x = sample_at(sampler, axis, s);
    evaluations += x.evals;
    inner_ok = inner_ok && x.ok;
    sum.add(x.value);
    err_sum += x.err;
  };

  double step = 1.0;
  for (double s = s_lo; s <= s_hi; s += step) {
    visit(s);
  }
  double estimate = step * sum.value();
  double diff = std::numeric_limits<double>::infinity();
  std::int64_t nodes = static_cast<std::int64_t>(s_hi - s_lo) + 1;
  const int max_level = std::min(policy.max_depth, 16);
  bool converged = false;
  for (int level = 1; level <= max_level; ++level) {
    step *= 0.5;
    for (double s = s_lo + step; s < s_hi; s += 2.0 * step) {
      visit(s);
      ++nodes;
    }
    const double refined = step * sum.value();
    diff = std::abs(refined - estimate);
    estimate = refined;
    if (level >= 3 && diff <= tolerance_for(policy, estimate)) {
      converged = true;
      break;
    }
    if (nodes >= policy.max_evals) {
      break;
    }
  }
  QuadResult result;
  result.value = estimate;
  result.err_estimate = diff + step * err_sum;
  result.evaluations = evaluations;
  result.converged = inner_ok && converged && result.err_estimate <= tolerance_for(policy, estimate);
  return result;
}

template <class Sampler>
QuadResult integrate_axis(Sampler& sampler, const AxisSpec& axis, const QuadPolicy& policy) {
  validate(axis);
  validate(policy);
  if (axis.transform == Transform::double_exponential) {
    return tanh_sinh(sampler, axis, policy);
  }
  return adaptive_kronrod(sampler, axis, policy);
}

template <class F>
concept EndpointAwareIntegrand = std::invocable<F&, double, double, double>;

template <class F>
concept PlainIntegrand = std::invocable<F&, double>;

template <class F>
concept EndpointAwareNdIntegrand =
    std::invocable<F&, std::span<const double>, std::span<const double>, std::span<const double>>;

struct NdPoint {
  std::array<double, 4> t{};
  std::array<double, 4> from_lo{};
  std::array<double, 4> to_hi{};
};

template <class F>
QuadResult nested(F& f, std::span<const AxisSpec> axes, NdPoint& point, std::size_t level,
                  const QuadPolicy& policy) {
  auto sampler = [&](const AxisPoint& p) -> Sample {
    point.t[level] = p.t;
    point.from_lo[level] = p.from_lo;
    point.to_hi[level] = p.to_hi;
    if (level + 1 == axes.size()) {
      const std::size_t n = axes.size();
      auto call = [&]() {
        if constexpr (EndpointAwareNdIntegrand<F>) {
          return f(std::span<const double>(point.t.data(), n), std::span<const double>(point.from_lo.data(), n),
                   std::span<const double>(point.to_hi.data(), n));
        } else {
          return f(std::span<const double>(point.t.data(), n));
        }
      };
      // An integrand may itself be an integral and report its own error.
      if constexpr (std::is_same_v<std::decay_t<decltype(call())>, QuadResult>) {
        const QuadResult r = call();
        return {r.value, r.err_estimate, r.evaluations, r.converged};
      } else {
        return {static_cast<double>(call()), 0.0, 1, true};
      }
    }
    QuadPolicy inner = policy;
    inner.abs_tol /= 3.0;
    inner.rel_tol /= 3.0;
    const QuadResult r = nested(f, axes, point, level + 1, inner);
    return {r.value, r.err_estimate, r.evaluations, r.converged};
  };
  return integrate_axis(sampler, axes[level], policy);
}

inline std::uint64_t splitmix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based uniform on [0, 1): the SplitMix64 stream for `seed`, read at `counter`.
inline double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
  constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  const std::uint64_t bits = splitmix64(splitmix64(seed) + (counter + 1) * kGamma);
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Non-throwing 1-D integration; inspect QuadResult::converged.
template <class F>
  requires detail::PlainIntegrand<F> || detail::EndpointAwareIntegrand<F>
QuadResult try_integrate_1d(F&& f, const AxisSpec& axis, const QuadPolicy& policy = {}) {
  auto sampler = [&](const detail::AxisPoint& p) -> detail::Sample {
    if constexpr (detail::EndpointAwareIntegrand<F>) {
      return {static_cast<double>(f(p.t, p.from_lo, p.to_hi)), 0.0, 1, true};
    } else {
      return {static_cast<double>(f(p.t)), 0.0, 1, true};
    }
  };
  return detail::integrate_axis(sampler, axis, policy);
}

/// Integrates piecewise between interior breakpoints (jump locations), each
/// piece under the axis transform. Endpoint distances passed to an
/// endpoint-aware f stay relative to the full axis.
template <class F>
  requires detail::PlainIntegrand<F> || detail::EndpointAwareIntegrand<F>
QuadResult try_integrate_1d(F&& f, const AxisSpec& axis, std::span<const double> breakpoints,
                            const QuadPolicy& policy = {}) {
  validate(axis);
  std::vector<double> cuts{axis.lo};
  for (double b : breakpoints) {
    if (b > axis.lo && b < axis.hi) {
      cuts.push_back(b);
    }
  }
  std::sort(cuts.begin() + 1, cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(axis.hi);
  const std::size_t pieces = cuts.size() - 1;
  QuadPolicy piece_policy = policy;
  piece_policy.abs_tol /= static_cast<double>(pieces);
  QuadResult total{0.0, 0.0, 0, true};
  for (std::size_t i = 0; i < pieces; ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    const double before = a - axis.lo;
    const double after = axis.hi - b;
    auto sampler = [&](const detail::AxisPoint& p) -> detail::Sample {
      if constexpr (detail::EndpointAwareIntegrand<F>) {
        return {static_cast<double>(f(p.t, before + p.from_lo, p.to_hi + after)), 0.0, 1, true};
      } else {
        return {static_cast<double>(f(p.t)), 0.0, 1, true};
      }
    };
    const QuadResult r = detail::integrate_axis(sampler, AxisSpec{a, b, axis.transform}, piece_policy);
    total.value += r.value;
    total.err_estimate += r.err_estimate;
    total.evaluations += r.evaluations;
    total.converged = total.converged && r.converged;
  }
  return total;
}

/// Integrates f over one axis. Throws accuracy_error if the tolerance
/// max(abs_tol, rel_tol*|I|) is not met within the policy budget.
template <class F>
  requires detail::PlainIntegrand<F> || detail::EndpointAwareIntegrand<F>
QuadResult integrate_1d(F&& f, const AxisSpec& axis, const QuadPolicy& policy = {}) {
  QuadResult r = try_integrate_1d(std::forward<F>(f), axis, policy);
  if (!r.converged) {
    throw accuracy_error(r);
  }
  return r;
}

/// Nested adaptive integration over 1 to 4 axes; axes[0] is the outermost.
/// The integrand receives the point as a span in axis order, optionally
/// followed by spans of the per-axis distances to lo and to hi. Level l runs
/// at tolerance policy/3^l and its error estimates are propagated outward.
template <class F>
  requires std::invocable<F&, std::span<const double>> || detail::EndpointAwareNdIntegrand<F>
QuadResult try_integrate_nd(F&& f, std::span<const AxisSpec> axes, const QuadPolicy& policy = {}) {
  if (axes.empty() || axes.size() > 4) {
    throw unsupported_error("integrate_nd supports 1 to 4 axes; use monte_carlo_nd above that");
  }
  detail::NdPoint point;
  return detail::nested(f, axes, point, 0, policy);
}

template <class F>
  requires std::invocable<F&, std::span<const double>> || detail::EndpointAwareNdIntegrand<F>
QuadResult integrate_nd(F&& f, std::span<const AxisSpec> axes, const QuadPolicy& policy = {}) {
  QuadResult r = try_integrate_nd(std::forward<F>(f), axes, policy);
  if (!r.converged) {
    throw accuracy_error(r);
  }
  return r;
}

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Plain Monte Carlo over a box. Samples are drawn from a counter-based
/// stream and summed in fixed chunks reduced in chunk order, so the result is
/// bit-identical for a given seed regardless of `threads`.
/// err_estimate is one standard error.
template <class F>
  requires std::invocable<const F&, std::span<const double>>
QuadResult monte_carlo_nd(const F& f, std::span<const Interval> box, std::int64_t samples, std::uint64_t seed,
                          unsigned threads = 1) {
  if (box.empty()) {
    throw std::invalid_argument("monte_carlo_nd needs at least one interval");
  }
  if (samples < 10'000) {
    throw std::invalid_argument("monte_carlo_nd needs at least 10000 samples");
  }
  double volume = 1.0;
  for (const Interval& iv : box) {
    if (!(iv.lo < iv.hi)) {
      throw std::invalid_argument("monte_carlo_nd interval requires lo < hi");
    }
    volume *= iv.hi - iv.lo;
  }
  constexpr std::int64_t kChunk = 1 << 16;
  const std::int64_t chunks = (samples + kChunk - 1) / kChunk;
  const std::size_t dim = box.size();
  std::vector<std::pair<double, double>> partial(static_cast<std::size_t>(chunks));

  auto run_chunk = [&](std::int64_t c) {
    std::vector<double> x(dim);
    detail::CompensatedSum sum;
    detail::CompensatedSum sum_sq;
    const std::int64_t end = std::min(samples, (c + 1) * kChunk);
    for (std::int64_t i = c * kChunk; i < end; ++i) {
      for (std::size_t d = 0; d < dim; ++d) {
        const double u = detail::counter_uniform(seed, static_cast<std::uint64_t>(i) * dim + d);
        x[d] = box[d].lo + (box[d].hi - box[d].lo) * u;
      }
      const double y = f(std::span<const double>(x));
      sum.add(y);
      sum_sq.add(y * y);
    }
    partial[static_cast<std::size_t>(c)] = {sum.value(), sum_sq.value()};
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(chunks)));
  if (workers == 1) {
    for (std::int64_t c = 0; c < chunks; ++c) {
      run_chunk(c);
    }
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::int64_t c = w; c < chunks; c += workers) {
          run_chunk(c);
        }
      });
    }
    for (auto& t : pool) {
      t.join();
    }
  }

  detail::CompensatedSum sum;
  detail::CompensatedSum sum_sq;
  for (const auto& [s, s2] : partial) {
    sum.add(s);
    sum_sq.add(s2);
  }
  const double n = static_cast<double>(samples);
  const double mean = sum.value() / n;
  const double variance = std::max(0.0, (sum_sq.value() / n - mean * mean) * n / (n - 1.0));
  QuadResult result;
  result.value = volume * mean;
  result.err_estimate = volume * std::sqrt(variance / n);
  result.evaluations = samples;
  result.converged = true;
  return result;
}

}  // namespace angint
