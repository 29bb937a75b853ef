#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "angint/quadrature.hpp"

namespace angint {

enum class ToleranceClass {
  tight,        // 1e-10
  standard,     // 1e-8
  piecewise,    // 1e-6, discontinuous integrands
  singular3d,   // 1e-5, 3-D cubature with corner singularities
  statistical,  // Monte Carlo, |diff| <= 3 standard errors
};

inline constexpr std::string_view to_string(ToleranceClass c) {
  switch (c) {
    case ToleranceClass::tight:
      return "tight";
    case ToleranceClass::standard:
      return "standard";
    case ToleranceClass::piecewise:
      return "piecewise";
    case ToleranceClass::singular3d:
      return "singular3d";
    case ToleranceClass::statistical:
      return "statistical";
  }
  return "?";
}

inline std::optional<ToleranceClass> parse_tolerance_class(std::string_view name) {
  for (ToleranceClass c : {ToleranceClass::tight, ToleranceClass::standard, ToleranceClass::piecewise,
                           ToleranceClass::singular3d, ToleranceClass::statistical}) {
    if (to_string(c) == name) {
      return c;
    }
  }
  return std::nullopt;
}

/// Numeric value behind each class; `statistical` is a multiple of the
/// standard error rather than an absolute tolerance.
struct ToleranceTable {
  double tight = 1e-10;
  double standard = 1e-8;
  double piecewise = 1e-6;
  double singular3d = 1e-5;
  double statistical = 3.0;

  double& operator[](ToleranceClass c) {
    switch (c) {
      case ToleranceClass::tight:
        return tight;
      case ToleranceClass::standard:
        return standard;
      case ToleranceClass::piecewise:
        return piecewise;
      case ToleranceClass::singular3d:
        return singular3d;
      case ToleranceClass::statistical:
        break;
    }
    return statistical;
  }
  double operator[](ToleranceClass c) const { return const_cast<ToleranceTable&>(*this)[c]; }

  friend bool operator==(const ToleranceTable&, const ToleranceTable&) = default;
};

enum class Verdict { pass, fail, inconclusive };

inline constexpr std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

/// One sampled parameter tuple, coordinates in grid-axis order.
struct ParamPoint {
  std::vector<std::pair<std::string, double>> coords;

  double at(std::string_view name) const {
    for (const auto& [key, value] : coords) {
      if (key == name) {
        return value;
      }
    }
    throw std::out_of_range("parameter point has no axis '" + std::string(name) + "'");
  }

  bool has(std::string_view name) const {
    return std::any_of(coords.begin(), coords.end(), [&](const auto& c) { return c.first == name; });
  }
};

struct ParamAxis {
  std::string name;
  std::vector<double> values;
};

/// Cartesian product of named axes, enumerated row-major (last axis fastest).
class ParamGrid {
 public:
  ParamGrid() = default;
  explicit ParamGrid(std::vector<ParamAxis> axes) : axes_(std::move(axes)) {
    for (const auto& axis : axes_) {
      if (axis.values.empty()) {
        throw std::invalid_argument("grid axis '" + axis.name + "' has no values");
      }
    }
  }

  const std::vector<ParamAxis>& axes() const noexcept { return axes_; }

  bool has_axis(std::string_view name) const {
    return std::any_of(axes_.begin(), axes_.end(), [&](const ParamAxis& a) { return a.name == name; });
  }

  void set_axis(const std::string& name, std::vector<double> values) {
    if (values.empty()) {
      throw std::invalid_argument("grid axis '" + name + "' has no values");
    }
    for (auto& axis : axes_) {
      if (axis.name == name) {
        axis.values = std::move(values);
        return;
      }
    }
    throw std::invalid_argument("grid has no axis '" + name + "'");
  }

  std::vector<ParamPoint> points() const {
    std::vector<ParamPoint> out;
    std::vector<std::size_t> index(axes_.size(), 0);
    while (true) {
      ParamPoint p;
      for (std::size_t a = 0; a < axes_.size(); ++a) {
        p.coords.emplace_back(axes_[a].name, axes_[a].values[index[a]]);
      }
      out.push_back(std::move(p));
      std::size_t a = axes_.size();
      while (a > 0) {
        --a;
        if (++index[a] < axes_[a].values.size()) {
          break;
        }
        index[a] = 0;
        if (a == 0) {
          return out;
        }
      }
      if (axes_.empty()) {
        return out;
      }
    }
  }

 private:
  std::vector<ParamAxis> axes_;
};

struct VerificationRecord {
  std::string id;
  std::size_t point_index = 0;
  ParamPoint point;
  /// Human-readable description of the point ("fn=power:2 x=0.5").
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_diff = 0.0;
  double rel_diff = 0.0;
  QuadResult lhs_quad;
  QuadResult rhs_quad;
  ToleranceClass tol_class = ToleranceClass::standard;
  double tolerance = 0.0;
  Verdict verdict = Verdict::inconclusive;
  std::string note;
};

/// Fills diffs and the verdict from lhs/rhs and their quadrature metadata.
/// Either side failing to converge makes the record inconclusive.
inline void finalize(VerificationRecord& r, const ToleranceTable& table) {
  r.lhs = r.lhs_quad.value;
  r.rhs = r.rhs_quad.value;
  r.abs_diff = std::abs(r.lhs - r.rhs);
  r.rel_diff = r.abs_diff / std::max(std::abs(r.rhs), std::numeric_limits<double>::min());
  r.tolerance = table[r.tol_class];
  if (!r.lhs_quad.converged || !r.rhs_quad.converged || !std::isfinite(r.lhs) || !std::isfinite(r.rhs)) {
    r.verdict = Verdict::inconclusive;
    return;
  }
  double bound = 0.0;
  if (r.tol_class == ToleranceClass::statistical) {
    bound = r.tolerance * std::hypot(r.lhs_quad.err_estimate, r.rhs_quad.err_estimate);
  } else {
    bound = r.tolerance * std::max(1.0, std::abs(r.rhs));
  }
  r.verdict = r.abs_diff <= bound ? Verdict::pass : Verdict::fail;
}

inline QuadResult exact_value(double v) { return {v, 0.0, 1, true}; }

}  // namespace angint
