#pragma once

// Command-line front end. Everything lives here rather than in main() so the
// tests can drive the exact same code path in-process.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "angint/identities.hpp"
#include "angint/moments.hpp"
#include "angint/reduction.hpp"

namespace angint::cli {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kVersion = "1.0.0";

enum ExitCode : int { kExitOk = 0, kExitFail = 1, kExitInconclusive = 2, kExitUsage = 64 };

enum class Format { json, csv, text };

inline std::string_view to_string(Format f) {
  switch (f) {
    case Format::json:
      return "json";
    case Format::csv:
      return "csv";
    case Format::text:
      return "text";
  }
  return "?";
}

class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::vector<std::string> ids;
  bool all = false;
  std::vector<GridOverride> grids;
  ToleranceTable tolerances;
  Format format = Format::json;
  std::uint64_t seed = 0;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::int64_t mc_samples = 10'000'000;
  std::string out;
  bool timing = false;
};

inline std::string fmt(double v) {
  if (!std::isfinite(v)) {
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  }
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw usage_error("invalid number '" + std::string(text) + "' for " + std::string(what));
  }
  return value;
}

inline Format parse_format(std::string_view name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  if (name == "text") return Format::text;
  throw usage_error("unknown format '" + std::string(name) + "' (json, csv, text)");
}

/// "axis=v1,v2" or "ID.axis=v1,v2".
inline GridOverride parse_grid(std::string_view spec) {
  const auto eq = spec.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw usage_error("grid override must look like axis=v1,v2,... (got '" + std::string(spec) + "')");
  }
  GridOverride g;
  std::string_view key = spec.substr(0, eq);
  if (const auto dot = key.find('.'); dot != std::string_view::npos) {
    g.id = std::string(key.substr(0, dot));
    key = key.substr(dot + 1);
  }
  g.axis = std::string(key);
  std::string_view rest = spec.substr(eq + 1);
  while (true) {
    const auto comma = rest.find(',');
    g.values.push_back(parse_double(rest.substr(0, comma), "grid axis " + g.axis));
    if (comma == std::string_view::npos) {
      break;
    }
    rest = rest.substr(comma + 1);
  }
  return g;
}

inline void apply_tolerance(ToleranceTable& table, std::string_view spec) {
  const auto eq = spec.find('=');
  if (eq == std::string_view::npos) {
    throw usage_error("tolerance override must look like class=value (got '" + std::string(spec) + "')");
  }
  const auto cls = parse_tolerance_class(spec.substr(0, eq));
  if (!cls) {
    throw usage_error("unknown tolerance class '" + std::string(spec.substr(0, eq)) + "'");
  }
  const double value = parse_double(spec.substr(eq + 1), "tolerance");
  if (!(value > 0.0)) {
    throw usage_error("tolerance must be positive");
  }
  table[*cls] = value;
}

// ---------------------------------------------------------------------------
// Rendering

inline Json quad_json(const QuadResult& q) {
  return {{"value", q.value}, {"err_estimate", q.err_estimate}, {"evaluations", q.evaluations},
          {"converged", q.converged}};
}

inline Json tolerances_json(const ToleranceTable& t) {
  return {{"tight", t.tight},
          {"standard", t.standard},
          {"piecewise", t.piecewise},
          {"singular3d", t.singular3d},
          {"statistical", t.statistical}};
}

inline Json config_json(const RunConfig& c, const std::vector<std::string>& ids) {
  Json grids = Json::array();
  for (const GridOverride& g : c.grids) {
    grids.push_back({{"id", g.id}, {"axis", g.axis}, {"values", g.values}});
  }
  // jobs is left out: the report must not depend on it.
  return {{"ids", ids},
          {"grids", grids},
          {"tolerances", tolerances_json(c.tolerances)},
          {"format", std::string(to_string(c.format))},
          {"seed", c.seed},
          {"mc_samples", c.mc_samples}};
}

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) {
    return std::string(s);
  }
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') {
      out += '"';
    }
    out += ch;
  }
  return out + "\"";
}

inline std::string render_suite(const SuiteReport& report, const RunConfig& config,
                                const std::vector<std::string>& ids, std::optional<double> seconds) {
  std::ostringstream os;
  switch (config.format) {
    case Format::json: {
      Json doc;
      doc["version"] = std::string(kVersion);
      doc["config"] = config_json(config, ids);
      Json records = Json::array();
      for (const VerificationRecord& r : report.records) {
        Json point = Json::object();
        for (const auto& [name, value] : r.point.coords) {
          point[name] = value;
        }
        records.push_back({{"id", r.id},
                           {"point_index", r.point_index},
                           {"point", point},
                           {"label", r.label},
                           {"lhs", r.lhs},
                           {"rhs", r.rhs},
                           {"abs_diff", r.abs_diff},
                           {"rel_diff", r.rel_diff},
                           {"tol_class", std::string(to_string(r.tol_class))},
                           {"tolerance", r.tolerance},
                           {"verdict", std::string(to_string(r.verdict))},
                           {"lhs_quad", quad_json(r.lhs_quad)},
                           {"rhs_quad", quad_json(r.rhs_quad)},
                           {"note", r.note}});
      }
      doc["records"] = std::move(records);
      doc["summary"] = {{"pass", report.summary.pass},
                        {"fail", report.summary.fail},
                        {"inconclusive", report.summary.inconclusive},
                        {"total", report.summary.total()},
                        {"status", std::string(to_string(report.status))}};
      if (seconds) {
        doc["wall_time_s"] = *seconds;
      }
      os << doc.dump(2) << '\n';
      break;
    }
    case Format::csv: {
      os << "id,point_index,label,lhs,rhs,abs_diff,rel_diff,tol_class,tolerance,verdict,lhs_err,lhs_evals,rhs_err,"
            "rhs_evals,note\n";
      for (const VerificationRecord& r : report.records) {
        os << r.id << ',' << r.point_index << ',' << csv_field(r.label) << ',' << fmt(r.lhs) << ',' << fmt(r.rhs)
           << ',' << fmt(r.abs_diff) << ',' << fmt(r.rel_diff) << ',' << to_string(r.tol_class) << ','
           << fmt(r.tolerance) << ',' << to_string(r.verdict) << ',' << fmt(r.lhs_quad.err_estimate) << ','
           << r.lhs_quad.evaluations << ',' << fmt(r.rhs_quad.err_estimate) << ',' << r.rhs_quad.evaluations << ','
           << csv_field(r.note) << '\n';
      }
      break;
    }
    case Format::text: {
      for (const VerificationRecord& r : report.records) {
        os << r.id << '[' << r.point_index << "] " << r.label << (r.label.empty() ? "" : " ") << "lhs=" << fmt(r.lhs)
           << " rhs=" << fmt(r.rhs) << " abs_diff=" << fmt(r.abs_diff) << " tol=" << to_string(r.tol_class) << ':'
           << fmt(r.tolerance) << ' ' << to_string(r.verdict) << '\n';
      }
      os << "summary: pass=" << report.summary.pass << " fail=" << report.summary.fail
         << " inconclusive=" << report.summary.inconclusive << " status=" << to_string(report.status) << '\n';
      if (seconds) {
        os << "wall_time_s=" << fmt(*seconds) << '\n';
      }
      break;
    }
  }
  return os.str();
}

inline Json moment_row_json(const MomentRow& r) {
  return {{"n", r.n},
          {"recursion", r.recursion ? Json(*r.recursion) : Json(nullptr)},
          {"oracle", r.oracle.value},
          {"oracle_err_estimate", r.oracle.err_estimate},
          {"oracle_evaluations", r.oracle.evaluations},
          {"abs_diff", r.abs_diff ? Json(*r.abs_diff) : Json(nullptr)},
          {"largest_term", r.largest_term},
          {"verdict", std::string(to_string(r.verdict))}};
}

inline std::string render_moments(const MomentTable& t, int n_max, Format format) {
  std::ostringstream os;
  std::size_t pass = 0, fail = 0, inconclusive = 0;
  for (const MomentRow& r : t.rows) {
    (r.verdict == Verdict::pass ? pass : r.verdict == Verdict::fail ? fail : inconclusive)++;
  }
  switch (format) {
    case Format::json: {
      Json rows = Json::array();
      for (const MomentRow& r : t.rows) {
        rows.push_back(moment_row_json(r));
      }
      Json doc = {{"version", std::string(kVersion)},
                            {"config", {{"max_n", n_max}, {"tolerance", t.tolerance}}},
                            {"k0", moment_row_json(t.k0)},
                            {"rows", rows},
                            {"summary", {{"pass", pass}, {"fail", fail}, {"inconclusive", inconclusive}}}};
      os << doc.dump(2) << '\n';
      break;
    }
    case Format::csv:
      os << "n,recursion,oracle,oracle_err,abs_diff,largest_term,verdict\n";
      for (const MomentRow* r : [&] {
             std::vector<const MomentRow*> all{&t.k0};
             for (const MomentRow& row : t.rows) all.push_back(&row);
             return all;
           }()) {
        os << r->n << ',' << (r->recursion ? fmt(*r->recursion) : "") << ',' << fmt(r->oracle.value) << ','
           << fmt(r->oracle.err_estimate) << ',' << (r->abs_diff ? fmt(*r->abs_diff) : "") << ','
           << fmt(r->largest_term) << ',' << to_string(r->verdict) << '\n';
      }
      break;
    case Format::text:
      os << "K_0 oracle=" << fmt(t.k0.oracle.value) << '\n';
      for (const MomentRow& r : t.rows) {
        os << "K_" << r.n << " recursion=" << fmt(*r.recursion) << " oracle=" << fmt(r.oracle.value)
           << " abs_diff=" << fmt(*r.abs_diff) << " largest_term=" << fmt(r.largest_term) << ' '
           << to_string(r.verdict) << '\n';
      }
      os << "summary: pass=" << pass << " fail=" << fail << " inconclusive=" << inconclusive << '\n';
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw usage_error("cannot open output file '" + path + "'");
  }
  file << text;
}

/// Fills config fields from a JSON config file. Keys mirror the flags.
inline void load_config_file(const std::string& path, RunConfig& c) {
  std::ifstream in(path);
  if (!in) {
    throw usage_error("cannot read config file '" + path + "'");
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
    if (j.contains("all")) c.all = j.at("all").get<bool>();
    if (j.contains("ids")) c.ids = j.at("ids").get<std::vector<std::string>>();
    if (j.contains("grid")) {
      for (const auto& [key, values] : j.at("grid").items()) {
        GridOverride g = parse_grid(key + "=0");
        g.values = values.get<std::vector<double>>();
        c.grids.push_back(std::move(g));
      }
    }
    if (j.contains("tol")) {
      for (const auto& [key, value] : j.at("tol").items()) {
        apply_tolerance(c.tolerances, key + "=" + fmt(value.get<double>()));
      }
    }
    if (j.contains("format")) c.format = parse_format(j.at("format").get<std::string>());
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("jobs")) c.jobs = j.at("jobs").get<unsigned>();
    if (j.contains("mc_samples")) c.mc_samples = j.at("mc_samples").get<std::int64_t>();
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
    if (j.contains("timing")) c.timing = j.at("timing").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw usage_error("bad config file '" + path + "': " + e.what());
  }
}

inline int exit_for(std::size_t fail, std::size_t inconclusive) {
  return fail > 0 ? kExitFail : inconclusive > 0 ? kExitInconclusive : kExitOk;
}

/// Runs the command line and returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical verification of angular integral identities"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  // verify
  RunConfig flags;
  std::string config_path;
  std::vector<std::string> grid_specs;
  std::vector<std::string> tol_specs;
  std::string format_name = "json";
  CLI::App* verify = app.add_subcommand("verify", "Evaluate both sides of registered identities");
  auto* all_opt = verify->add_flag("--all", flags.all, "Every registered identity");
  auto* id_opt = verify->add_option("--id", flags.ids, "Identity ids (EQ1 ... EQ27)");
  auto* grid_opt = verify->add_option("--grid", grid_specs, "Grid override axis=v1,v2 or ID.axis=v1,v2");
  auto* tol_opt = verify->add_option("--tol", tol_specs, "Tolerance override class=value");
  auto* vfmt_opt = verify->add_option("--format", format_name, "json, csv or text");
  auto* seed_opt = verify->add_option("--seed", flags.seed, "Monte Carlo seed");
  auto* jobs_opt = verify->add_option("--jobs", flags.jobs, "Records evaluated in parallel")->check(CLI::PositiveNumber);
  auto* mc_opt = verify->add_option("--mc-samples", flags.mc_samples, "Monte Carlo samples per record")
                     ->check(CLI::Range(std::int64_t{10'000}, std::int64_t{1'000'000'000}));
  auto* out_opt = verify->add_option("--out", flags.out, "Write the report here instead of stdout");
  auto* timing_opt = verify->add_flag("--timing", flags.timing, "Include wall time in the report");
  verify->add_option("--config", config_path, "JSON file mirroring the flags; flags win");

  // moments
  int max_n = 8;
  double moment_tol = 1e-8;
  std::string moments_format = "json";
  std::string moments_out;
  CLI::App* moments = app.add_subcommand("moments", "Recursion vs quadrature table of K_n");
  moments->add_option("--max-n", max_n, "Largest n (2..30)")->required();
  moments->add_option("--tol", moment_tol, "Absolute agreement tolerance");
  moments->add_option("--format", moments_format, "json, csv or text");
  moments->add_option("--out", moments_out, "Write the table here instead of stdout");

  // reduce
  int reduce_n = 2;
  std::string fn_name;
  double reduce_x = 1.0;
  int weighted_axis = 0;
  double reduce_tol = 1e-10;
  std::string reduce_format = "json";
  std::string reduce_out;
  CLI::App* reduce_cmd = app.add_subcommand("reduce", "Evaluate a sin-product integral directly and reduced");
  reduce_cmd->add_option("--n", reduce_n, "Number of angles (2, 3, 4)")->required();
  reduce_cmd->add_option("--fn", fn_name, "Test function, e.g. exp_neg, power:2, heaviside_step:0.4")->required();
  reduce_cmd->add_option("--x", reduce_x, "Scale x")->required();
  reduce_cmd->add_option("--weighted-axis", weighted_axis, "Axis carrying the sine weight");
  reduce_cmd->add_option("--tol", reduce_tol, "Quadrature tolerance");
  reduce_cmd->add_option("--format", reduce_format, "json or text");
  reduce_cmd->add_option("--out", reduce_out, "Write the result here instead of stdout");

  // bench
  double target = 1e-8;
  bool bench_timing = false;
  CLI::App* bench = app.add_subcommand("bench", "Evaluations needed by direct vs reduced quadrature");
  bench->add_option("--n", reduce_n, "Number of angles (2, 3, 4)")->required();
  bench->add_option("--fn", fn_name, "Test function")->required();
  bench->add_option("--x", reduce_x, "Scale x")->required();
  bench->add_option("--target", target, "Target absolute error")->check(CLI::PositiveNumber);
  bench->add_option("--format", reduce_format, "json or text");
  bench->add_flag("--timing", bench_timing, "Include wall time");

  CLI::App* list = app.add_subcommand("list", "Registered identities with their default grids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (verify->parsed()) {
      RunConfig config;
      if (!config_path.empty()) {
        load_config_file(config_path, config);
      }
      if (all_opt->count()) config.all = flags.all;
      if (id_opt->count()) config.ids = flags.ids;
      if (grid_opt->count()) {
        for (const std::string& spec : grid_specs) config.grids.push_back(parse_grid(spec));
      }
      for (const std::string& spec : tol_specs) apply_tolerance(config.tolerances, spec);
      (void)tol_opt;
      if (vfmt_opt->count()) config.format = parse_format(format_name);
      if (seed_opt->count()) config.seed = flags.seed;
      if (jobs_opt->count()) config.jobs = flags.jobs;
      if (mc_opt->count()) config.mc_samples = flags.mc_samples;
      if (out_opt->count()) config.out = flags.out;
      if (timing_opt->count()) config.timing = flags.timing;
      if (config.all == !config.ids.empty()) {
        throw usage_error("give exactly one of --all or --id");
      }
      if (config.jobs == 0) {
        throw usage_error("--jobs must be positive");
      }
      if (config.mc_samples < 10'000 || config.mc_samples > 1'000'000'000) {
        throw usage_error("mc_samples must lie in [10000, 1000000000]");
      }
      const std::vector<std::string> ids = config.all ? all_identity_ids() : config.ids;
      SuiteConfig suite{ids, config.grids, {config.tolerances, config.seed, config.mc_samples}, config.jobs};
      try {
        plan_suite(suite);
      } catch (const std::invalid_argument& e) {
        throw usage_error(e.what());
      }
      const auto start = std::chrono::steady_clock::now();
      const SuiteReport report = verify_suite(suite);
      std::optional<double> seconds;
      if (config.timing) {
        seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      }
      emit(render_suite(report, config, ids, seconds), config.out, out);
      return exit_for(report.summary.fail, report.summary.inconclusive);
    }

    if (moments->parsed()) {
      if (max_n < 2 || max_n > kMomentTableMaxN) {
        throw usage_error("--max-n must lie in [2, 30]");
      }
      if (!(moment_tol > 0.0)) {
        throw usage_error("--tol must be positive");
      }
      const Format format = parse_format(moments_format);
      const MomentTable table = moment_table(max_n, moment_tol);
      emit(render_moments(table, max_n, format), moments_out, out);
      std::size_t fail = 0, inconclusive = 0;
      for (const MomentRow& r : table.rows) {
        fail += r.verdict == Verdict::fail;
        inconclusive += r.verdict == Verdict::inconclusive;
      }
      inconclusive += table.k0.verdict == Verdict::inconclusive;
      return exit_for(fail, inconclusive);
    }

    if (reduce_cmd->parsed() || bench->parsed()) {
      if (reduce_n < 2 || reduce_n > 4) {
        throw usage_error("--n must be 2, 3 or 4");
      }
      const auto fn = parse_test_function(fn_name);
      if (!fn) {
        throw usage_error("unknown test function '" + fn_name + "'");
      }
      const SinProductIntegral integral{reduce_n, reduce_x, *fn, weighted_axis};
      try {
        validate(integral);
      } catch (const std::exception& e) {
        throw usage_error(e.what());
      }
      const Format format = parse_format(reduce_format);
      if (format == Format::csv) {
        throw usage_error("reduce and bench support json and text");
      }
      const std::optional<double> exact = closed_form(integral);
      const ReducedForm form = reduce(integral);
      Json doc{{"version", std::string(kVersion)},
                         {"n", reduce_n},
                         {"fn", fn->name()},
                         {"x", reduce_x},
                         {"weighted_axis", weighted_axis},
                         {"reduced_dimension", form.dimension},
                         {"kernel", std::string(to_string(form.kernel))},
                         {"prefactor", form.prefactor},
                         {"closed_form", exact ? Json(*exact) : Json(nullptr)}};
      Json steps = Json::array();
      for (const ReductionStep& s : form.steps) {
        steps.push_back({{"rule", s.rule}, {"dims_before", s.dims_before}, {"dims_after", s.dims_after}});
      }
      doc["steps"] = steps;
      int code = kExitOk;
      if (reduce_cmd->parsed()) {
        if (!(reduce_tol > 0.0)) {
          throw usage_error("--tol must be positive");
        }
        const QuadPolicy policy{reduce_tol, reduce_tol, 50, 2'000'000};
        const QuadResult naive = try_evaluate_naive(integral, policy);
        const QuadResult reduced = try_evaluate_reduced(form, policy);
        doc["original"] = quad_json(naive);
        doc["reduced"] = quad_json(reduced);
        const double allowed = 10.0 * (naive.err_estimate + reduced.err_estimate) +
                               reduce_tol * std::max(1.0, std::abs(reduced.value));
        const bool agree = std::abs(naive.value - reduced.value) <= allowed;
        doc["agree"] = agree;
        code = !naive.converged || !reduced.converged ? kExitInconclusive : agree ? kExitOk : kExitFail;
      } else {
        const BenchmarkRecord rec = benchmark_reduction(integral, target);
        auto cost = [&](const RouteCost& c) {
          Json j{{"value", c.value},           {"abs_error", c.abs_error},
                           {"evaluations", c.evaluations}, {"requested_tol", c.requested_tol},
                           {"met_target", c.met_target}};
          if (bench_timing) {
            j["seconds"] = c.seconds;
          }
          return j;
        };
        doc["target_error"] = target;
        doc["reference"] = rec.reference;
        doc["reference_is_closed_form"] = rec.reference_is_closed_form;
        doc["original"] = cost(rec.naive);
        doc["reduced"] = cost(rec.reduced);
        code = rec.naive.met_target && rec.reduced.met_target ? kExitOk : kExitInconclusive;
      }
      std::string text;
      if (format == Format::json) {
        text = doc.dump(2) + "\n";
      } else {
        std::ostringstream os;
        os << "n=" << reduce_n << " fn=" << fn->name() << " x=" << fmt(reduce_x) << " kernel=" << to_string(form.kernel)
           << " reduced_dimension=" << form.dimension << '\n';
        for (const char* side : {"original", "reduced"}) {
          const auto& j = doc[side];
          os << side << ": value=" << fmt(j["value"].get<double>()) << " evaluations=" << j["evaluations"].get<long long>()
             << '\n';
        }
        os << "closed_form=" << (exact ? fmt(*exact) : "none") << '\n';
        text = os.str();
      }
      emit(text, reduce_cmd->parsed() ? reduce_out : "", out);
      return code;
    }

    if (list->parsed()) {
      for (const Identity& identity : identity_registry()) {
        out << identity.id << ": " << identity.description << '\n';
        for (const ParamAxis& axis : identity.grid.axes()) {
          out << "  " << axis.name << " =";
          for (double v : axis.values) {
            out << ' ' << fmt(v);
          }
          out << '\n';
        }
        for (std::size_t i = 0; i < identity.functions.size(); ++i) {
          out << "  fn " << i << " = " << identity.functions[i].name() << '\n';
        }
      }
      return kExitOk;
    }
  } catch (const usage_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace angint::cli
