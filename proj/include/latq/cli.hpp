#pragma once

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "latq/bounds.hpp"
#include "latq/generators.hpp"
#include "latq/matrix_io.hpp"
#include "latq/reduction.hpp"

namespace latq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitRank = 3;
inline constexpr int kExitInternal = 4;

enum class Format { text, json, csv };

struct RunConfig {
  bool float_mode = false;
  double tol = 1e-9;
  Format format = Format::text;
};

namespace detail {

/// One report field; exact scalars carry quote=true so JSON can keep them as
/// canonical "p/q" strings while floats stay bare numbers.
struct Field {
  std::string key;
  std::string value;
  bool quote = false;
};

inline void render_text(const std::vector<Field>& fields, std::ostream& out) {
  for (const auto& f : fields) out << f.key << ": " << f.value << "\n";
}

inline void render_json(const std::vector<Field>& fields, std::ostream& out) {
  out << "{\n";
  for (std::size_t i = 0; i < fields.size(); ++i) {
    out << "  \"" << fields[i].key << "\": ";
    if (fields[i].quote)
      out << '"' << fields[i].value << '"';
    else
      out << fields[i].value;
    out << (i + 1 < fields.size() ? ",\n" : "\n");
  }
  out << "}\n";
}

inline void render_csv(const std::vector<Field>& fields, std::ostream& out) {
  for (std::size_t i = 0; i < fields.size(); ++i)
    out << fields[i].key << (i + 1 < fields.size() ? "," : "\n");
  for (std::size_t i = 0; i < fields.size(); ++i)
    out << fields[i].value << (i + 1 < fields.size() ? "," : "\n");
}

inline void render(const std::vector<Field>& fields, Format format,
                   std::ostream& out) {
  switch (format) {
    case Format::text:
      render_text(fields, out);
      break;
    case Format::json:
      render_json(fields, out);
      break;
    case Format::csv:
      render_csv(fields, out);
      break;
  }
}

template <class Scalar>
Field scalar_field(std::string key, const Scalar& v) {
  if constexpr (is_exact_v<Scalar>)
    return Field{std::move(key), format_scalar(v), true};
  else
    return Field{std::move(key), format_scalar(v), false};
}

inline Field float_field(std::string key, double v) {
  return Field{std::move(key), format_scalar(v), false};
}

inline std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw Error("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class Scalar>
std::vector<Field> metric_fields(const MetricReport<Scalar>& r,
                                 Format format) {
  std::vector<Field> f;
  f.push_back(Field{"n", std::to_string(r.n)});
  f.push_back(Field{"m", std::to_string(r.m)});
  f.push_back(Field{"mode", r.mode(), true});
  f.push_back(scalar_field("seysen_dual", r.s_dual));
  f.push_back(scalar_field("seysen_trace", r.s_trace));
  f.push_back(scalar_field("seysen_cofactor", r.s_cofactor));
  f.push_back(scalar_field("seysen_angles", r.s_angles));
  f.push_back(float_field("seysen_eigen", r.s_eigen));
  f.push_back(scalar_field("od", r.od));
  f.push_back(scalar_field("volume_sq", r.volume_sq));
  f.push_back(scalar_field("kappa_sq", r.kappa_sq));
  // a JSON array of numbers; a ';'-joined cell in text and csv
  std::string evs = format == Format::json ? "[" : "";
  for (Index i = 0; i < r.eigenvalues.size(); ++i) {
    if (i > 0) evs += format == Format::json ? ", " : ";";
    evs += format_scalar(r.eigenvalues[i]);
  }
  if (format == Format::json) evs += "]";
  f.push_back(Field{"eigenvalues", evs, format != Format::json});
  f.push_back(float_field("max_route_discrepancy", r.max_route_discrepancy));
  return f;
}

inline std::vector<Field> verdict_fields(const BoundVerdict& v) {
  return {Field{"name", v.name, true},
          Field{"lhs", v.lhs, true},
          Field{"rhs", v.rhs, true},
          Field{"exact", v.exact ? "true" : "false"},
          Field{"satisfied", v.satisfied ? "true" : "false"},
          float_field("margin", v.margin)};
}

template <class Scalar>
std::string det_of_transform(const MatrixX<Scalar>& u) {
  if constexpr (is_exact_v<Scalar>) {
    const Rational d = det_exact(u);
    if (d != 1 && d != -1)
      throw InvariantBroken("transform is not unimodular: det = " +
                            format_scalar(d));
    return format_scalar(d);
  } else {
    const double d = u.determinant();
    const long r = std::lround(d);
    if (std::fabs(d - r) > 1e-6 || (r != 1 && r != -1))
      throw InvariantBroken("transform is not unimodular: det = " +
                            format_scalar(d));
    return std::to_string(r);
  }
}

}  // namespace detail

template <class Scalar>
int cmd_metrics(const Basis<Scalar>& basis, const RunConfig& cfg,
                std::ostream& out) {
  const auto report = metric_report(basis, cfg.tol);
  detail::render(detail::metric_fields(report, cfg.format), cfg.format, out);
  return kExitOk;
}

template <class Scalar>
int cmd_verify(const Basis<Scalar>& basis, const RunConfig& cfg,
               std::ostream& out) {
  const auto report = metric_report(basis, cfg.tol);
  auto verdicts = check_all_bounds(basis, cfg.tol);
  verdicts.push_back(latq::detail::verdict_float(
      "route_equality", report.max_route_discrepancy, cfg.tol));
  const bool all_ok =
      std::all_of(verdicts.begin(), verdicts.end(),
                  [](const BoundVerdict& v) { return v.satisfied; });

  switch (cfg.format) {
    case Format::text:
      for (const auto& v : verdicts)
        out << v.name << ": " << v.lhs << " <= " << v.rhs << "  "
            << (v.satisfied ? "ok" : "VIOLATED")
            << "  margin=" << format_scalar(v.margin) << "\n";
      out << "all_satisfied: " << (all_ok ? "true" : "false") << "\n";
      break;
    case Format::json: {
      out << "{\n  \"n\": " << basis.n() << ",\n  \"m\": " << basis.m()
          << ",\n  \"mode\": \"" << basis.mode() << "\",\n  \"verdicts\": [\n";
      for (std::size_t i = 0; i < verdicts.size(); ++i) {
        const auto fields = detail::verdict_fields(verdicts[i]);
        out << "    {";
        for (std::size_t j = 0; j < fields.size(); ++j) {
          out << "\"" << fields[j].key << "\": ";
          if (fields[j].quote)
            out << '"' << fields[j].value << '"';
          else
            out << fields[j].value;
          if (j + 1 < fields.size()) out << ", ";
        }
        out << (i + 1 < verdicts.size() ? "},\n" : "}\n");
      }
      out << "  ],\n  \"all_satisfied\": " << (all_ok ? "true" : "false")
          << "\n}\n";
      break;
    }
    case Format::csv:
      out << "name,lhs,rhs,exact,satisfied,margin\n";
      for (const auto& v : verdicts)
        out << v.name << "," << v.lhs << "," << v.rhs << ","
            << (v.exact ? "true" : "false") << ","
            << (v.satisfied ? "true" : "false") << ","
            << format_scalar(v.margin) << "\n";
      break;
  }
  return all_ok ? kExitOk : kExitViolation;
}

struct ReduceOptions {
  std::string algo = "seysen";
  double delta = 0.75;
  int max_sweeps = 1000;
  PairOrder pair_order = PairOrder::row_major;
  std::string output;  // optional path for the reduced basis
};

template <class Scalar>
int cmd_reduce(const Basis<Scalar>& basis, const ReduceOptions& opt,
               const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<detail::Field> summary;
  std::string basis_text;

  const Scalar s_before = seysen_trace_form(basis);
  const Scalar od_before = orthogonality_defect(basis);

  if (opt.algo == "seysen") {
    ReductionConfig rc;
    rc.max_sweeps = opt.max_sweeps;
    rc.pair_order = opt.pair_order;
    const auto res = seysen_reduce(basis, rc);
    basis_text = serialize_matrix(res.basis);
    summary.push_back({"algo", "seysen", true});
    summary.push_back({"mode", basis.mode(), true});
    summary.push_back(detail::scalar_field("s_before", s_before));
    summary.push_back(detail::scalar_field("s_after", res.s_final));
    summary.push_back(detail::scalar_field("od_before", od_before));
    summary.push_back(
        detail::scalar_field("od_after", orthogonality_defect(res.basis)));
    summary.push_back({"sweeps", std::to_string(res.sweeps)});
    summary.push_back({"steps", std::to_string(res.steps.size())});
    summary.push_back({"det_u", detail::det_of_transform(res.transform), true});
    summary.push_back(
        {"sweep_limit_hit", res.hit_sweep_limit ? "true" : "false"});
    summary.push_back({"pair_locally_reduced",
                       res.hit_sweep_limit ? "false" : "true"});
  } else {
    // LLL always runs in exact rational arithmetic.
    RationalMatrix exact_rows(basis.n(), basis.m());
    for (Index i = 0; i < basis.n(); ++i)
      for (Index j = 0; j < basis.m(); ++j) {
        if constexpr (is_exact_v<Scalar>)
          exact_rows(i, j) = basis.rows(i, j);
        else
          exact_rows(i, j) = rational_from_double(basis.rows(i, j));
      }
    const auto exact_basis = make_basis(std::move(exact_rows));
    const auto res = lll_reduce(exact_basis, opt.delta);
    basis_text = serialize_matrix(res.basis);
    summary.push_back({"algo", "lll", true});
    summary.push_back({"mode", "exact", true});
    summary.push_back(detail::scalar_field("s_before", s_before));
    summary.push_back(
        detail::scalar_field("s_after", seysen_trace_form(res.basis)));
    summary.push_back(detail::scalar_field("od_before", od_before));
    summary.push_back(
        detail::scalar_field("od_after", orthogonality_defect(res.basis)));
    summary.push_back(detail::float_field("delta", opt.delta));
    summary.push_back({"swaps", std::to_string(res.swaps)});
    summary.push_back({"det_u", detail::det_of_transform(res.transform), true});
  }

  if (!opt.output.empty()) {
    std::ofstream f(opt.output);
    if (!f) throw Error("cannot open output file: " + opt.output);
    f << basis_text << "\n";
  }

  if (cfg.format == Format::json) {
    auto fields = summary;
    // the basis text embeds one newline per row; escape it for JSON
    std::string escaped;
    for (char c : basis_text)
      if (c == '\n')
        escaped += "\\n";
      else
        escaped += c;
    fields.push_back({"basis", escaped, true});
    detail::render_json(fields, out);
  } else {
    if (opt.output.empty()) out << basis_text << "\n";
    detail::render_text(summary, opt.output.empty() ? err : out);
  }
  return kExitOk;
}

inline int cmd_gen(const EnsembleSpec& spec, std::ostream& out) {
  const auto basis = gen_trial(spec, 0);
  out << serialize_matrix(basis) << "\n";
  return kExitOk;
}

struct BenchOptions {
  EnsembleSpec spec;
  double delta = 0.75;
  int max_sweeps = 1000;
  bool timings = false;
};

namespace detail {

inline double median_of(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  if (n == 0) return 0;
  return n % 2 ? xs[n / 2] : (xs[n / 2 - 1] + xs[n / 2]) / 2;
}

inline double min_norm_over_volume_root(const Basis<Rational>& b) {
  const auto g = gram(b);
  double min_sq = to_double(g(0, 0));
  for (Index i = 1; i < b.n(); ++i)
    min_sq = std::min(min_sq, to_double(g(i, i)));
  const double vol_root = std::pow(to_double(volume_sq(b)),
                                   1.0 / (2 * static_cast<double>(b.n())));
  return std::sqrt(min_sq) / vol_root;
}

}  // namespace detail

/// Per-trial CSV with the measures before/after both reductions, the
/// right-hand side and margin of every bound on the generated basis, and the
/// LLL guarantee on the LLL output. Deterministic per (spec, cfg); timing
/// columns stay 0 unless timings are requested.
inline int cmd_bench(const BenchOptions& opt, std::ostream& out) {
  static const char* kCols[] = {"family",
                                "n",
                                "m",
                                "bound",
                                "seed",
                                "trial",
                                "s_initial",
                                "od_initial",
                                "s_seysen",
                                "od_seysen",
                                "sweeps_seysen",
                                "steps_seysen",
                                "s_lll",
                                "od_lll",
                                "swaps_lll",
                                "min_ratio_seysen",
                                "min_ratio_lll",
                                "seysen_min_ref",
                                "zhang_upper_rhs",
                                "zhang_od_rhs",
                                "zhang_product_rhs",
                                "min_vector_rhs",
                                "amgm_rhs",
                                "new_product_rhs",
                                "new_od_rhs",
                                "existence_bound",
                                "lll_min_rhs",
                                "lll_min_rhs_delta1",
                                "zhang_lower_margin",
                                "zhang_upper_margin",
                                "zhang_od_margin",
                                "zhang_product_margin",
                                "min_vector_margin",
                                "amgm_margin",
                                "new_product_margin",
                                "new_od_margin",
                                "lll_min_margin",
                                "t_seysen_ms",
                                "t_lll_ms"};
  constexpr int kNumCols = sizeof(kCols) / sizeof(kCols[0]);
  constexpr int kIdCols = 6;

  for (int i = 0; i < kNumCols; ++i)
    out << kCols[i] << (i + 1 < kNumCols ? "," : "\n");

  const auto& spec = opt.spec;
  std::vector<std::vector<double>> numeric;  // per trial, kNumCols - kIdCols

  for (int trial = 0; trial < spec.trials; ++trial) {
    const auto basis = gen_trial(spec, trial);
    const Rational s_initial = seysen_trace_form(basis);
    const Rational od_initial = orthogonality_defect(basis);

    using Clock = std::chrono::steady_clock;
    double t_seysen = 0, t_lll = 0;

    ReductionConfig rc;
    rc.max_sweeps = opt.max_sweeps;
    const auto t0 = opt.timings ? Clock::now() : Clock::time_point{};
    const auto red = seysen_reduce(basis, rc);
    if (opt.timings)
      t_seysen =
          std::chrono::duration<double, std::milli>(Clock::now() - t0).count();

    const auto t1 = opt.timings ? Clock::now() : Clock::time_point{};
    const auto lll = lll_reduce(basis, opt.delta);
    if (opt.timings)
      t_lll =
          std::chrono::duration<double, std::milli>(Clock::now() - t1).count();

    const auto verdicts = check_all_bounds(basis);
    auto by_name = [&](const char* name) -> const BoundVerdict& {
      for (const auto& v : verdicts)
        if (v.name == name) return v;
      throw Error(std::string("bench: missing verdict ") + name);
    };
    const auto lll_guarantee =
        check_reduced_min_bound(lll.basis, ReducedKind::lll, opt.delta);
    const auto lll_delta1 =
        check_reduced_min_bound(lll.basis, ReducedKind::lll, 1.0);

    const double ln_n = std::log(static_cast<double>(basis.n()));
    const double seysen_min_ref =
        std::exp((1.0 / std::log(2.0) + 0.5) * ln_n * ln_n);

    std::vector<double> row;
    row.push_back(to_double(s_initial));
    row.push_back(to_double(od_initial));
    row.push_back(to_double(red.s_final));
    row.push_back(to_double(orthogonality_defect(red.basis)));
    row.push_back(red.sweeps);
    row.push_back(static_cast<double>(red.steps.size()));
    row.push_back(to_double(seysen_trace_form(lll.basis)));
    row.push_back(to_double(orthogonality_defect(lll.basis)));
    row.push_back(static_cast<double>(lll.swaps));
    row.push_back(detail::min_norm_over_volume_root(red.basis));
    row.push_back(detail::min_norm_over_volume_root(lll.basis));
    row.push_back(seysen_min_ref);
    row.push_back(by_name("zhang_upper").rhs_value);
    row.push_back(by_name("zhang_od").rhs_value);
    row.push_back(by_name("zhang_product").rhs_value);
    row.push_back(by_name("min_vector").rhs_value);
    row.push_back(by_name("amgm_product").rhs_value);
    row.push_back(by_name("new_product").rhs_value);
    row.push_back(by_name("new_od").rhs_value);
    row.push_back(seysen_existence_bound(basis.n()));
    row.push_back(lll_guarantee.rhs_value);
    row.push_back(lll_delta1.rhs_value);
    row.push_back(by_name("zhang_lower").margin);
    row.push_back(by_name("zhang_upper").margin);
    row.push_back(by_name("zhang_od").margin);
    row.push_back(by_name("zhang_product").margin);
    row.push_back(by_name("min_vector").margin);
    row.push_back(by_name("amgm_product").margin);
    row.push_back(by_name("new_product").margin);
    row.push_back(by_name("new_od").margin);
    row.push_back(lll_guarantee.margin);
    row.push_back(t_seysen);
    row.push_back(t_lll);

    out << family_name(spec.family) << "," << basis.n() << "," << basis.m()
        << "," << spec.bound << "," << spec.seed << "," << trial;
    // exact quantities print exactly; everything derived stays float
    out << "," << format_scalar(s_initial) << "," << format_scalar(od_initial)
        << "," << format_scalar(red.s_final) << ","
        << format_scalar(orthogonality_defect(red.basis)) << "," << red.sweeps
        << "," << red.steps.size() << ","
        << format_scalar(seysen_trace_form(lll.basis)) << ","
        << format_scalar(orthogonality_defect(lll.basis)) << "," << lll.swaps;
    for (std::size_t i = 9; i < row.size(); ++i)
      out << "," << format_scalar(row[i]);
    out << "\n";
    numeric.push_back(std::move(row));
  }

  // aggregate rows: mean then median of every numeric column
  const std::size_t width = numeric.empty() ? kNumCols - kIdCols
                                            : numeric.front().size();
  for (const char* label : {"mean", "median"}) {
    out << family_name(spec.family) << "," << spec.n << ","
        << (spec.family == Family::knapsack ? spec.n + 1
                                            : std::max(spec.m, spec.n))
        << "," << spec.bound << "," << spec.seed << "," << label;
    for (std::size_t c = 0; c < width; ++c) {
      std::vector<double> col;
      col.reserve(numeric.size());
      for (const auto& r : numeric) col.push_back(r[c]);
      double v = 0;
      if (!col.empty()) {
        if (std::string_view(label) == "mean") {
          for (double x : col) v += x;
          v /= static_cast<double>(col.size());
        } else {
          v = detail::median_of(col);
        }
      }
      out << "," << format_scalar(v);
    }
    out << "\n";
  }
  return kExitOk;
}

/// Full command-line entry point; returns the process exit code.
/// args excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"lattice basis quality measures, bound verification and "
               "reduction"};
  app.name("latq");
  app.require_subcommand(0, 1);

  std::string mode = "exact";
  double tol = 1e-9;
  std::string format = "text";
  app.add_option("--mode", mode, "arithmetic mode")
      ->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--tol", tol, "float-route tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));

  std::string metrics_file = "-";
  auto* metrics = app.add_subcommand("metrics", "measure report for a basis");
  metrics->add_option("file", metrics_file, "matrix file ('-' for stdin)");
  metrics->fallthrough();

  std::string verify_file = "-";
  auto* verify =
      app.add_subcommand("verify", "check every proved bound on a basis");
  verify->add_option("file", verify_file, "matrix file ('-' for stdin)");
  verify->fallthrough();

  std::string reduce_file = "-";
  ReduceOptions ropt;
  std::string pair_order = "row_major";
  auto* reduce = app.add_subcommand("reduce", "reduce a basis");
  reduce->add_option("file", reduce_file, "matrix file ('-' for stdin)");
  reduce->add_option("--algo", ropt.algo, "reduction algorithm")
      ->check(CLI::IsMember({"seysen", "lll"}));
  reduce->add_option("--delta", ropt.delta, "LLL delta in (1/4, 1]");
  reduce->add_option("--max-sweeps", ropt.max_sweeps, "sweep cap")
      ->check(CLI::PositiveNumber);
  reduce->add_option("--pair-order", pair_order, "pair sweep order")
      ->check(CLI::IsMember({"row_major", "best_first"}));
  reduce->add_option("--output", ropt.output, "write reduced basis here");
  reduce->fallthrough();

  EnsembleSpec gspec;
  std::string family = "uniform";
  auto* gen = app.add_subcommand("gen", "emit a seeded random basis");
  gen->add_option("--family", family, "basis family")
      ->check(CLI::IsMember({"uniform", "knapsack"}));
  gen->add_option("--n", gspec.n, "rows");
  gen->add_option("--m", gspec.m, "columns (uniform; default n)");
  gen->add_option("--bound", gspec.bound, "entry bound");
  gen->add_option("--seed", gspec.seed, "seed");
  gen->fallthrough();

  BenchOptions bopt;
  std::string bench_family = "uniform";
  auto* bench =
      app.add_subcommand("bench", "per-trial measures and bound margins, CSV");
  bench->add_option("--family", bench_family, "basis family")
      ->check(CLI::IsMember({"uniform", "knapsack"}));
  bench->add_option("--n", bopt.spec.n, "rows");
  bench->add_option("--m", bopt.spec.m, "columns (uniform; default n)");
  bench->add_option("--bound", bopt.spec.bound, "entry bound");
  bench->add_option("--seed", bopt.spec.seed, "seed");
  bench->add_option("--trials", bopt.spec.trials, "trial count")
      ->check(CLI::PositiveNumber);
  bench->add_option("--delta", bopt.delta, "LLL delta");
  bench->add_option("--max-sweeps", bopt.max_sweeps, "seysen sweep cap");
  bench->add_flag("--timings", bopt.timings,
                  "fill timing columns (not deterministic)");
  bench->fallthrough();

  std::vector<const char*> argv;
  argv.push_back("latq");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitParse;
  }

  RunConfig cfg;
  cfg.float_mode = (mode == "float");
  cfg.tol = tol;
  cfg.format = format == "json"
                   ? Format::json
                   : (format == "csv" ? Format::csv : Format::text);

  const double active_delta = reduce->parsed() ? ropt.delta : bopt.delta;
  if ((reduce->parsed() || bench->parsed()) &&
      !(active_delta > 0.25 && active_delta <= 1.0)) {
    err << "--delta must lie in (1/4, 1]\n";
    return kExitParse;
  }
  if (gen->parsed() || bench->parsed()) {
    const auto& spec = gen->parsed() ? gspec : bopt.spec;
    const std::string& fam = gen->parsed() ? family : bench_family;
    if (spec.bound < 1) {
      err << "--bound must be >= 1\n";
      return kExitParse;
    }
    if (spec.n < 1 || (fam == "knapsack" && spec.n < 2)) {
      err << "--n too small for the requested family\n";
      return kExitParse;
    }
  }

  try {
    if (metrics->parsed() || verify->parsed() || reduce->parsed()) {
      const std::string path = metrics->parsed()
                                   ? metrics_file
                                   : (verify->parsed() ? verify_file
                                                       : reduce_file);
      const RationalMatrix rows = parse_matrix_text(detail::read_input(path));
      ropt.pair_order = pair_order == "best_first" ? PairOrder::best_first
                                                   : PairOrder::row_major;
      auto dispatch = [&](auto&& basis) -> int {
        if (metrics->parsed()) return cmd_metrics(basis, cfg, out);
        if (verify->parsed()) return cmd_verify(basis, cfg, out);
        return cmd_reduce(basis, ropt, cfg, out, err);
      };
      if (cfg.float_mode)
        return dispatch(make_basis(to_real(rows)));
      return dispatch(make_basis(rows));
    }
    if (gen->parsed()) {
      gspec.family = family == "knapsack" ? Family::knapsack : Family::uniform;
      if (gspec.m < gspec.n) gspec.m = gspec.n;
      return cmd_gen(gspec, out);
    }
    if (bench->parsed()) {
      bopt.spec.family =
          bench_family == "knapsack" ? Family::knapsack : Family::uniform;
      if (bopt.spec.m < bopt.spec.n) bopt.spec.m = bopt.spec.n;
      return cmd_bench(bopt, out);
    }
    err << app.help();
    return kExitParse;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const RankDeficient& e) {
    err << e.what() << "\n";
    return kExitRank;
  } catch (const SingularMatrix& e) {
    err << e.what() << "\n";
    return kExitRank;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace latq::cli
