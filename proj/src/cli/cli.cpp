#include "tangenttri/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "cli/json_writer.hpp"
#include "tangenttri/analytic.hpp"
#include "tangenttri/errors.hpp"
#include "tangenttri/optimize.hpp"
#include "tangenttri/sampling.hpp"

namespace tangenttri::cli {
namespace {

using analytic::DensityModel;

constexpr std::uint64_t kFallbackSeed = 1;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Subcommand { Density, Cdf, Median, Simulate, Optimize };

struct RunConfig {
  Subcommand subcommand = Subcommand::Density;
  std::string model = "incircle";
  std::string kind;     // simulate: side | perimeter | acute | alpha
  std::string problem;  // optimize: perimeter | two-sides
  double from = 0.0;
  double to = 0.0;
  int steps = 100;
  std::uint64_t n = 100000;
  std::uint64_t seed = kFallbackSeed;
  int bins = 50;
  double tol = 0.0;  // 0 selects the subcommand default
  unsigned shards = 1;
  std::string format;
  std::string out_path;
  std::string hist_out_path;
};

std::uint64_t default_seed() {
  const char* env = std::getenv("TANGENTTRI_SEED");
  if (env == nullptr || *env == '\0') return kFallbackSeed;
  const std::string text(env);
  if (!std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c) != 0; })) {
    throw UsageError("TANGENTTRI_SEED must be an unsigned decimal integer");
  }
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw UsageError("TANGENTTRI_SEED is out of range");
  }
}

numerics::QuadratureSpec quadrature_spec(const RunConfig& cfg) {
  numerics::QuadratureSpec spec;
  if (cfg.tol > 0.0) spec.abs_tol = spec.rel_tol = cfg.tol;
  return spec;
}

void write_csv_row(std::ostream& os, std::initializer_list<std::string> cells) {
  bool first = true;
  for (const auto& c : cells) {
    if (!first) os << ',';
    os << c;
    first = false;
  }
  os << '\n';
}

std::vector<double> grid(double from, double to, int steps) {
  std::vector<double> xs(static_cast<std::size_t>(steps));
  const double step = (to - from) / (steps - 1);
  for (int i = 0; i < steps; ++i) xs[static_cast<std::size_t>(i)] = from + i * step;
  xs.back() = to;
  return xs;
}

void validate_range(const RunConfig& cfg) {
  if (!(cfg.from < cfg.to)) throw UsageError("--from must be less than --to");
  if (cfg.steps < 2) throw UsageError("--steps must be at least 2");
}

void tabulate(const RunConfig& cfg, std::string_view column, const std::vector<double>& xs,
              const std::vector<double>& ys, std::string_view x_name, std::ostream& os) {
  if (cfg.format == "json") {
    JsonWriter w(os);
    w.begin_object().field("model", std::string_view(cfg.model));
    w.key(x_name).begin_array();
    for (const double x : xs) w.value(x);
    w.end_array();
    w.key(column).begin_array();
    for (const double y : ys) w.value(y);
    w.end_array();
    w.end_object().finish();
    return;
  }
  write_csv_row(os, {std::string(x_name), std::string(column)});
  for (std::size_t i = 0; i < xs.size(); ++i) write_csv_row(os, {format_number(xs[i]), format_number(ys[i])});
}

void cmd_density(const RunConfig& cfg, std::ostream& os) {
  validate_range(cfg);
  const DensityModel model = analytic::parse_model(cfg.model);
  const auto xs = grid(cfg.from, cfg.to, cfg.steps);
  std::vector<double> ys;
  ys.reserve(xs.size());
  for (const double x : xs) ys.push_back(analytic::density(model, x));
  tabulate(cfg, "density", xs, ys, "l", os);
}

void cmd_cdf(const RunConfig& cfg, std::ostream& os) {
  validate_range(cfg);
  const DensityModel model = analytic::parse_model(cfg.model);
  const auto spec = quadrature_spec(cfg);
  const auto xs = grid(cfg.from, cfg.to, cfg.steps);
  std::vector<double> ys;
  ys.reserve(xs.size());
  for (const double x : xs) ys.push_back(analytic::cdf(model, x, spec));
  tabulate(cfg, "cdf", xs, ys, "x", os);
}

void cmd_median(const RunConfig& cfg, std::ostream& os) {
  const DensityModel model = analytic::parse_model(cfg.model);
  const double tol = cfg.tol > 0.0 ? cfg.tol : analytic::kDefaultQuantileTol;
  const auto q = analytic::quantile_detailed(model, 0.5, {}, tol);
  if (cfg.format == "csv") {
    write_csv_row(os, {"model", "median", "achieved_tol", "cdf_residual"});
    write_csv_row(os, {cfg.model, format_number(q.x), format_number(q.bracket_width), format_number(q.residual)});
    return;
  }
  JsonWriter w(os);
  w.begin_object()
      .field("model", std::string_view(cfg.model))
      .field("median", q.x)
      .field("achieved_tol", q.bracket_width)
      .field("cdf_residual", q.residual)
      .end_object()
      .finish();
}

void write_histogram_csv(const sampling::Histogram& h, std::ostream& os) {
  write_csv_row(os, {"bin_lo", "bin_hi", "count"});
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    write_csv_row(os, {format_number(h.bin_edges[i]), format_number(h.bin_edges[i + 1]), std::to_string(h.counts[i])});
  }
}

void write_summary_json(const RunConfig& cfg, const sampling::SimulationSummary& s,
                        const sampling::Histogram* histogram, std::ostream& os) {
  JsonWriter w(os);
  w.begin_object().field("kind", std::string_view(cfg.kind));
  if (cfg.kind == "side") w.field("model", std::string_view(cfg.model));
  w.field("n", s.n).field("seed", cfg.seed).field("estimate", s.estimate).field("std_error", s.std_error);
  w.key("extra").begin_object();
  for (const auto& v : s.extra) w.field(v.name, v.value);
  w.end_object();
  if (histogram != nullptr) {
    w.key("histogram").begin_object();
    w.key("bin_lo").begin_array();
    for (std::size_t i = 0; i + 1 < histogram->bin_edges.size(); ++i) w.value(histogram->bin_edges[i]);
    w.end_array();
    w.key("bin_hi").begin_array();
    for (std::size_t i = 1; i < histogram->bin_edges.size(); ++i) w.value(histogram->bin_edges[i]);
    w.end_array();
    w.key("count").begin_array();
    for (const auto c : histogram->counts) w.value(c);
    w.end_array();
    w.field("total", histogram->total);
    w.end_object();
  }
  w.end_object().finish();
}

void cmd_simulate(const RunConfig& cfg, std::ostream& os) {
  if (cfg.n < 1) throw UsageError("--n must be at least 1");
  if (cfg.bins < 1) throw UsageError("--bins must be at least 1");
  if (cfg.shards < 1) throw UsageError("--shards must be at least 1");
  const sampling::Seed seed{cfg.seed};

  if (cfg.kind == "acute") {
    if (cfg.format == "csv" || !cfg.hist_out_path.empty()) {
      throw UsageError("the acute simulation has no histogram; use --format json");
    }
    write_summary_json(cfg, sampling::estimate_acute_probability(cfg.n, seed, cfg.shards), nullptr, os);
    return;
  }

  sampling::DistributionSimulation sim;
  if (cfg.kind == "side") {
    sim = sampling::simulate_side(analytic::parse_model(cfg.model), cfg.n, seed, cfg.bins, cfg.shards);
  } else if (cfg.kind == "perimeter") {
    sim = sampling::simulate_perimeter(cfg.n, seed, cfg.bins, cfg.shards);
  } else {
    sim = sampling::simulate_alpha(cfg.n, seed, cfg.bins, cfg.shards);
  }

  if (!cfg.hist_out_path.empty()) {
    std::ofstream hist(cfg.hist_out_path, std::ios::binary);
    if (!hist) throw UsageError("cannot open " + cfg.hist_out_path);
    write_histogram_csv(sim.histogram, hist);
  }
  if (cfg.format == "csv") {
    write_histogram_csv(sim.histogram, os);
  } else {
    write_summary_json(cfg, sim.summary, &sim.histogram, os);
  }
}

void write_two_side(JsonWriter& w, const optimize::TwoSideOptimum& o) {
  w.field("w_star", o.w_star)
      .field("sum_uv", o.sum_uv)
      .field("apex_angle_rad", o.apex_angle)
      .field("apex_angle_deg", optimize::radians_to_degrees(o.apex_angle))
      .field("cos_apex", o.cos_apex);
}

void cmd_optimize(const RunConfig& cfg, std::ostream& os) {
  const double tol = cfg.tol > 0.0 ? cfg.tol : optimize::kDefaultSearchTol;
  JsonWriter w(os);
  w.begin_object().field("problem", std::string_view(cfg.problem));
  if (cfg.problem == "two-sides") {
    const auto closed = optimize::two_side_min_closed();
    const auto numeric = optimize::two_side_min_numeric(tol);
    w.key("closed").begin_object();
    write_two_side(w, closed);
    w.end_object();
    w.key("numeric").begin_object();
    write_two_side(w, numeric);
    w.field("abs_u_minus_v", numeric.abs_u_minus_v)
        .field("gamma1", numeric.gaps.gamma1)
        .field("gamma2", numeric.gaps.gamma2)
        .field("gamma3", numeric.gaps.gamma3);
    w.end_object();
    w.key("abs_difference").begin_object();
    w.field("w_star", std::abs(closed.w_star - numeric.w_star))
        .field("sum_uv", std::abs(closed.sum_uv - numeric.sum_uv))
        .field("apex_angle_rad", std::abs(closed.apex_angle - numeric.apex_angle));
    w.end_object();
  } else {
    const double closed = optimize::min_perimeter();
    const auto numeric = optimize::min_perimeter_numeric(tol);
    w.key("closed").begin_object().field("perimeter", closed).field("side_infimum", optimize::side_infimum());
    w.end_object();
    w.key("numeric").begin_object();
    w.field("perimeter", numeric.perimeter)
        .field("gamma1", numeric.gaps.gamma1)
        .field("gamma2", numeric.gaps.gamma2)
        .field("gamma3", numeric.gaps.gamma3);
    w.end_object();
    w.key("abs_difference").begin_object().field("perimeter", std::abs(closed - numeric.perimeter));
    w.end_object();
  }
  w.end_object().finish();
}

void add_output_options(CLI::App* sub, RunConfig& cfg, const std::string& default_format) {
  cfg.format = default_format;
  sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", cfg.out_path, "Write output to PATH instead of stdout");
}

CLI::Option* add_model_option(CLI::App* sub, RunConfig& cfg) {
  return sub->add_option("--model", cfg.model, "Side-length law")
      ->check(CLI::IsMember({"single", "naive", "incircle"}))
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg.seed = default_seed();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App app{"Random tangent triangles of the unit circle: exact laws, Monte Carlo, extremal problems",
               "tangenttri"};
  app.require_subcommand(1);
  std::vector<std::pair<CLI::App*, Subcommand>> subs;

  auto* density = app.add_subcommand("density", "Tabulate a side-length density as l,density");
  add_model_option(density, cfg);
  density->add_option("--from", cfg.from, "First abscissa")->required();
  density->add_option("--to", cfg.to, "Last abscissa")->required();
  density->add_option("--steps", cfg.steps, "Number of evenly spaced rows (>= 2)")->capture_default_str();
  subs.emplace_back(density, Subcommand::Density);

  auto* cdf = app.add_subcommand("cdf", "Tabulate a side-length CDF as x,cdf");
  add_model_option(cdf, cfg);
  cdf->add_option("--from", cfg.from, "First abscissa")->required();
  cdf->add_option("--to", cfg.to, "Last abscissa")->required();
  cdf->add_option("--steps", cfg.steps, "Number of evenly spaced rows (>= 2)")->capture_default_str();
  cdf->add_option("--tol", cfg.tol, "Quadrature tolerance (absolute and relative)")->check(CLI::PositiveNumber);
  subs.emplace_back(cdf, Subcommand::Cdf);

  auto* median = app.add_subcommand("median", "Median of a side-length law");
  add_model_option(median, cfg);
  median->add_option("--tol", cfg.tol, "Root-finding tolerance on the median")->check(CLI::PositiveNumber);
  subs.emplace_back(median, Subcommand::Median);

  auto* simulate = app.add_subcommand("simulate", "Seeded Monte Carlo estimates");
  simulate->add_option("kind", cfg.kind, "side | perimeter | acute | alpha")
      ->required()
      ->check(CLI::IsMember({"side", "perimeter", "acute", "alpha"}));
  add_model_option(simulate, cfg);
  simulate->add_option("--n", cfg.n, "Sample count")->capture_default_str();
  simulate->add_option("--seed", cfg.seed, "64-bit seed (default: $TANGENTTRI_SEED or 1)");
  simulate->add_option("--bins", cfg.bins, "Histogram bins")->capture_default_str();
  simulate->add_option("--shards", cfg.shards, "Worker threads; results do not depend on it")
      ->capture_default_str();
  simulate->add_option("--hist-out", cfg.hist_out_path, "Also write the histogram as CSV to PATH");
  subs.emplace_back(simulate, Subcommand::Simulate);

  auto* opt = app.add_subcommand("optimize", "Closed-form and numerical extremal triangles");
  opt->add_option("problem", cfg.problem, "perimeter | two-sides")
      ->required()
      ->check(CLI::IsMember({"perimeter", "two-sides"}));
  opt->add_option("--tol", cfg.tol, "Search tolerance on the gap angles")->check(CLI::PositiveNumber);
  subs.emplace_back(opt, Subcommand::Optimize);

  // --format and --out are shared; each subcommand binds them to the same
  // fields with its own default format.
  add_output_options(density, cfg, "csv");
  add_output_options(cdf, cfg, "csv");
  add_output_options(median, cfg, "json");
  add_output_options(simulate, cfg, "json");
  add_output_options(opt, cfg, "json");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  for (const auto& [sub, which] : subs) {
    if (sub->parsed()) cfg.subcommand = which;
  }
  // The default format depends on the subcommand that ran.
  auto* chosen = subs[static_cast<std::size_t>(cfg.subcommand)].first;
  if (chosen->count("--format") == 0) {
    cfg.format = (cfg.subcommand == Subcommand::Density || cfg.subcommand == Subcommand::Cdf) ? "csv" : "json";
  }
  if (cfg.subcommand == Subcommand::Optimize && cfg.format != "json") {
    err << "error: optimize only writes JSON\n";
    return kExitUsage;
  }

  std::ostringstream buffer;
  try {
    switch (cfg.subcommand) {
      case Subcommand::Density:
        cmd_density(cfg, buffer);
        break;
      case Subcommand::Cdf:
        cmd_cdf(cfg, buffer);
        break;
      case Subcommand::Median:
        cmd_median(cfg, buffer);
        break;
      case Subcommand::Simulate:
        cmd_simulate(cfg, buffer);
        break;
      case Subcommand::Optimize:
        cmd_optimize(cfg, buffer);
        break;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << " (best estimate " << format_number(e.best_estimate()) << ", error bound "
        << format_number(e.error_estimate()) << ")\n";
    return kExitNumerical;
  }

  if (cfg.out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(cfg.out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << cfg.out_path << '\n';
      return kExitUsage;
    }
    file << buffer.str();
  }
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace tangenttri::cli
