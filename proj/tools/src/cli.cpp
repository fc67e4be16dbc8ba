#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "config.hpp"
#include "derham/analysis.hpp"
#include "derham/measure.hpp"
#include "derham/solution.hpp"
#include "derham/stationary.hpp"
#include "report.hpp"

namespace derham::cli {

namespace {

struct Options {
  std::string config_path;
  std::string preset;
  std::optional<unsigned> depth;
  std::optional<double> tol;
  std::uint64_t seed = kDefaultSeed;
  std::string out_path;
  std::string mode;
  std::vector<std::string> points;
  std::size_t samples = 100000;
  bool defect = false;
  unsigned shift_depth = 4;
  unsigned quad_depth = 14;
};

constexpr unsigned kMaxGridDepth = 24;

void add_common(CLI::App& sub, Options& o) {
  auto* config = sub.add_option("--config", o.config_path, "JSON system config");
  auto* preset = sub.add_option("--preset", o.preset, "lebesgue:P or walk:U");
  config->excludes(preset);
  sub.add_option("--mode", o.mode, "force exact or approx arithmetic")
      ->check(CLI::IsMember({"exact", "approx"}));
  sub.add_option("--out", o.out_path, "write the report here instead of stdout");
}

void add_depth(CLI::App& sub, Options& o, const std::string& help) {
  sub.add_option("--depth", o.depth, help);
}

void add_tol(CLI::App& sub, Options& o) {
  sub.add_option("--tol", o.tol, "absolute tolerance")->check(CLI::PositiveNumber);
}

std::optional<Mode> requested_mode(const Options& o) {
  if (o.mode == "exact") return Mode::exact;
  if (o.mode == "approx") return Mode::approx;
  return std::nullopt;
}

SystemConfig load_config(const Options& o) {
  const bool decimal_exact = o.mode == "exact";
  if (!o.config_path.empty()) return read_config_file(o.config_path, decimal_exact);
  if (!o.preset.empty()) return preset_config(o.preset, decimal_exact);
  throw ParseError("one of --config or --preset is required");
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + o.out_path + "' for writing");
  file << text;
  file.flush();
  if (!file) throw IoError("error while writing '" + o.out_path + "'");
}

std::string dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

ordered_json header(const std::string& command, const SystemConfig& config,
                    const DeRhamSystem& sys) {
  ordered_json out = report_header(command);
  if (config.preset) out["preset"] = *config.preset;
  if (config.label) out["label"] = *config.label;
  out["mode"] = std::string(to_string(sys.mode()));
  return out;
}

int cmd_validate(const Options& o, std::ostream& out) {
  const SystemConfig config = load_config(o);
  try {
    const DeRhamSystem sys = build_system(config, requested_mode(o));
    ordered_json doc = validation_json(sys.a0(), sys.a1(), &sys, {});
    if (config.preset) doc["preset"] = *config.preset;
    if (config.label) doc["label"] = *config.label;
    emit(o, out, dump(doc));
    return kOk;
  } catch (const ValidationError& e) {
    emit(o, out, dump(validation_json(config.a0, config.a1, nullptr, e.violations())));
    return kFailure;
  }
}

std::string csv_row(const Scalar& x, const Scalar& lo, const Scalar& hi) {
  return format_number(x.to_double()) + "," + format_number(lo.to_double()) + "," +
         format_number(hi.to_double()) + "\n";
}

int cmd_grid(const Options& o, std::ostream& out, bool allow_points, unsigned default_depth) {
  const SystemConfig config = load_config(o);
  const DeRhamSystem sys = build_system(config, requested_mode(o));
  std::string csv = "x,f_lower,f_upper\n";

  if (allow_points && !o.points.empty()) {
    const double tol = o.tol.value_or(1e-12);
    for (const auto& text : o.points) {
      Scalar x;
      try {
        x = Scalar::parse(text, o.mode == "exact");
      } catch (const DomainError& e) {
        throw ParseError("--x: " + std::string(e.what()));
      }
      if (sys.mode() == Mode::approx) x = x.to_mode(Mode::approx);
      const ValueEnclosure enc = eval_enclosure(sys, x, tol);
      csv += csv_row(x, enc.lower, enc.upper);
    }
    emit(o, out, csv);
    return kOk;
  }

  const unsigned depth = o.depth.value_or(default_depth);
  if (depth > kMaxGridDepth)
    throw PreconditionError("grid depth " + std::to_string(depth) + " exceeds " +
                            std::to_string(kMaxGridDepth));
  const std::uint64_t cells = std::uint64_t{1} << depth;
  for (std::uint64_t j = 0; j < cells; ++j) {
    const DyadicAddress addr = DyadicAddress::from_index(j, depth);
    const Scalar value = eval_dyadic(sys, addr).lower;
    csv += csv_row(addr.left(), value, value);
  }
  csv += "1,1,1\n";
  emit(o, out, csv);
  return kOk;
}

int cmd_classify(const Options& o, std::ostream& out) {
  const SystemConfig config = load_config(o);
  const DeRhamSystem sys = build_system(config, requested_mode(o));
  ordered_json doc = header("classify", config, sys);
  doc.update(to_json(classify(sys)));
  emit(o, out, dump(doc));
  return kOk;
}

int cmd_dimension(const Options& o, std::ostream& out) {
  const SystemConfig config = load_config(o);
  const DeRhamSystem sys = build_system(config, requested_mode(o));
  ordered_json doc = header("dimension", config, sys);
  doc["alpha"] = to_json(sys.alpha());
  doc["beta"] = to_json(sys.beta());
  doc["gamma"] = to_json(sys.gamma());
  doc.update(to_json(dimension_bounds(sys)));
  if (o.defect) {
    const Scalar eps = epsilon0(sys);
    doc["epsilon0"] = to_json(eps);
    doc["defect_bound"] = singular_dim_upper_bound(sys, eps);
  }
  emit(o, out, dump(doc));
  return kOk;
}

int cmd_sample(const Options& o, std::ostream& out) {
  const SystemConfig config = load_config(o);
  const DeRhamSystem sys = build_system(config, requested_mode(o));
  if (o.samples == 0) throw PreconditionError("-n must be at least 1");
  const SamplePath path = sample_path(sys, o.samples, o.seed);

  const auto zeros = std::count(path.digits.begin(), path.digits.end(), std::uint8_t{0});
  Scalar lo = path.states.front(), hi = path.states.front();
  for (const auto& t : path.states) {
    lo = min(lo, t);
    hi = max(hi, t);
  }
  const double estimate = entropy_rate_estimate(sys, path);
  // -log R_N / N from the word formula; the rescaled float product is
  // accurate here and avoids exact rationals with N-digit denominators.
  const DeRhamSystem approx = sys.to_mode(Mode::approx);
  const double n = static_cast<double>(o.samples);
  const double neg_log_r = -log_interval_measure(approx, DyadicAddress(path.digits)) / n;
  const DimensionBounds bounds = dimension_bounds(sys);

  ordered_json doc = header("sample", config, sys);
  doc["seed"] = o.seed;
  doc["n"] = o.samples;
  doc["digit0_frequency"] = static_cast<double>(zeros) / n;
  doc["entropy_rate"] = estimate;
  doc["entropy_rate_dim"] = estimate / std::log(2.0);
  doc["neg_log_R_over_N"] = neg_log_r;
  doc["theta1"] = bounds.theta1;
  doc["theta2"] = bounds.theta2;
  doc["state_min"] = lo.to_double();
  doc["state_max"] = hi.to_double();
  doc["states_in_range"] = sys.alpha() <= lo && hi <= sys.beta();
  emit(o, out, dump(doc));
  return kOk;
}

int cmd_stationary(const Options& o, std::ostream& out) {
  const SystemConfig config = load_config(o);
  const DeRhamSystem sys = build_system(config, requested_mode(o));
  const unsigned depth = o.depth.value_or(8);
  const double tol = o.tol.value_or(1e-11);
  ordered_json doc = header("stationary", config, sys);
  doc["tol"] = tol;
  doc.update(to_json(stationarity_check(sys, depth, tol)));
  doc["shift_change_of_measure"] = {
      {"depth", o.shift_depth},
      {"quad_depth", o.quad_depth},
      {"residual", to_json(shift_change_of_measure_check(sys, o.shift_depth, o.quad_depth))}};
  emit(o, out, dump(doc));
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Solutions of de Rham's functional equation for linear fractional maps",
               "derham-lft"};
  app.require_subcommand(1);

  auto* validate_cmd = app.add_subcommand("validate", "check admissibility, print alpha, beta, gamma");
  add_common(*validate_cmd, o);

  auto* eval_cmd = app.add_subcommand("eval", "f on the dyadic grid of --depth, or at --x points");
  add_common(*eval_cmd, o);
  add_depth(*eval_cmd, o, "grid depth k (rows at j/2^k), default 8");
  add_tol(*eval_cmd, o);
  eval_cmd->add_option("--x", o.points, "evaluation points (n, n/d or decimal)");

  auto* plot_cmd = app.add_subcommand("plot", "CSV of f on the dyadic grid of --depth");
  add_common(*plot_cmd, o);
  add_depth(*plot_cmd, o, "grid depth k, default 10");

  auto* classify_cmd = app.add_subcommand("classify", "singular or absolutely continuous");
  add_common(*classify_cmd, o);

  auto* dimension_cmd = app.add_subcommand("dimension", "entropy bounds on the local dimension");
  add_common(*dimension_cmd, o);
  dimension_cmd->add_flag("--defect", o.defect, "also report eps0 and the defect bound");

  auto* sample_cmd = app.add_subcommand("sample", "sample digits of mu_f and estimate the entropy rate");
  add_common(*sample_cmd, o);
  sample_cmd->add_option("-n,--samples", o.samples, "path length N, default 100000");
  sample_cmd->add_option("--seed", o.seed, "64-bit seed, default " + std::to_string(kDefaultSeed));

  auto* stationary_cmd = app.add_subcommand("stationary", "stationarity and change-of-measure checks");
  add_common(*stationary_cmd, o);
  add_depth(*stationary_cmd, o, "address depth, default 8");
  add_tol(*stationary_cmd, o);
  stationary_cmd->add_option("--shift-depth", o.shift_depth, "test interval depth, default 4");
  stationary_cmd->add_option("--quad-depth", o.quad_depth, "quadrature cell depth, default 14");

  std::vector<std::string> argv_storage{"derham-lft"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(o, out);
    if (eval_cmd->parsed()) return cmd_grid(o, out, true, 8);
    if (plot_cmd->parsed()) return cmd_grid(o, out, false, 10);
    if (classify_cmd->parsed()) return cmd_classify(o, out);
    if (dimension_cmd->parsed()) return cmd_dimension(o, out);
    if (sample_cmd->parsed()) return cmd_sample(o, out);
    if (stationary_cmd->parsed()) return cmd_stationary(o, out);
  } catch (const ParseError& e) {
    err << "error: ParseError: " << e.what() << "\n";
    return kParseError;
  } catch (const IoError& e) {
    err << "error: IoError: " << e.what() << "\n";
    return kIoError;
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << "\n";
    return kFailure;
  }
  return kParseError;
}

}  // namespace derham::cli
