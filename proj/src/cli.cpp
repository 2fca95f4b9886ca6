#include "needlets/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "needlets/kernel.hpp"

namespace needlets::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("invalid number for key '" + key + "': " + v);
  }
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer for key '" + key + "': " + v);
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    unsigned long long x = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return static_cast<std::uint64_t>(x);
  } catch (const std::exception&) {
    throw ConfigError("invalid seed for key '" + key + "': " + v);
  }
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "scales.type",          "scales.bandwidth",
      "scales.j_max",         "scales.values",
      "dim",                  "spectrum.model",
      "spectrum.alpha",       "spectrum.amplitude",
      "spectrum.terms",       "seed",
      "threads",              "theta.min",
      "theta.max",            "theta.count",
      "windows.samples",      "windows.partition_samples",
      "localization.m",       "localization.bands",
      "uncorrelation.bands",  "uncorrelation.theta",
      "uncorrelation.n_reps", "uncorrelation.envelope_order",
      "gof.bands",            "gof.n_reps",
      "gof.delta",            "gof.epsilon",
      "gof.hypothesis_alpha", "gof.region",
  };
  return keys;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Uniform row sink: CSV with a header row, or one JSON object per line.
class RowWriter {
 public:
  RowWriter(std::ostream& out, Format format, std::vector<std::string> columns)
      : out_(out), format_(format), columns_(std::move(columns)) {
    if (format_ == Format::kCsv) {
      for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i) out_ << ',';
        out_ << columns_[i];
      }
      out_ << '\n';
    }
  }

  void row(const std::vector<ordered_json>& values) {
    if (values.size() != columns_.size()) {
      throw std::logic_error("row width mismatch");
    }
    if (format_ == Format::kCsv) {
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out_ << ',';
        const auto& v = values[i];
        if (v.is_number_float()) {
          out_ << fmt(v.get<double>());
        } else {
          out_ << v.dump();
        }
      }
      out_ << '\n';
    } else {
      ordered_json obj;
      obj["schema_version"] = 1;
      for (std::size_t i = 0; i < values.size(); ++i) obj[columns_[i]] = values[i];
      out_ << obj.dump() << '\n';
    }
  }

  void comment(const std::string& name, double value) {
    if (format_ == Format::kCsv) {
      out_ << "# " << name << "," << fmt(value) << '\n';
    } else {
      ordered_json obj;
      obj["schema_version"] = 1;
      obj[name] = value;
      out_ << obj.dump() << '\n';
    }
  }

 private:
  std::ostream& out_;
  Format format_;
  std::vector<std::string> columns_;
};

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::runtime_error(std::string("non-finite value in ") + what);
  }
}

}  // namespace

KeyValues parse_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    std::size_t eq = s.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    }
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(lineno) +
                        ": empty key or value");
    }
    if (kv.entries.count(key)) {
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" +
                        key + "'");
    }
    kv.entries[key] = value;
    kv.lines[key] = lineno;
  }
  return kv;
}

ExperimentConfig ExperimentConfig::load(const KeyValues& kv) {
  for (const auto& [key, value] : kv.entries) {
    if (!known_keys().count(key)) {
      throw ConfigError("line " + std::to_string(kv.lines.at(key)) +
                        ": unknown key '" + key + "'");
    }
  }
  ExperimentConfig cfg;
  auto get = [&](const char* key) -> const std::string* {
    auto it = kv.entries.find(key);
    return it == kv.entries.end() ? nullptr : &it->second;
  };
  if (auto* v = get("scales.type")) cfg.scales_type = *v;
  if (cfg.scales_type != "geometric" && cfg.scales_type != "custom") {
    throw ConfigError("scales.type must be 'geometric' or 'custom'");
  }
  if (auto* v = get("scales.bandwidth")) cfg.bandwidth = parse_double("scales.bandwidth", *v);
  if (auto* v = get("scales.j_max")) cfg.j_max = parse_int("scales.j_max", *v);
  if (auto* v = get("scales.values")) {
    for (const auto& item : split(*v, ',')) {
      cfg.scale_values.push_back(parse_double("scales.values", item));
    }
  }
  if (auto* v = get("dim")) cfg.dim = parse_int("dim", *v);
  if (auto* v = get("spectrum.model")) cfg.spectrum_model = *v;
  if (cfg.spectrum_model != "power_law" && cfg.spectrum_model != "oscillatory") {
    throw ConfigError("spectrum.model must be 'power_law' or 'oscillatory'");
  }
  if (auto* v = get("spectrum.alpha")) cfg.alpha = parse_double("spectrum.alpha", *v);
  if (auto* v = get("spectrum.amplitude")) cfg.amplitude = parse_double("spectrum.amplitude", *v);
  if (auto* v = get("spectrum.terms")) {
    for (const auto& item : split(*v, ',')) {
      auto parts = split(item, ':');
      if (parts.size() != 4) {
        throw ConfigError("spectrum.terms entries must be c:d:M:beta");
      }
      cfg.spectrum_terms.push_back(
          {parse_double("spectrum.terms", parts[0]),
           parse_double("spectrum.terms", parts[1]),
           parse_double("spectrum.terms", parts[2]),
           parse_double("spectrum.terms", parts[3])});
    }
  }
  if (auto* v = get("seed")) cfg.seed = parse_u64("seed", *v);
  if (auto* v = get("threads")) cfg.threads = parse_int("threads", *v);
  if (cfg.threads < 1) throw ConfigError("threads must be at least 1");
  if (auto* v = get("theta.min")) cfg.theta_min = parse_double("theta.min", *v);
  if (auto* v = get("theta.max")) cfg.theta_max = parse_double("theta.max", *v);
  if (auto* v = get("theta.count")) cfg.theta_count = parse_int("theta.count", *v);
  if (auto* v = get("windows.samples")) cfg.window_samples = parse_int("windows.samples", *v);
  if (auto* v = get("windows.partition_samples")) {
    cfg.partition_samples = parse_int("windows.partition_samples", *v);
  }
  if (auto* v = get("localization.m")) cfg.localization_m = parse_int("localization.m", *v);
  if (auto* v = get("localization.bands")) {
    cfg.localization_bands.clear();
    for (const auto& item : split(*v, ',')) {
      cfg.localization_bands.push_back(parse_int("localization.bands", item));
    }
  }
  if (auto* v = get("uncorrelation.bands")) {
    cfg.uncorrelation_bands.clear();
    for (const auto& item : split(*v, ',')) {
      cfg.uncorrelation_bands.push_back(parse_int("uncorrelation.bands", item));
    }
  }
  if (auto* v = get("uncorrelation.theta")) {
    cfg.uncorrelation_thetas.clear();
    for (const auto& item : split(*v, ',')) {
      cfg.uncorrelation_thetas.push_back(parse_double("uncorrelation.theta", item));
    }
  }
  if (auto* v = get("uncorrelation.n_reps")) {
    cfg.uncorrelation_reps = parse_int("uncorrelation.n_reps", *v);
  }
  if (auto* v = get("uncorrelation.envelope_order")) {
    cfg.envelope_order = parse_int("uncorrelation.envelope_order", *v);
  }
  if (auto* v = get("gof.bands")) {
    cfg.gof_bands.clear();
    for (const auto& item : split(*v, ',')) {
      cfg.gof_bands.push_back(parse_int("gof.bands", item));
    }
  }
  if (auto* v = get("gof.n_reps")) cfg.gof_reps = parse_int("gof.n_reps", *v);
  if (auto* v = get("gof.delta")) cfg.gof_delta = parse_double("gof.delta", *v);
  if (auto* v = get("gof.epsilon")) cfg.gof_epsilon = parse_double("gof.epsilon", *v);
  if (auto* v = get("gof.hypothesis_alpha")) {
    cfg.hypothesis_alpha = parse_double("gof.hypothesis_alpha", *v);
  }
  if (auto* v = get("gof.region")) {
    auto parts = split(*v, ':');
    if (parts.size() != 3) {
      throw ConfigError("gof.region must be theta:phi:radius");
    }
    double theta = parse_double("gof.region", parts[0]);
    double phi = parse_double("gof.region", parts[1]);
    double radius = parse_double("gof.region", parts[2]);
    cfg.gof_region = SphericalCap{
        {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
         std::cos(theta)},
        radius};
  }
  return cfg;
}

ScaleSequence ExperimentConfig::make_scales() const {
  if (scales_type == "custom") {
    if (scale_values.empty()) {
      throw ConfigError("scales.values required for custom scales");
    }
    return ScaleSequence::custom(scale_values);
  }
  return ScaleSequence::geometric(bandwidth, j_max);
}

PowerSpectrum ExperimentConfig::make_spectrum() const {
  if (spectrum_model == "oscillatory") {
    if (spectrum_terms.empty()) {
      throw ConfigError("spectrum.terms required for the oscillatory model");
    }
    return PowerSpectrum::oscillatory(alpha, spectrum_terms);
  }
  return PowerSpectrum::power_law(alpha, amplitude);
}

PowerSpectrum ExperimentConfig::make_hypothesized_spectrum() const {
  if (!hypothesis_alpha) return make_spectrum();
  if (spectrum_model == "oscillatory") {
    return PowerSpectrum::oscillatory(*hypothesis_alpha, spectrum_terms);
  }
  return PowerSpectrum::power_law(*hypothesis_alpha, amplitude);
}

std::vector<double> ExperimentConfig::make_theta_grid() const {
  double hi = theta_max < 0.0 ? M_PI : theta_max;
  if (!(theta_min > 0.0) || !(hi > theta_min) || theta_count < 2) {
    throw ConfigError("invalid theta grid");
  }
  std::vector<double> grid(static_cast<std::size_t>(theta_count));
  double a = std::log(theta_min);
  double b = std::log(hi);
  for (int i = 0; i < theta_count; ++i) {
    grid[static_cast<std::size_t>(i)] =
        std::exp(a + (b - a) * i / (theta_count - 1));
  }
  grid.back() = hi;
  return grid;
}

void cmd_windows(const ExperimentConfig& cfg, std::ostream& out, Format fmt) {
  WindowFamily windows(cfg.make_scales());
  RowWriter w(out, fmt, {"j", "u", "a_j", "b_j"});
  for (int j = 0; j < windows.count(); ++j) {
    auto [lo, hi] = windows.scales().support_interval(j);
    for (int i = 0; i < cfg.window_samples; ++i) {
      double u = lo + (hi - lo) * i / (cfg.window_samples - 1);
      double a = windows.step(j, u);
      double b = windows.value(j, u);
      require_finite(b, "window table");
      w.row({j, u, a, b});
    }
  }
  double coverage = windows.scales().value(windows.scales().j_max() - 1);
  std::vector<double> grid(static_cast<std::size_t>(cfg.partition_samples));
  for (int i = 0; i < cfg.partition_samples; ++i) {
    grid[static_cast<std::size_t>(i)] =
        1.0 + (coverage - 1.0) * i / (cfg.partition_samples - 1);
  }
  w.comment("max_partition_deviation", windows.partition_deviation(grid));
}

void cmd_localization(const ExperimentConfig& cfg, std::ostream& out,
                      Format fmt) {
  WindowFamily windows(cfg.make_scales());
  SphereDim dim(cfg.dim);
  auto grid = cfg.make_theta_grid();
  RowWriter w(out, fmt, {"j", "d", "theta", "value", "envelope", "ratio"});
  for (int j : cfg.localization_bands) {
    auto rows = localization_report(windows, dim, j, cfg.localization_m, grid);
    for (const auto& r : rows) {
      require_finite(r.ratio, "localization report");
      w.row({j, cfg.dim, r.theta, r.kernel_abs, r.envelope, r.ratio});
    }
  }
}

void cmd_uncorrelation(const ExperimentConfig& cfg, std::ostream& out,
                       Format fmt) {
  WindowFamily windows(cfg.make_scales());
  SphereDim dim(2);
  PowerSpectrum spectrum = cfg.make_spectrum();
  RowWriter w(out, fmt,
              {"j", "theta", "corr_analytic", "corr_mc", "mc_se", "envelope"});
  for (int j : cfg.uncorrelation_bands) {
    for (double theta : cfg.uncorrelation_thetas) {
      double analytic = needlet_correlation(windows, dim, spectrum, j, theta);
      Vec3 x{0.0, 0.0, 1.0};
      Vec3 y{std::sin(theta), 0.0, std::cos(theta)};
      auto mc = empirical_needlet_correlation(spectrum, windows, j, x, y,
                                              cfg.uncorrelation_reps, cfg.seed);
      double env = correlation_envelope(windows.scales(), j, cfg.envelope_order,
                                        spectrum.beta_effective(), theta);
      require_finite(analytic, "analytic correlation");
      require_finite(mc.estimate, "monte-carlo correlation");
      w.row({j, theta, analytic, mc.estimate, mc.standard_error, env});
    }
  }
}

void cmd_gof(const ExperimentConfig& cfg, std::ostream& out, Format fmt) {
  WindowFamily windows(cfg.make_scales());
  PowerSpectrum truth = cfg.make_spectrum();
  PowerSpectrum hypothesized = cfg.make_hypothesized_spectrum();
  RowWriter w(out, fmt,
              {"j", "I_j", "card_Dj", "mean", "var", "skew", "kurt", "n_reps",
               "seed"});
  for (int j : cfg.gof_bands) {
    GofRunConfig run_cfg;
    run_cfg.j = j;
    run_cfg.n_reps = cfg.gof_reps;
    run_cfg.seed = cfg.seed;
    run_cfg.threads = cfg.threads;
    run_cfg.subsample =
        SubsampleSpec{cfg.gof_delta, cfg.gof_epsilon,
                      truth.beta_effective(), cfg.gof_region};
    auto result = run_gof(windows, truth, hypothesized, run_cfg);
    require_finite(result.statistics.front(), "gof statistic");
    w.row({j, result.statistics.front(), result.card, result.moments.mean,
           result.moments.variance, result.moments.skewness,
           result.moments.excess_kurtosis, cfg.gof_reps, cfg.seed});
  }
}

void cmd_coeffs(const ExperimentConfig& cfg, std::ostream& out, Format fmt) {
  WindowFamily windows(cfg.make_scales());
  NeedletTransform transform(std::move(windows));
  PowerSpectrum spectrum = cfg.make_spectrum();
  auto sample =
      sample_harmonics(spectrum, transform.coverage_l_max(), cfg.seed);
  auto coeffs = transform.analyze_all(sample.coefficients);
  RowWriter w(out, fmt, {"j", "k", "theta_k", "phi_k", "lambda_k", "beta_jk"});
  for (int j = 0; j < transform.band_count(); ++j) {
    const auto& grid = transform.grid(j);
    const auto& beta = coeffs.per_band[static_cast<std::size_t>(j)];
    for (std::size_t k = 0; k < beta.size(); ++k) {
      require_finite(beta[k], "needlet coefficients");
      w.row({j, k, grid.colatitude(k), grid.longitude(k), grid.weights()[k],
             beta[k]});
    }
  }
}

void cmd_sample(const ExperimentConfig& cfg, std::ostream& out, Format fmt) {
  WindowFamily windows(cfg.make_scales());
  NeedletTransform transform(std::move(windows));
  PowerSpectrum spectrum = cfg.make_spectrum();
  auto sample =
      sample_harmonics(spectrum, transform.coverage_l_max(), cfg.seed);
  RowWriter w(out, fmt, {"ell", "m", "a_lm"});
  for (int ell = 1; ell <= sample.coefficients.l_max; ++ell) {
    for (int m = 1; m <= 2 * ell + 1; ++m) {
      w.row({ell, m, sample.coefficients.at(ell, m)});
    }
  }
}

int run(int argc, char** argv) {
  CLI::App app{
      "Flexible-bandwidth spherical needlets: window tables, localization "
      "and uncorrelation reports, and spectrum goodness-of-fit runs.\n"
      "Experiments are configured by a key = value file (see --config); "
      "every command is deterministic given (config, seed, threads)."};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_path;
  std::string format = "";
  std::uint64_t seed_override = 0;
  bool seed_given = false;
  int threads_override = 0;
  app.add_option("--config", config_path, "Path to the key = value config file");
  app.add_option("--out", out_path, "Output path (default: stdout)");
  app.add_option("--format", format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", seed_override, "Seed override (uint64)")
      ->each([&](const std::string&) { seed_given = true; });
  app.add_option("--threads", threads_override,
                 "Worker threads for Monte-Carlo commands");

  auto* windows_cmd = app.add_subcommand(
      "windows", "Window table (j, u, a_j, b_j) + partition-of-unity summary");
  auto* localization_cmd = app.add_subcommand(
      "localization", "Needlet kernel vs localization envelope per band");
  auto* uncorrelation_cmd = app.add_subcommand(
      "uncorrelation",
      "Analytic vs Monte-Carlo needlet correlation with bound envelope");
  auto* gof_cmd = app.add_subcommand(
      "gof", "Goodness-of-fit statistic I_j over Monte-Carlo replications");
  auto* coeffs_cmd = app.add_subcommand(
      "coeffs", "Needlet coefficients of one simulated field");
  auto* sample_cmd = app.add_subcommand(
      "sample", "Harmonic coefficients of one simulated field");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfigError;
  }

  try {
    KeyValues kv;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "cannot open config: " << config_path << "\n";
        return kIoError;
      }
      kv = parse_key_values(in);
    }
    ExperimentConfig cfg = ExperimentConfig::load(kv);
    if (seed_given) cfg.seed = seed_override;
    if (threads_override > 0) cfg.threads = threads_override;

    Format out_format = Format::kCsv;
    if (format.empty()) {
      out_format = gof_cmd->parsed() ? Format::kJson : Format::kCsv;
    } else {
      out_format = format == "json" ? Format::kJson : Format::kCsv;
    }

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
      file.open(out_path);
      if (!file) {
        std::cerr << "cannot open output: " << out_path << "\n";
        return kIoError;
      }
      out = &file;
    }

    if (windows_cmd->parsed()) cmd_windows(cfg, *out, out_format);
    if (localization_cmd->parsed()) cmd_localization(cfg, *out, out_format);
    if (uncorrelation_cmd->parsed()) cmd_uncorrelation(cfg, *out, out_format);
    if (gof_cmd->parsed()) cmd_gof(cfg, *out, out_format);
    if (coeffs_cmd->parsed()) cmd_coeffs(cfg, *out, out_format);
    if (sample_cmd->parsed()) cmd_sample(cfg, *out, out_format);

    out->flush();
    if (!*out) {
      std::cerr << "write failure\n";
      return kIoError;
    }
    return kOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::out_of_range& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericalError;
  }
}

}  // namespace needlets::cli
