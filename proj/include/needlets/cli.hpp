#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "needlets/field.hpp"
#include "needlets/gof.hpp"
#include "needlets/scale.hpp"

namespace needlets::cli {

// Exit codes: 0 success, 1 config error, 2 numerical failure, 3 I/O failure.
enum ExitCode : int {
  kOk = 0,
  kConfigError = 1,
  kNumericalError = 2,
  kIoError = 3,
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct KeyValues {
  std::map<std::string, std::string> entries;
  std::map<std::string, int> lines;
};

// key = value lines, '#' comments, duplicate or malformed lines rejected
// with their line number.
KeyValues parse_key_values(std::istream& in);

struct ExperimentConfig {
  // scales
  std::string scales_type = "geometric";
  double bandwidth = 2.0;
  int j_max = 6;
  std::vector<double> scale_values;
  // geometry / spectrum
  int dim = 2;
  std::string spectrum_model = "power_law";
  double alpha = 3.0;
  double amplitude = 1.0;
  std::vector<OscillatoryTerm> spectrum_terms;
  // run control
  std::uint64_t seed = 0;
  int threads = 1;
  // theta grid
  double theta_min = 1e-3;
  double theta_max = -1.0;  // <0 means pi
  int theta_count = 64;
  // windows
  int window_samples = 65;
  int partition_samples = 1000;
  // localization
  int localization_m = 3;
  std::vector<int> localization_bands = {3, 4, 5};
  // uncorrelation
  std::vector<int> uncorrelation_bands = {2, 3, 4, 5};
  std::vector<double> uncorrelation_thetas = {0.4};
  int uncorrelation_reps = 2000;
  int envelope_order = 2;
  // goodness of fit
  std::vector<int> gof_bands = {3, 4, 5};
  int gof_reps = 2000;
  double gof_delta = 2.0;
  double gof_epsilon = 0.1;
  std::optional<double> hypothesis_alpha;
  std::optional<SphericalCap> gof_region;

  static ExperimentConfig load(const KeyValues& kv);

  ScaleSequence make_scales() const;
  PowerSpectrum make_spectrum() const;
  PowerSpectrum make_hypothesized_spectrum() const;
  std::vector<double> make_theta_grid() const;
};

enum class Format { kCsv, kJson };

// Individual commands; write rows to `out`, throw on failure.
void cmd_windows(const ExperimentConfig& cfg, std::ostream& out, Format fmt);
void cmd_localization(const ExperimentConfig& cfg, std::ostream& out,
                      Format fmt);
void cmd_uncorrelation(const ExperimentConfig& cfg, std::ostream& out,
                       Format fmt);
void cmd_gof(const ExperimentConfig& cfg, std::ostream& out, Format fmt);
void cmd_coeffs(const ExperimentConfig& cfg, std::ostream& out, Format fmt);
void cmd_sample(const ExperimentConfig& cfg, std::ostream& out, Format fmt);

// Full command-line entry point.
int run(int argc, char** argv);

}  // namespace needlets::cli
