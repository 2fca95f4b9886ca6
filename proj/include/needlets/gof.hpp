#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "needlets/field.hpp"
#include "needlets/grid.hpp"
#include "needlets/scale.hpp"
#include "needlets/window.hpp"

namespace needlets {

struct SphericalCap {
  Vec3 center;
  double radius;  // angular radius in radians
};

// Distance-constrained subsampling of cubature points: accepted points are
// pairwise farther than delta / S_{j-1}^{1 - beta - epsilon}.
struct SubsampleSpec {
  double delta;
  double epsilon;
  double beta = 0.0;  // spectrum regularity exponent
  std::optional<SphericalCap> region;
};

// Greedy maximal subset in fixed index order; deterministic.
std::vector<std::size_t> select_subsample(const CubatureGrid& grid,
                                          const ScaleSequence& scales, int j,
                                          const SubsampleSpec& spec);

// E{beta_{j,k}^2} = lambda_k sum_{ell in band} b_j(ell)^2 (2ell+1) C_ell / (4 pi).
double expected_coeff_variance(const WindowFamily& windows, int j,
                               double weight, const PowerSpectrum& spectrum);

// I_j = (2 card)^{-1/2} sum_k (beta_k^2 / E_k - 1) over the subsampled
// coefficients; beta and expected_variance are aligned arrays.
double gof_statistic(std::span<const double> beta,
                     std::span<const double> expected_variance);

struct MomentSummary {
  double mean;
  double variance;  // unbiased sample variance
  double skewness;
  double excess_kurtosis;
  double mean_se;
  double variance_se;
  double skewness_se;
  double kurtosis_se;
  std::size_t count;
};

// Sample moments with jackknife standard errors; needs at least 200
// replications and non-degenerate variance.
MomentSummary moment_diagnostics(std::span<const double> samples);

// Full pipeline replicated n_reps times: simulate under true_spectrum,
// compute the subsampled coefficients, form I_j against the hypothesized
// spectrum.  Replications use independent counter-based streams and fill
// their own slots, so the result is identical for any thread count.
struct GofRunConfig {
  int j;
  int n_reps;
  std::uint64_t seed;
  int threads = 1;
  SubsampleSpec subsample;
};

struct GofRunResult {
  int j;
  std::size_t card;
  std::vector<double> statistics;  // one I_j per replication
  MomentSummary moments;
  std::vector<double> expected_variances;
};

GofRunResult run_gof(const WindowFamily& windows,
                     const PowerSpectrum& true_spectrum,
                     const PowerSpectrum& hypothesized,
                     const GofRunConfig& config);

}  // namespace needlets
