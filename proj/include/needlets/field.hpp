#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "needlets/grid.hpp"
#include "needlets/harmonics.hpp"
#include "needlets/window.hpp"

namespace needlets {

// One term of the oscillatory spectrum model
// c * (d + sin(ell^beta / M)) * ell^{-alpha}.
struct OscillatoryTerm {
  double amplitude;        // c > 0
  double offset;           // d > 1, keeps the modulation positive
  double frequency_scale;  // M > 0
  double exponent;         // beta in (0, 1)
};

// Angular power spectrum C_ell = ell^{-alpha} g(ell) with alpha > 2 and g
// bounded above and away from zero.  beta_effective() is the regularity
// exponent of g: 0 for a pure power law, max_p beta_p for the oscillatory
// model.
class PowerSpectrum {
 public:
  static PowerSpectrum power_law(double alpha, double amplitude = 1.0);
  static PowerSpectrum oscillatory(double alpha,
                                   std::vector<OscillatoryTerm> terms);

  double operator()(int ell) const;

  double alpha() const { return alpha_; }
  double beta_effective() const { return beta_effective_; }
  bool is_power_law() const { return terms_.empty(); }
  double amplitude() const { return amplitude_; }
  const std::vector<OscillatoryTerm>& terms() const { return terms_; }

 private:
  PowerSpectrum() = default;

  double alpha_ = 0.0;
  double amplitude_ = 1.0;
  double beta_effective_ = 0.0;
  std::vector<OscillatoryTerm> terms_;
};

struct HarmonicSample {
  HarmonicCoefficients coefficients;
  std::uint64_t seed = 0;
  std::uint64_t replication = 0;
};

// Independent zero-mean Gaussian coefficients a_{ell,m} with variance C_ell
// in the real basis.  Each (replication, ell) pair draws from its own
// counter-based stream, so bands can be regenerated independently and
// replications run in parallel with no shared state.
HarmonicSample sample_harmonics(const PowerSpectrum& spectrum, int l_max,
                                std::uint64_t seed,
                                std::uint64_t replication = 0);

// Draw only the coefficients for ell in [l_lo, l_hi]; values agree exactly
// with the matching slice of sample_harmonics.
HarmonicCoefficients sample_harmonics_band(const PowerSpectrum& spectrum,
                                           int l_lo, int l_hi,
                                           std::uint64_t seed,
                                           std::uint64_t replication);

// Pointwise field values f(x) = sum_{ell,m} a_{ell,m} Y_{ell,m}(x).
std::vector<double> synthesize_field(const HarmonicCoefficients& alm,
                                     std::span<const Vec3> points);

struct CorrelationEstimate {
  double estimate;
  double standard_error;  // jackknife over replications
  int n_reps;
};

// Monte-Carlo correlation of the needlet band field beta_j at two points,
// over independent field draws.  Serves as the independent oracle for the
// analytic needlet correlation.
CorrelationEstimate empirical_needlet_correlation(
    const PowerSpectrum& spectrum, const WindowFamily& windows, int j,
    const Vec3& x, const Vec3& y, int n_reps, std::uint64_t seed);

}  // namespace needlets
