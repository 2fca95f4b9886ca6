#include "needlets/field.hpp"

#include <cmath>
#include <stdexcept>

#include "needlets/rng.hpp"

namespace needlets {

PowerSpectrum PowerSpectrum::power_law(double alpha, double amplitude) {
  if (!(alpha > 2.0)) throw std::invalid_argument("alpha must exceed 2");
  if (!(amplitude > 0.0)) throw std::invalid_argument("amplitude must be positive");
  PowerSpectrum s;
  s.alpha_ = alpha;
  s.amplitude_ = amplitude;
  s.beta_effective_ = 0.0;
  return s;
}

PowerSpectrum PowerSpectrum::oscillatory(double alpha,
                                         std::vector<OscillatoryTerm> terms) {
  if (!(alpha > 2.0)) throw std::invalid_argument("alpha must exceed 2");
  if (terms.empty()) throw std::invalid_argument("oscillatory model needs terms");
  double beta = 0.0;
  for (const auto& t : terms) {
    if (!(t.amplitude > 0.0)) throw std::invalid_argument("c_p must be positive");
    if (!(t.offset > 1.0)) throw std::invalid_argument("d_p must exceed 1");
    if (!(t.frequency_scale > 0.0)) throw std::invalid_argument("M_p must be positive");
    if (!(t.exponent > 0.0 && t.exponent < 1.0)) {
      throw std::invalid_argument("beta_p must lie in (0, 1)");
    }
    beta = std::max(beta, t.exponent);
  }
  PowerSpectrum s;
  s.alpha_ = alpha;
  s.beta_effective_ = beta;
  s.terms_ = std::move(terms);
  return s;
}

double PowerSpectrum::operator()(int ell) const {
  if (ell < 1) throw std::invalid_argument("spectrum is defined for ell >= 1");
  double decay = std::pow(static_cast<double>(ell), -alpha_);
  if (terms_.empty()) return amplitude_ * decay;
  double g = 0.0;
  for (const auto& t : terms_) {
    g += t.amplitude *
         (t.offset + std::sin(std::pow(static_cast<double>(ell), t.exponent) /
                              t.frequency_scale));
  }
  return g * decay;
}

HarmonicSample sample_harmonics(const PowerSpectrum& spectrum, int l_max,
                                std::uint64_t seed, std::uint64_t replication) {
  if (l_max < 1) throw std::invalid_argument("l_max must be at least 1");
  HarmonicSample out;
  out.seed = seed;
  out.replication = replication;
  out.coefficients = sample_harmonics_band(spectrum, 1, l_max, seed, replication);
  return out;
}

HarmonicCoefficients sample_harmonics_band(const PowerSpectrum& spectrum,
                                           int l_lo, int l_hi,
                                           std::uint64_t seed,
                                           std::uint64_t replication) {
  if (l_lo < 1 || l_hi < l_lo) throw std::invalid_argument("bad band range");
  HarmonicCoefficients alm(l_hi);
  for (int ell = l_lo; ell <= l_hi; ++ell) {
    double sigma = std::sqrt(spectrum(ell));
    rng::NormalStream stream(seed, replication, static_cast<std::uint32_t>(ell));
    std::size_t off = HarmonicCoefficients::offset(ell);
    for (int m = 0; m < 2 * ell + 1; ++m) {
      alm.values[off + static_cast<std::size_t>(m)] = sigma * stream.next();
    }
  }
  return alm;
}

std::vector<double> synthesize_field(const HarmonicCoefficients& alm,
                                     std::span<const Vec3> points) {
  std::vector<double> out;
  out.reserve(points.size());
  std::vector<double> basis(HarmonicCoefficients::packed_size(alm.l_max));
  for (const Vec3& p : points) {
    double ct = p.z;
    double theta = std::acos(std::min(1.0, std::max(-1.0, ct)));
    double phi = std::atan2(p.y, p.x);
    real_harmonic_basis(alm.l_max, theta, phi, basis);
    double s = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) s += basis[i] * alm.values[i];
    out.push_back(s);
  }
  return out;
}

CorrelationEstimate empirical_needlet_correlation(
    const PowerSpectrum& spectrum, const WindowFamily& windows, int j,
    const Vec3& x, const Vec3& y, int n_reps, std::uint64_t seed) {
  if (n_reps < 100) throw std::invalid_argument("n_reps must be at least 100");
  auto ells = windows.multipoles(j);
  if (ells.empty()) throw std::invalid_argument("empty window support");
  if (x.x == y.x && x.y == y.y && x.z == y.z) {
    return {1.0, 0.0, n_reps};
  }
  int l_lo = ells.front();
  int l_hi = ells.back();

  // windowed basis rows at the two probe points
  auto windowed_row = [&](const Vec3& p) {
    std::vector<double> basis(HarmonicCoefficients::packed_size(l_hi));
    double theta = std::acos(std::min(1.0, std::max(-1.0, p.z)));
    double phi = std::atan2(p.y, p.x);
    real_harmonic_basis(l_hi, theta, phi, basis);
    for (int ell : ells) {
      double b = windows.value_at(j, ell);
      std::size_t off = HarmonicCoefficients::offset(ell);
      for (int m = 0; m < 2 * ell + 1; ++m) {
        basis[off + static_cast<std::size_t>(m)] *= b;
      }
    }
    return basis;
  };
  std::vector<double> wx = windowed_row(x);
  std::vector<double> wy = windowed_row(y);

  std::vector<double> bx(static_cast<std::size_t>(n_reps));
  std::vector<double> by(static_cast<std::size_t>(n_reps));
  for (int r = 0; r < n_reps; ++r) {
    HarmonicCoefficients alm = sample_harmonics_band(
        spectrum, l_lo, l_hi, seed, static_cast<std::uint64_t>(r));
    double sx = 0.0, sy = 0.0;
    for (int ell : ells) {
      std::size_t off = HarmonicCoefficients::offset(ell);
      for (int m = 0; m < 2 * ell + 1; ++m) {
        double a = alm.values[off + static_cast<std::size_t>(m)];
        sx += a * wx[off + static_cast<std::size_t>(m)];
        sy += a * wy[off + static_cast<std::size_t>(m)];
      }
    }
    bx[static_cast<std::size_t>(r)] = sx;
    by[static_cast<std::size_t>(r)] = sy;
  }

  auto corr_without = [&](double sx, double sy, double sxx, double syy,
                          double sxy, double n) {
    double vx = sxx - sx * sx / n;
    double vy = syy - sy * sy / n;
    double cxy = sxy - sx * sy / n;
    if (vx <= 0.0 || vy <= 0.0) {
      throw std::runtime_error("degenerate variance in correlation estimate");
    }
    return cxy / std::sqrt(vx * vy);
  };

  double sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (int r = 0; r < n_reps; ++r) {
    double a = bx[static_cast<std::size_t>(r)];
    double b = by[static_cast<std::size_t>(r)];
    sx += a;
    sy += b;
    sxx += a * a;
    syy += b * b;
    sxy += a * b;
  }
  double n = static_cast<double>(n_reps);
  double estimate = corr_without(sx, sy, sxx, syy, sxy, n);

  // jackknife over replications
  std::vector<double> loo(static_cast<std::size_t>(n_reps));
  double loo_mean = 0.0;
  for (int r = 0; r < n_reps; ++r) {
    double a = bx[static_cast<std::size_t>(r)];
    double b = by[static_cast<std::size_t>(r)];
    loo[static_cast<std::size_t>(r)] = corr_without(
        sx - a, sy - b, sxx - a * a, syy - b * b, sxy - a * b, n - 1.0);
    loo_mean += loo[static_cast<std::size_t>(r)];
  }
  loo_mean /= n;
  double var = 0.0;
  for (double v : loo) var += (v - loo_mean) * (v - loo_mean);
  double se = std::sqrt((n - 1.0) / n * var);
  return {estimate, se, n_reps};
}

}  // namespace needlets
