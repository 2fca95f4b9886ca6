#include "needlets/gof.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "needlets/rng.hpp"

namespace needlets {

std::vector<std::size_t> select_subsample(const CubatureGrid& grid,
                                          const ScaleSequence& scales, int j,
                                          const SubsampleSpec& spec) {
  if (!(spec.delta > 0.0) || !(spec.epsilon > 0.0)) {
    throw std::invalid_argument("delta and epsilon must be positive");
  }
  if (!(spec.beta >= 0.0 && spec.beta + spec.epsilon < 1.0)) {
    throw std::invalid_argument("need beta >= 0 and beta + epsilon < 1");
  }
  double threshold =
      spec.delta / std::pow(scales.value(j - 1), 1.0 - spec.beta - spec.epsilon);
  std::vector<std::size_t> chosen;
  const auto& pts = grid.points();
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (spec.region &&
        geodesic_distance(pts[k], spec.region->center) > spec.region->radius) {
      continue;
    }
    bool ok = true;
    for (std::size_t c : chosen) {
      if (geodesic_distance(pts[k], pts[c]) <= threshold) {
        ok = false;
        break;
      }
    }
    if (ok) chosen.push_back(k);
  }
  return chosen;
}

double expected_coeff_variance(const WindowFamily& windows, int j,
                               double weight, const PowerSpectrum& spectrum) {
  double sum = 0.0;
  for (int ell : windows.multipoles(j)) {
    double b = windows.value_at(j, ell);
    sum += b * b * (2.0 * ell + 1.0) / (4.0 * M_PI) * spectrum(ell);
  }
  return weight * sum;
}

double gof_statistic(std::span<const double> beta,
                     std::span<const double> expected_variance) {
  if (beta.size() != expected_variance.size()) {
    throw std::invalid_argument("beta/expected variance size mismatch");
  }
  if (beta.size() < 2) {
    throw std::invalid_argument("subsample must contain at least 2 points");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < beta.size(); ++k) {
    if (!(expected_variance[k] > 0.0)) {
      throw std::invalid_argument("expected variance must be positive");
    }
    sum += beta[k] * beta[k] / expected_variance[k] - 1.0;
  }
  return sum / std::sqrt(2.0 * static_cast<double>(beta.size()));
}

namespace {

struct CentralMoments {
  double m2, m3, m4;
};

CentralMoments central_moments(double p1, double p2, double p3, double p4,
                               double n) {
  double mean = p1 / n;
  double m2 = p2 / n - mean * mean;
  double m3 = p3 / n - 3.0 * mean * p2 / n + 2.0 * mean * mean * mean;
  double m4 = p4 / n - 4.0 * mean * p3 / n + 6.0 * mean * mean * p2 / n -
              3.0 * mean * mean * mean * mean;
  return {m2, m3, m4};
}

}  // namespace

MomentSummary moment_diagnostics(std::span<const double> samples) {
  std::size_t n = samples.size();
  if (n < 200) throw std::invalid_argument("too few replications");
  double p1 = 0.0, p2 = 0.0, p3 = 0.0, p4 = 0.0;
  for (double x : samples) {
    p1 += x;
    double x2 = x * x;
    p2 += x2;
    p3 += x2 * x;
    p4 += x2 * x2;
  }
  double dn = static_cast<double>(n);
  auto [m2, m3, m4] = central_moments(p1, p2, p3, p4, dn);
  if (!(m2 > 0.0)) {
    throw std::runtime_error("degenerate sample: zero variance");
  }
  MomentSummary out{};
  out.count = n;
  out.mean = p1 / dn;
  out.variance = m2 * dn / (dn - 1.0);
  out.skewness = m3 / std::pow(m2, 1.5);
  out.excess_kurtosis = m4 / (m2 * m2) - 3.0;

  // jackknife standard errors from leave-one-out functionals
  double s_mean = 0.0, s_var = 0.0, s_skew = 0.0, s_kurt = 0.0;
  double q_mean = 0.0, q_var = 0.0, q_skew = 0.0, q_kurt = 0.0;
  for (double x : samples) {
    double x2 = x * x;
    double n1 = dn - 1.0;
    auto [l2, l3, l4] =
        central_moments(p1 - x, p2 - x2, p3 - x2 * x, p4 - x2 * x2, n1);
    double t_mean = (p1 - x) / n1;
    double t_var = l2 * n1 / (n1 - 1.0);
    double t_skew = l3 / std::pow(l2, 1.5);
    double t_kurt = l4 / (l2 * l2) - 3.0;
    s_mean += t_mean;
    q_mean += t_mean * t_mean;
    s_var += t_var;
    q_var += t_var * t_var;
    s_skew += t_skew;
    q_skew += t_skew * t_skew;
    s_kurt += t_kurt;
    q_kurt += t_kurt * t_kurt;
  }
  auto jack_se = [dn](double s, double q) {
    double var = q / dn - (s / dn) * (s / dn);
    return std::sqrt(std::max(0.0, (dn - 1.0) * var));
  };
  out.mean_se = jack_se(s_mean, q_mean);
  out.variance_se = jack_se(s_var, q_var);
  out.skewness_se = jack_se(s_skew, q_skew);
  out.kurtosis_se = jack_se(s_kurt, q_kurt);
  return out;
}

GofRunResult run_gof(const WindowFamily& windows,
                     const PowerSpectrum& true_spectrum,
                     const PowerSpectrum& hypothesized,
                     const GofRunConfig& config) {
  int j = config.j;
  if (j < 1 || j >= windows.count()) {
    throw std::out_of_range("gof band index must lie in [1, j_max - 1]");
  }
  if (config.n_reps < 1) throw std::invalid_argument("n_reps must be positive");
  const ScaleSequence& scales = windows.scales();
  CubatureGrid grid =
      CubatureGrid::build(static_cast<int>(std::ceil(scales.value(j + 1))));
  std::vector<std::size_t> subsample =
      select_subsample(grid, scales, j, config.subsample);
  std::size_t card = subsample.size();
  if (card < 2) {
    throw std::runtime_error("subsample too small for the statistic");
  }

  auto ells = windows.multipoles(j);
  if (ells.empty()) throw std::runtime_error("empty window support");
  int l_lo = ells.front();
  int l_hi = ells.back();
  std::size_t row_len = HarmonicCoefficients::packed_size(l_hi) -
                        HarmonicCoefficients::offset(l_lo);
  std::size_t row_off = HarmonicCoefficients::offset(l_lo);

  // windowed, weight-scaled basis rows at the subsampled points
  std::vector<double> rows(card * row_len);
  std::vector<double> expected(card);
  {
    std::vector<double> basis(HarmonicCoefficients::packed_size(l_hi));
    for (std::size_t i = 0; i < card; ++i) {
      std::size_t k = subsample[i];
      real_harmonic_basis(l_hi, grid.colatitude(k), grid.longitude(k), basis);
      double root_weight = std::sqrt(grid.weights()[k]);
      for (int ell : ells) {
        double bw = windows.value_at(j, ell) * root_weight;
        std::size_t off = HarmonicCoefficients::offset(ell);
        for (int m = 0; m < 2 * ell + 1; ++m) {
          rows[i * row_len + off - row_off + static_cast<std::size_t>(m)] =
              bw * basis[off + static_cast<std::size_t>(m)];
        }
      }
      expected[i] =
          expected_coeff_variance(windows, j, grid.weights()[k], hypothesized);
    }
  }

  std::vector<double> statistics(static_cast<std::size_t>(config.n_reps));
  auto run_rep = [&](int rep) {
    HarmonicCoefficients alm = sample_harmonics_band(
        true_spectrum, l_lo, l_hi, config.seed, static_cast<std::uint64_t>(rep));
    double sum = 0.0;
    for (std::size_t i = 0; i < card; ++i) {
      double beta = 0.0;
      const double* row = rows.data() + i * row_len;
      const double* a = alm.values.data() + row_off;
      for (std::size_t t = 0; t < row_len; ++t) beta += row[t] * a[t];
      sum += beta * beta / expected[i] - 1.0;
    }
    statistics[static_cast<std::size_t>(rep)] =
        sum / std::sqrt(2.0 * static_cast<double>(card));
  };

  int threads = std::max(1, config.threads);
  if (threads == 1 || config.n_reps < 2 * threads) {
    for (int rep = 0; rep < config.n_reps; ++rep) run_rep(rep);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (int rep = next.fetch_add(1); rep < config.n_reps;
             rep = next.fetch_add(1)) {
          run_rep(rep);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  GofRunResult out;
  out.j = j;
  out.card = card;
  out.statistics = std::move(statistics);
  if (config.n_reps >= 200) {
    out.moments = moment_diagnostics(out.statistics);
  } else {
    out.moments = MomentSummary{};
    out.moments.count = out.statistics.size();
  }
  out.expected_variances = std::move(expected);
  return out;
}

}  // namespace needlets
