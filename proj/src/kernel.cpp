#include "needlets/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace needlets {

double upsilon_second_coeff(const SphereDim& dim, int ell) {
  return ell / (2.0 * (ell + dim.eta));
}

double upsilon_first_coeff(const SphereDim& dim, int ell) {
  return 2.0 * dim.eta / (2.0 * (ell + dim.eta));
}

MultipoleSequence apply_upsilon(const SphereDim& dim,
                                const MultipoleSequence& r) {
  MultipoleSequence out;
  out.first_ell = std::max(0, r.first_ell - 1);
  int last = r.last_ell() + 1;
  out.values.assign(static_cast<std::size_t>(last - out.first_ell) + 1, 0.0);
  for (int ell = out.first_ell; ell <= last; ++ell) {
    double fwd = r.at(ell + 1) - r.at(ell);
    double lap = r.at(ell + 1) - 2.0 * r.at(ell) + r.at(ell - 1);
    out.values[static_cast<std::size_t>(ell - out.first_ell)] =
        upsilon_second_coeff(dim, ell) * lap + upsilon_first_coeff(dim, ell) * fwd;
  }
  return out;
}

MultipoleSequence apply_upsilon(const SphereDim& dim, MultipoleSequence r,
                                int n) {
  if (n < 0) throw std::invalid_argument("n must be non-negative");
  for (int i = 0; i < n; ++i) r = apply_upsilon(dim, r);
  return r;
}

double zonal_expansion(const SphereDim& dim, const MultipoleSequence& r,
                       double t) {
  if (std::abs(t) > 1.0) {
    throw std::invalid_argument("argument must lie in [-1, 1]");
  }
  int last = r.last_ell();
  if (last < 0 || r.values.empty()) return 0.0;
  double acc = r.at(0) / dim.omega;
  double prev = 1.0;               // G_0
  double cur = 2.0 * dim.eta * t;  // G_1
  if (last >= 1) {
    acc += r.at(1) * (1.0 + dim.eta) / (dim.eta * dim.omega) * cur;
  }
  for (int n = 2; n <= last; ++n) {
    double next = (2.0 * t * (n + dim.eta - 1.0) * cur -
                   (n + 2.0 * dim.eta - 2.0) * prev) /
                  n;
    prev = cur;
    cur = next;
    double c = r.at(n);
    if (c != 0.0) acc += c * (n + dim.eta) / (dim.eta * dim.omega) * cur;
  }
  return acc;
}

double gegenbauer_identity_error(const SphereDim& dim,
                                 const MultipoleSequence& r, int n,
                                 std::span<const double> theta_grid) {
  MultipoleSequence rn = apply_upsilon(dim, r, n);
  double worst = 0.0;
  for (double theta : theta_grid) {
    double t = std::cos(theta);
    double lhs = std::pow(t - 1.0, n) * zonal_expansion(dim, r, t);
    double rhs = zonal_expansion(dim, rn, t);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

namespace {

MultipoleSequence window_sequence(const WindowFamily& windows, int j) {
  auto ells = windows.multipoles(j);
  MultipoleSequence r;
  if (ells.empty()) return r;
  r.first_ell = ells.front();
  r.values.reserve(ells.size());
  for (int ell : ells) r.values.push_back(windows.value_at(j, ell));
  return r;
}

void check_kernel_band(const WindowFamily& windows, int j) {
  if (j < 1 || j >= windows.count()) {
    throw std::out_of_range("kernel band index must lie in [1, j_max - 1]");
  }
}

}  // namespace

double needlet_kernel(const WindowFamily& windows, const SphereDim& dim, int j,
                      double t) {
  check_kernel_band(windows, j);
  return zonal_expansion(dim, window_sequence(windows, j), t);
}

double covariance_kernel(const WindowFamily& windows, const SphereDim& dim,
                         const PowerSpectrum& spectrum, int j, double t) {
  check_kernel_band(windows, j);
  MultipoleSequence r = window_sequence(windows, j);
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    int ell = r.first_ell + static_cast<int>(i);
    r.values[i] *= r.values[i] * spectrum(ell);
  }
  return zonal_expansion(dim, r, t);
}

double needlet_correlation(const WindowFamily& windows, const SphereDim& dim,
                           const PowerSpectrum& spectrum, int j, double theta) {
  double variance = covariance_kernel(windows, dim, spectrum, j, 1.0);
  if (!(variance > 0.0)) {
    throw std::runtime_error("zero variance: empty window support");
  }
  return covariance_kernel(windows, dim, spectrum, j, std::cos(theta)) /
         variance;
}

double localization_envelope(const ScaleSequence& scales, const SphereDim& dim,
                             int j, int m_order, double theta) {
  double lo = scales.value(j - 1);
  double mid = scales.value(j);
  double hi = scales.value(j + 1);
  double band = std::pow(hi, dim.d) - std::pow(lo, dim.d);
  double scale = std::max(std::pow(lo, -2.0 * m_order),
                          std::pow(mid - lo, -2.0 * m_order));
  return band * scale * std::pow(theta, -2.0 * m_order);
}

double correlation_envelope(const ScaleSequence& scales, int j, int n_order,
                            double beta, double theta) {
  double lo = scales.value(j - 1);
  double gap = scales.value(j) - lo;
  double a = std::pow(std::pow(lo, 1.0 - beta) * theta, -2.0 * n_order);
  double b = std::pow(gap * theta, -2.0 * n_order);
  return std::max(a, b);
}

std::vector<LocalizationRow> localization_report(
    const WindowFamily& windows, const SphereDim& dim, int j, int m_order,
    std::span<const double> theta_grid) {
  check_kernel_band(windows, j);
  if (m_order <= dim.d) {
    throw std::invalid_argument("M must exceed d");
  }
  MultipoleSequence r = window_sequence(windows, j);
  std::vector<LocalizationRow> rows;
  rows.reserve(theta_grid.size());
  for (double theta : theta_grid) {
    if (!(theta > 0.0 && theta <= M_PI)) {
      throw std::invalid_argument("theta must lie in (0, pi]");
    }
    double value = std::abs(zonal_expansion(dim, r, std::cos(theta)));
    double env = localization_envelope(windows.scales(), dim, j, m_order, theta);
    rows.push_back({theta, value, env, value / env});
  }
  return rows;
}

std::vector<double> default_theta_grid() {
  constexpr int kCount = 64;
  std::vector<double> grid(kCount);
  double lo = std::log(1e-3);
  double hi = std::log(M_PI);
  for (int i = 0; i < kCount; ++i) {
    grid[static_cast<std::size_t>(i)] =
        std::exp(lo + (hi - lo) * i / (kCount - 1));
  }
  grid.back() = M_PI;
  return grid;
}

}  // namespace needlets
