#pragma once

#include <span>
#include <vector>

#include "needlets/field.hpp"
#include "needlets/harmonics.hpp"
#include "needlets/window.hpp"

namespace needlets {

// Real sequence over multipoles with finite support, stored dense from
// first_ell; entries outside the stored range are zero (and r_{-1} = 0).
struct MultipoleSequence {
  int first_ell = 0;
  std::vector<double> values;

  double at(int ell) const {
    int i = ell - first_ell;
    if (ell < 0 || i < 0 || i >= static_cast<int>(values.size())) return 0.0;
    return values[static_cast<std::size_t>(i)];
  }
  int last_ell() const {
    return first_ell + static_cast<int>(values.size()) - 1;
  }
};

// Coefficients of the discrete operator
// Upsilon_d(ell) = upsilon_1 Delta- Delta+ + upsilon_0 Delta+.
double upsilon_second_coeff(const SphereDim& dim, int ell);  // ell/(2(ell+eta))
double upsilon_first_coeff(const SphereDim& dim, int ell);   // 2eta/(2(ell+eta))

// One application of Upsilon_d; support grows by one on each side.
MultipoleSequence apply_upsilon(const SphereDim& dim,
                                const MultipoleSequence& r);

// N-fold application.
MultipoleSequence apply_upsilon(const SphereDim& dim, MultipoleSequence r,
                                int n);

// sum_ell r_ell Z_{ell;d}(t), one recurrence pass.
double zonal_expansion(const SphereDim& dim, const MultipoleSequence& r,
                       double t);

// max over the theta grid of
// |(cos th - 1)^N sum r_ell Z_ell(cos th) - sum (Upsilon^N r)_ell Z_ell(cos th)|.
double gegenbauer_identity_error(const SphereDim& dim,
                                 const MultipoleSequence& r, int n,
                                 std::span<const double> theta_grid);

// Needlet kernel Psi_j(t) = sum_{ell in band j} b_j(ell) Z_{ell;d}(t).
double needlet_kernel(const WindowFamily& windows, const SphereDim& dim, int j,
                      double t);

// Covariance kernel Phi_j(t) = sum b_j(ell)^2 C_ell Z_{ell;d}(t), equal to
// Cov(beta_j(x), beta_j(y)) at <x,y> = t.
double covariance_kernel(const WindowFamily& windows, const SphereDim& dim,
                         const PowerSpectrum& spectrum, int j, double t);

// Phi_j(cos theta) / Phi_j(1).
double needlet_correlation(const WindowFamily& windows, const SphereDim& dim,
                           const PowerSpectrum& spectrum, int j, double theta);

// Localization bound envelope
// (S_{j+1}^d - S_{j-1}^d) max{S_{j-1}^{-2M}, (S_j - S_{j-1})^{-2M}} theta^{-2M}.
double localization_envelope(const ScaleSequence& scales, const SphereDim& dim,
                             int j, int m_order, double theta);

// Uncorrelation bound envelope
// max{(S_{j-1}^{1-beta} theta)^{-2N}, ((S_j - S_{j-1}) theta)^{-2N}}.
double correlation_envelope(const ScaleSequence& scales, int j, int n_order,
                            double beta, double theta);

struct LocalizationRow {
  double theta;
  double kernel_abs;
  double envelope;
  double ratio;
};

// Measured |Psi_j| against the localization envelope; m_order must exceed d.
std::vector<LocalizationRow> localization_report(
    const WindowFamily& windows, const SphereDim& dim, int j, int m_order,
    std::span<const double> theta_grid);

// 64 logarithmically spaced angles in [1e-3, pi].
std::vector<double> default_theta_grid();

}  // namespace needlets
