#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace needlets {

// Ambient sphere S^d with its Gegenbauer index eta = (d-1)/2 and surface
// measure omega = 2 pi^{(d+1)/2} / Gamma((d+1)/2).
struct SphereDim {
  explicit SphereDim(int dimension);

  int d;
  double eta;
  double omega;
};

// Gegenbauer polynomial G_ell^(eta)(t) by the three-term recurrence.
// eta = 1/2 reduces to the Legendre polynomial with P_ell(1) = 1.
double gegenbauer(int ell, double eta, double t);

// Zonal kernel Z_{ell;d}(t) = ((ell + eta) / (eta omega)) G_ell^(eta)(t);
// for d = 2 this is (2 ell + 1)/(4 pi) P_ell(t).
double zonal(int ell, const SphereDim& dim, double t);

// Exact dimension of the degree-ell eigenspace on S^d.
std::int64_t eigenspace_dimension(int ell, const SphereDim& dim);

// Tabulated zonal kernel values over a fixed t grid, rows indexed by ell.
class ZonalTable {
 public:
  ZonalTable(const SphereDim& dim, int l_max, std::vector<double> t_grid);

  int l_max() const { return l_max_; }
  std::span<const double> t_grid() const { return t_grid_; }
  double value(int ell, std::size_t t_index) const;

 private:
  int l_max_;
  std::vector<double> t_grid_;
  std::vector<double> values_;  // row-major (ell, t)
};

// --- real orthonormal basis on S^2 ---------------------------------------
//
// Component indices m = 1..2*ell+1 map to the real basis as
//   m = 1      : zonal part, order 0
//   m = 2k     : sqrt(2) * Ptilde_ell^k(cos theta) * cos(k phi)
//   m = 2k + 1 : sqrt(2) * Ptilde_ell^k(cos theta) * sin(k phi)
// where Ptilde is the fully normalized associated Legendre function, so
// sum_m Y_{ell,m}(x)^2 = (2 ell + 1)/(4 pi) for every x.

double spherical_harmonic(int ell, int m, double colatitude, double longitude);

// Fully normalized associated Legendre values Ptilde_ell^m(cos theta) for
// 0 <= m <= ell <= l_max, written at index ell*(ell+1)/2 + m.
void normalized_assoc_legendre(int l_max, double cos_theta, double sin_theta,
                               std::span<double> out);

inline std::size_t assoc_legendre_size(int l_max) {
  return static_cast<std::size_t>(l_max + 1) * (l_max + 2) / 2;
}

// Real harmonic coefficients (or basis values) for ell = 1..l_max with the
// monopole excluded; block for degree ell starts at offset ell^2 - 1 and has
// 2*ell+1 entries indexed m = 1..2*ell+1.
struct HarmonicCoefficients {
  int l_max = 0;
  std::vector<double> values;

  static std::size_t offset(int ell) {
    return static_cast<std::size_t>(ell) * ell - 1;
  }
  static std::size_t packed_size(int l_max) {
    return static_cast<std::size_t>(l_max + 1) * (l_max + 1) - 1;
  }

  explicit HarmonicCoefficients(int l_max_in = 0)
      : l_max(l_max_in), values(packed_size(l_max_in), 0.0) {}

  double& at(int ell, int m) { return values[offset(ell) + m - 1]; }
  double at(int ell, int m) const { return values[offset(ell) + m - 1]; }

  double norm_squared() const;
};

// Basis values Y_{ell,m}(theta, phi) for ell = 1..l_max in the packed
// HarmonicCoefficients layout.
void real_harmonic_basis(int l_max, double colatitude, double longitude,
                         std::span<double> out);

}  // namespace needlets
