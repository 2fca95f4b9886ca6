#pragma once

#include <cstddef>
#include <vector>

#include "needlets/harmonics.hpp"
#include "needlets/window.hpp"

namespace needlets {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

double dot(const Vec3& a, const Vec3& b);
double geodesic_distance(const Vec3& a, const Vec3& b);

// Gauss-Legendre colatitude rings times equispaced longitudes; integrates
// products of spherical harmonics exactly for degrees up to l_exact, with
// positive weights summing to 4 pi.
class CubatureGrid {
 public:
  static CubatureGrid build(int l_exact);

  int exactness() const { return l_exact_; }
  std::size_t size() const { return points_.size(); }
  std::size_t ring_count() const { return ring_cos_.size(); }
  std::size_t ring_size() const { return n_phi_; }

  const std::vector<Vec3>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }

  double colatitude(std::size_t k) const;
  double longitude(std::size_t k) const;

  // Minimum pairwise geodesic distance (polar-ring azimuthal spacing for
  // this family, so it scales like 1/l_exact^2).
  double min_spacing() const;

 private:
  CubatureGrid() = default;

  int l_exact_ = 0;
  std::size_t n_phi_ = 0;
  std::vector<Vec3> points_;
  std::vector<double> weights_;
  std::vector<double> ring_cos_;
};

// Per-band needlet coefficient arrays, aligned with each band's grid.
struct NeedletCoefficients {
  std::vector<std::vector<double>> per_band;
};

// Needlet analysis and synthesis on S^2 over one window family, with one
// cubature grid per band of exactness ceil(S_{j+1}).
class NeedletTransform {
 public:
  explicit NeedletTransform(WindowFamily windows);

  const WindowFamily& windows() const { return windows_; }
  int band_count() const { return windows_.count(); }
  const CubatureGrid& grid(int j) const;

  // Band limit the partition of unity covers: floor(S_{j_max - 1}).
  int coverage_l_max() const;

  // beta_{j,k} = sqrt(lambda_k) sum_{ell} b_j(ell) sum_m a_{ell,m} Y_{ell,m}(xi_k).
  std::vector<double> analyze(const HarmonicCoefficients& alm, int j) const;

  NeedletCoefficients analyze_all(const HarmonicCoefficients& alm) const;

  // a_{ell,m} = sum_j b_j(ell) sum_k sqrt(lambda_k) beta_{j,k} Y_{ell,m}(xi_k).
  HarmonicCoefficients synthesize(const NeedletCoefficients& coeffs,
                                  int l_max) const;

  // (sum_{j,k} beta^2) / (sum |a|^2); 1 for band-limited input by the
  // tight-frame identity.
  double parseval_ratio(const HarmonicCoefficients& alm) const;

 private:
  WindowFamily windows_;
  std::vector<CubatureGrid> grids_;
};

}  // namespace needlets
