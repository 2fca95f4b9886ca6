#pragma once

#include <span>
#include <vector>

#include "needlets/scale.hpp"

namespace needlets {

// C_c^infinity bump exp(-1/(1-t^2)) on (-1, 1), zero elsewhere.
double bump(double t);

// Normalizing constant of the bump primitive, integral of bump over [-1, 1].
double bump_normalization();

// Normalized primitive of the bump: 0 for u <= -1, 1 for u >= 1, monotone
// in between with value 1/2 at 0.
double bump_primitive(double u);

// The smooth window family {b_j} over a scale sequence: b_j rises from 0 at
// S_{j-1} to 1 at S_j and falls back to 0 at S_{j+1}, built from the
// step-down functions a_j so that sum_j b_j(u)^2 telescopes to 1 on
// [1, S_{j_max - 1}].  Values at integer multipoles are tabulated once at
// construction; the family is immutable afterwards.
class WindowFamily {
 public:
  explicit WindowFamily(ScaleSequence scales);

  const ScaleSequence& scales() const { return scales_; }

  // Number of windows; valid band indices are [0, count() - 1].
  int count() const { return scales_.j_max(); }

  // Step-down function a_j(u): 1 on [0, S_{j-1}], ramp on (S_{j-1}, S_j),
  // 0 on [S_j, inf).  Valid for j in [0, j_max].
  double step(int j, double u) const;

  // Window b_j(u) = sqrt(a_{j+1}(u) - a_j(u)), j in [0, count() - 1].
  double value(int j, double u) const;

  // Memoized b_j at an integer multipole.
  double value_at(int j, int ell) const;

  // Integer multipoles in the open support (S_{j-1}, S_{j+1}), ell >= 1.
  std::span<const int> multipoles(int j) const;

  // max over the grid of |sum_j b_j(u)^2 - 1|.  Grid values must lie in
  // [1, S_{j_max - 1}] so the telescoping sum is complete.
  double partition_deviation(std::span<const double> u_grid) const;

  // Scale-free estimate of the n-th derivative bound:
  // max over probes of |D^(n) b_j| * (S_j - S_{j-1})^n, by central finite
  // differences.  n is capped at 4; probe_count must be at least 8.
  double derivative_bound_estimate(int j, int order, int probe_count) const;

 private:
  void check_band(int j) const;

  ScaleSequence scales_;
  std::vector<int> first_ell_;                 // per band
  std::vector<std::vector<double>> ell_table_;  // memoized b_j(ell)
  std::vector<std::vector<int>> ells_;
};

}  // namespace needlets
