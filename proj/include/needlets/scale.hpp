#pragma once

#include <span>
#include <utility>
#include <vector>

namespace needlets {

// Increasing multipole scale values S_0 < S_1 < ... < S_{j_max} with S_0 = 1
// and non-decreasing gaps.  Scale j delimits the harmonic support
// [S_{j-1}, S_{j+1}] of the j-th needlet band; S_{-1} is the pseudo-scale 0
// so that band 0 is well defined.
class ScaleSequence {
 public:
  static ScaleSequence geometric(double bandwidth, int j_max);
  static ScaleSequence custom(std::vector<double> values);

  // Index of the last scale value.
  int j_max() const { return static_cast<int>(values_.size()) - 1; }

  // S_j for j in [-1, j_max]; value(-1) == 0.
  double value(int j) const;

  std::span<const double> values() const { return values_; }

  // Harmonic support [S_{j-1}, S_{j+1}] of band j, for j in [0, j_max - 1].
  std::pair<double, double> support_interval(int j) const;

 private:
  explicit ScaleSequence(std::vector<double> values);

  std::vector<double> values_;
};

}  // namespace needlets
