#include "needlets/scale.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace needlets {

ScaleSequence::ScaleSequence(std::vector<double> values)
    : values_(std::move(values)) {}

ScaleSequence ScaleSequence::geometric(double bandwidth, int j_max) {
  if (!(bandwidth > 1.0)) {
    throw std::invalid_argument("invalid bandwidth: B must exceed 1");
  }
  if (j_max < 1) {
    throw std::invalid_argument("j_max must be at least 1");
  }
  std::vector<double> v(static_cast<std::size_t>(j_max) + 1);
  for (int j = 0; j <= j_max; ++j) {
    v[static_cast<std::size_t>(j)] = std::pow(bandwidth, j);
  }
  v[0] = 1.0;
  return ScaleSequence(std::move(v));
}

ScaleSequence ScaleSequence::custom(std::vector<double> values) {
  if (values.empty()) {
    throw std::invalid_argument("scale sequence must not be empty");
  }
  if (values.front() != 1.0) {
    throw std::invalid_argument("first scale value must be 1");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || values[i] <= 0.0) {
      throw std::invalid_argument("scale values must be positive and finite");
    }
    if (i > 0 && values[i] <= values[i - 1]) {
      throw std::invalid_argument("scale values must be strictly increasing");
    }
  }
  for (std::size_t i = 2; i < values.size(); ++i) {
    double prev_gap = values[i - 1] - values[i - 2];
    double gap = values[i] - values[i - 1];
    if (gap < prev_gap) {
      throw std::invalid_argument(
          "decreasing gaps: S_j - S_{j-1} must be non-decreasing");
    }
  }
  return ScaleSequence(std::move(values));
}

double ScaleSequence::value(int j) const {
  if (j == -1) return 0.0;
  if (j < 0 || j > j_max()) {
    throw std::out_of_range("scale index out of range: " + std::to_string(j));
  }
  return values_[static_cast<std::size_t>(j)];
}

std::pair<double, double> ScaleSequence::support_interval(int j) const {
  if (j < 0 || j > j_max() - 1) {
    throw std::out_of_range("band index out of range: " + std::to_string(j));
  }
  return {value(j - 1), value(j + 1)};
}

}  // namespace needlets
