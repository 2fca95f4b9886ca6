#include "needlets/window.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace needlets {

namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1].
constexpr double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kGaussWeights[4] = {0.129484966168870, 0.279705391489277,
                                     0.381830050505119, 0.417959183673469};

void gk15(double a, double b, double& result, double& error) {
  double c = 0.5 * (a + b);
  double h = 0.5 * (b - a);
  double kronrod = kKronrodWeights[7] * bump(c);
  double gauss = kGaussWeights[3] * bump(c);
  for (int i = 0; i < 7; ++i) {
    double dx = h * kKronrodNodes[i];
    double pair = bump(c - dx) + bump(c + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  result = kronrod * h;
  error = std::abs(kronrod - gauss) * h;
}

double integrate_bump(double a, double b, double tol) {
  double result, error;
  gk15(a, b, result, error);
  if (error <= tol || b - a < 1e-14) return result;
  double c = 0.5 * (a + b);
  return integrate_bump(a, c, 0.5 * tol) + integrate_bump(c, b, 0.5 * tol);
}

constexpr double kQuadTol = 1e-13;

}  // namespace

double bump(double t) {
  if (std::abs(t) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - t * t));
}

double bump_normalization() {
  static const double c = integrate_bump(-1.0, 1.0, kQuadTol);
  return c;
}

double bump_primitive(double u) {
  if (u <= -1.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return integrate_bump(-1.0, u, kQuadTol) / bump_normalization();
}

WindowFamily::WindowFamily(ScaleSequence scales) : scales_(std::move(scales)) {
  int bands = count();
  first_ell_.resize(static_cast<std::size_t>(bands));
  ell_table_.resize(static_cast<std::size_t>(bands));
  ells_.resize(static_cast<std::size_t>(bands));
  for (int j = 0; j < bands; ++j) {
    auto [lo, hi] = scales_.support_interval(j);
    int first = std::max(1, static_cast<int>(std::floor(lo)) + 1);
    while (first <= lo) ++first;
    first_ell_[static_cast<std::size_t>(j)] = first;
    for (int ell = first; ell < hi; ++ell) {
      ell_table_[static_cast<std::size_t>(j)].push_back(value(j, ell));
      ells_[static_cast<std::size_t>(j)].push_back(ell);
    }
  }
}

void WindowFamily::check_band(int j) const {
  if (j < 0 || j >= count()) {
    throw std::out_of_range("window index out of range: " + std::to_string(j));
  }
}

double WindowFamily::step(int j, double u) const {
  if (j < 0 || j > scales_.j_max()) {
    throw std::out_of_range("step index out of range: " + std::to_string(j));
  }
  double lo = scales_.value(j - 1);
  double hi = scales_.value(j);
  if (u <= lo) return 1.0;
  if (u >= hi) return 0.0;
  return bump_primitive((hi + lo - 2.0 * u) / (hi - lo));
}

double WindowFamily::value(int j, double u) const {
  check_band(j);
  double diff = step(j + 1, u) - step(j, u);
  if (diff < 0.0) {
    if (diff < -1e-12) {
      throw std::runtime_error("window monotonicity violated");
    }
    diff = 0.0;
  }
  return std::sqrt(diff);
}

double WindowFamily::value_at(int j, int ell) const {
  check_band(j);
  const auto& table = ell_table_[static_cast<std::size_t>(j)];
  int idx = ell - first_ell_[static_cast<std::size_t>(j)];
  if (idx < 0 || idx >= static_cast<int>(table.size())) return 0.0;
  return table[static_cast<std::size_t>(idx)];
}

std::span<const int> WindowFamily::multipoles(int j) const {
  check_band(j);
  return ells_[static_cast<std::size_t>(j)];
}

double WindowFamily::partition_deviation(std::span<const double> u_grid) const {
  double coverage = scales_.value(scales_.j_max() - 1);
  double worst = 0.0;
  for (double u : u_grid) {
    if (u < 1.0 || u > coverage) {
      throw std::invalid_argument("grid value outside coverage range");
    }
    double sum = 0.0;
    for (int j = 0; j < count(); ++j) {
      double b = value(j, u);
      sum += b * b;
    }
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

double WindowFamily::derivative_bound_estimate(int j, int order,
                                               int probe_count) const {
  check_band(j);
  if (order < 1 || order > 4) {
    throw std::invalid_argument("derivative order must be in [1, 4]");
  }
  if (probe_count < 8) {
    throw std::invalid_argument("probe_count must be at least 8");
  }
  double lo = scales_.value(j - 1);
  double mid = scales_.value(j);
  double hi = scales_.value(j + 1);
  double width = mid - lo;
  double h = width * 1e-3;
  auto f = [&](double u) { return value(j, std::max(u, 0.0)); };
  double worst = 0.0;
  for (int i = 0; i < probe_count; ++i) {
    double u = lo + (hi - lo) * i / (probe_count - 1);
    double d;
    switch (order) {
      case 1:
        d = (f(u + h) - f(u - h)) / (2.0 * h);
        break;
      case 2:
        d = (f(u + h) - 2.0 * f(u) + f(u - h)) / (h * h);
        break;
      case 3:
        d = (f(u + 2 * h) - 2.0 * f(u + h) + 2.0 * f(u - h) - f(u - 2 * h)) /
            (2.0 * h * h * h);
        break;
      default:
        d = (f(u + 2 * h) - 4.0 * f(u + h) + 6.0 * f(u) - 4.0 * f(u - h) +
             f(u - 2 * h)) /
            (h * h * h * h);
        break;
    }
    worst = std::max(worst, std::abs(d) * std::pow(width, order));
  }
  return worst;
}

}  // namespace needlets
