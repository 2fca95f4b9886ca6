#include "needlets/harmonics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace needlets {

SphereDim::SphereDim(int dimension) : d(dimension) {
  if (dimension < 2) {
    throw std::invalid_argument("sphere dimension must be at least 2");
  }
  eta = 0.5 * (dimension - 1);
  omega = 2.0 * std::pow(M_PI, 0.5 * (dimension + 1)) /
          std::tgamma(0.5 * (dimension + 1));
}

double gegenbauer(int ell, double eta, double t) {
  if (ell < 0) throw std::invalid_argument("degree must be non-negative");
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
  if (std::abs(t) > 1.0) {
    throw std::invalid_argument("argument must lie in [-1, 1]");
  }
  if (ell == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * eta * t;
  for (int n = 2; n <= ell; ++n) {
    double next =
        (2.0 * t * (n + eta - 1.0) * cur - (n + 2.0 * eta - 2.0) * prev) / n;
    prev = cur;
    cur = next;
  }
  return cur;
}

double zonal(int ell, const SphereDim& dim, double t) {
  return (ell + dim.eta) / (dim.eta * dim.omega) * gegenbauer(ell, dim.eta, t);
}

namespace {

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

}  // namespace

std::int64_t eigenspace_dimension(int ell, const SphereDim& dim) {
  if (ell < 0) throw std::invalid_argument("degree must be non-negative");
  if (ell == 0) return 1;
  // dim of harmonic homogeneous polynomials of degree ell on R^{d+1}
  return binomial(ell + dim.d, dim.d) - binomial(ell + dim.d - 2, dim.d);
}

ZonalTable::ZonalTable(const SphereDim& dim, int l_max,
                       std::vector<double> t_grid)
    : l_max_(l_max), t_grid_(std::move(t_grid)) {
  if (l_max < 0) throw std::invalid_argument("l_max must be non-negative");
  values_.resize(static_cast<std::size_t>(l_max + 1) * t_grid_.size());
  for (std::size_t i = 0; i < t_grid_.size(); ++i) {
    double t = t_grid_[i];
    if (std::abs(t) > 1.0) {
      throw std::invalid_argument("grid argument must lie in [-1, 1]");
    }
    double prev = 1.0;
    double cur = 2.0 * dim.eta * t;
    values_[i] = dim.eta / (dim.eta * dim.omega);
    if (l_max >= 1) {
      values_[t_grid_.size() + i] = (1.0 + dim.eta) / (dim.eta * dim.omega) * cur;
    }
    for (int n = 2; n <= l_max; ++n) {
      double next = (2.0 * t * (n + dim.eta - 1.0) * cur -
                     (n + 2.0 * dim.eta - 2.0) * prev) /
                    n;
      prev = cur;
      cur = next;
      values_[static_cast<std::size_t>(n) * t_grid_.size() + i] =
          (n + dim.eta) / (dim.eta * dim.omega) * cur;
    }
  }
}

double ZonalTable::value(int ell, std::size_t t_index) const {
  if (ell < 0 || ell > l_max_ || t_index >= t_grid_.size()) {
    throw std::out_of_range("zonal table index out of range");
  }
  return values_[static_cast<std::size_t>(ell) * t_grid_.size() + t_index];
}

void normalized_assoc_legendre(int l_max, double ct, double st,
                               std::span<double> out) {
  if (out.size() < assoc_legendre_size(l_max)) {
    throw std::invalid_argument("output span too small");
  }
  auto idx = [](int l, int m) {
    return static_cast<std::size_t>(l) * (l + 1) / 2 + m;
  };
  out[0] = std::sqrt(1.0 / (4.0 * M_PI));
  for (int m = 1; m <= l_max; ++m) {
    out[idx(m, m)] =
        out[idx(m - 1, m - 1)] * st * std::sqrt((2.0 * m + 1.0) / (2.0 * m));
  }
  for (int m = 0; m < l_max; ++m) {
    out[idx(m + 1, m)] = ct * std::sqrt(2.0 * m + 3.0) * out[idx(m, m)];
  }
  for (int m = 0; m <= l_max; ++m) {
    for (int l = m + 2; l <= l_max; ++l) {
      double a = std::sqrt((4.0 * l * l - 1.0) /
                           (static_cast<double>(l) * l - static_cast<double>(m) * m));
      double b = std::sqrt(
          ((static_cast<double>(l - 1) * (l - 1) - static_cast<double>(m) * m)) /
          (4.0 * static_cast<double>(l - 1) * (l - 1) - 1.0));
      out[idx(l, m)] = a * (ct * out[idx(l - 1, m)] - b * out[idx(l - 2, m)]);
    }
  }
}

double spherical_harmonic(int ell, int m, double colatitude, double longitude) {
  if (ell < 0) throw std::invalid_argument("degree must be non-negative");
  if (m < 1 || m > 2 * ell + 1) {
    throw std::out_of_range("component index out of range: " +
                            std::to_string(m));
  }
  std::vector<double> table(assoc_legendre_size(ell));
  normalized_assoc_legendre(ell, std::cos(colatitude), std::sin(colatitude),
                            table);
  std::size_t base = static_cast<std::size_t>(ell) * (ell + 1) / 2;
  if (m == 1) return table[base];
  int k = m / 2;
  double p = std::sqrt(2.0) * table[base + k];
  return (m % 2 == 0) ? p * std::cos(k * longitude)
                      : p * std::sin(k * longitude);
}

double HarmonicCoefficients::norm_squared() const {
  double s = 0.0;
  for (double v : values) s += v * v;
  return s;
}

void real_harmonic_basis(int l_max, double colatitude, double longitude,
                         std::span<double> out) {
  if (out.size() < HarmonicCoefficients::packed_size(l_max)) {
    throw std::invalid_argument("output span too small");
  }
  std::vector<double> table(assoc_legendre_size(l_max));
  normalized_assoc_legendre(l_max, std::cos(colatitude), std::sin(colatitude),
                            table);
  std::vector<double> cosk(static_cast<std::size_t>(l_max) + 1);
  std::vector<double> sink(static_cast<std::size_t>(l_max) + 1);
  for (int k = 0; k <= l_max; ++k) {
    cosk[static_cast<std::size_t>(k)] = std::cos(k * longitude);
    sink[static_cast<std::size_t>(k)] = std::sin(k * longitude);
  }
  const double root2 = std::sqrt(2.0);
  for (int ell = 1; ell <= l_max; ++ell) {
    std::size_t base = static_cast<std::size_t>(ell) * (ell + 1) / 2;
    std::size_t off = HarmonicCoefficients::offset(ell);
    out[off] = table[base];
    for (int k = 1; k <= ell; ++k) {
      double p = root2 * table[base + k];
      out[off + 2 * k - 1] = p * cosk[static_cast<std::size_t>(k)];
      out[off + 2 * k] = p * sink[static_cast<std::size_t>(k)];
    }
  }
}

}  // namespace needlets
