#include "needlets/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace needlets {

double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

double geodesic_distance(const Vec3& a, const Vec3& b) {
  Vec3 c{a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
  double cross = std::sqrt(dot(c, c));
  return std::atan2(cross, dot(a, b));
}

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(static_cast<std::size_t>(n));
  w.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double deriv = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      deriv = n * (t * p1 - p0) / (t * t - 1.0);
      double step = p1 / deriv;
      t -= step;
      if (std::abs(step) < 1e-15) break;
    }
    // recompute at the converged node
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    deriv = n * (t * p1 - p0) / (t * t - 1.0);
    x[static_cast<std::size_t>(i)] = t;
    w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - t * t) * deriv * deriv);
  }
}

}  // namespace

CubatureGrid CubatureGrid::build(int l_exact) {
  if (l_exact < 0) throw std::invalid_argument("l_exact must be non-negative");
  CubatureGrid g;
  g.l_exact_ = l_exact;
  int n_rings = l_exact + 1;
  g.n_phi_ = static_cast<std::size_t>(2 * l_exact + 1);
  std::vector<double> x, w;
  gauss_legendre(n_rings, x, w);
  g.ring_cos_ = x;
  g.points_.reserve(static_cast<std::size_t>(n_rings) * g.n_phi_);
  g.weights_.reserve(g.points_.capacity());
  double phi_weight = 2.0 * M_PI / static_cast<double>(g.n_phi_);
  for (int i = 0; i < n_rings; ++i) {
    double ct = x[static_cast<std::size_t>(i)];
    double st = std::sqrt(1.0 - ct * ct);
    for (std::size_t k = 0; k < g.n_phi_; ++k) {
      double phi = 2.0 * M_PI * static_cast<double>(k) /
                   static_cast<double>(g.n_phi_);
      g.points_.push_back({st * std::cos(phi), st * std::sin(phi), ct});
      g.weights_.push_back(w[static_cast<std::size_t>(i)] * phi_weight);
    }
  }
  return g;
}

double CubatureGrid::colatitude(std::size_t k) const {
  return std::acos(ring_cos_[k / n_phi_]);
}

double CubatureGrid::longitude(std::size_t k) const {
  return 2.0 * M_PI * static_cast<double>(k % n_phi_) /
         static_cast<double>(n_phi_);
}

double CubatureGrid::min_spacing() const {
  double best = M_PI;
  for (std::size_t a = 0; a < points_.size(); ++a) {
    for (std::size_t b = a + 1; b < points_.size(); ++b) {
      best = std::min(best, geodesic_distance(points_[a], points_[b]));
    }
  }
  return best;
}

NeedletTransform::NeedletTransform(WindowFamily windows)
    : windows_(std::move(windows)) {
  grids_.reserve(static_cast<std::size_t>(windows_.count()));
  for (int j = 0; j < windows_.count(); ++j) {
    double hi = windows_.scales().value(j + 1);
    grids_.push_back(CubatureGrid::build(static_cast<int>(std::ceil(hi))));
  }
}

const CubatureGrid& NeedletTransform::grid(int j) const {
  if (j < 0 || j >= band_count()) {
    throw std::out_of_range("band index out of range");
  }
  return grids_[static_cast<std::size_t>(j)];
}

int NeedletTransform::coverage_l_max() const {
  return static_cast<int>(
      std::floor(windows_.scales().value(windows_.scales().j_max() - 1)));
}

std::vector<double> NeedletTransform::analyze(const HarmonicCoefficients& alm,
                                              int j) const {
  const CubatureGrid& g = grid(j);
  auto ells = windows_.multipoles(j);
  if (!ells.empty() && ells.back() > g.exactness()) {
    throw std::invalid_argument("band limit exceeds grid exactness");
  }
  int l_hi = 0;
  for (int ell : ells) {
    if (ell <= alm.l_max) l_hi = std::max(l_hi, ell);
  }
  std::vector<double> beta(g.size(), 0.0);
  if (l_hi == 0) return beta;

  std::vector<double> legendre(assoc_legendre_size(l_hi));
  std::vector<double> cosk(static_cast<std::size_t>(l_hi) + 1);
  std::vector<double> sink(static_cast<std::size_t>(l_hi) + 1);
  const double root2 = std::sqrt(2.0);
  std::size_t ring = g.ring_size();
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (k % ring == 0) {
      double ct = g.points()[k].z;
      normalized_assoc_legendre(l_hi, ct, std::sqrt(1.0 - ct * ct), legendre);
    }
    double phi = g.longitude(k);
    for (int m = 0; m <= l_hi; ++m) {
      cosk[static_cast<std::size_t>(m)] = std::cos(m * phi);
      sink[static_cast<std::size_t>(m)] = std::sin(m * phi);
    }
    double acc = 0.0;
    for (int ell : ells) {
      if (ell > alm.l_max) continue;
      double b = windows_.value_at(j, ell);
      std::size_t base = static_cast<std::size_t>(ell) * (ell + 1) / 2;
      std::size_t off = HarmonicCoefficients::offset(ell);
      double s = legendre[base] * alm.values[off];
      for (int m = 1; m <= ell; ++m) {
        double p = root2 * legendre[base + static_cast<std::size_t>(m)];
        s += p * (cosk[static_cast<std::size_t>(m)] *
                      alm.values[off + 2 * static_cast<std::size_t>(m) - 1] +
                  sink[static_cast<std::size_t>(m)] *
                      alm.values[off + 2 * static_cast<std::size_t>(m)]);
      }
      acc += b * s;
    }
    beta[k] = std::sqrt(g.weights()[k]) * acc;
  }
  return beta;
}

NeedletCoefficients NeedletTransform::analyze_all(
    const HarmonicCoefficients& alm) const {
  if (alm.l_max > coverage_l_max()) {
    throw std::invalid_argument("band limit exceeds window coverage");
  }
  NeedletCoefficients out;
  out.per_band.reserve(static_cast<std::size_t>(band_count()));
  for (int j = 0; j < band_count(); ++j) {
    out.per_band.push_back(analyze(alm, j));
  }
  return out;
}

HarmonicCoefficients NeedletTransform::synthesize(
    const NeedletCoefficients& coeffs, int l_max) const {
  if (coeffs.per_band.size() != static_cast<std::size_t>(band_count())) {
    throw std::invalid_argument("coefficient band count mismatch");
  }
  HarmonicCoefficients alm(l_max);
  for (int j = 0; j < band_count(); ++j) {
    const CubatureGrid& g = grid(j);
    const auto& beta = coeffs.per_band[static_cast<std::size_t>(j)];
    if (beta.size() != g.size()) {
      throw std::invalid_argument("coefficient grid size mismatch");
    }
    auto ells = windows_.multipoles(j);
    int l_hi = 0;
    for (int ell : ells) {
      if (ell <= l_max) l_hi = std::max(l_hi, ell);
    }
    if (l_hi == 0) continue;

    std::vector<double> legendre(assoc_legendre_size(l_hi));
    std::vector<double> cosk(static_cast<std::size_t>(l_hi) + 1);
    std::vector<double> sink(static_cast<std::size_t>(l_hi) + 1);
    const double root2 = std::sqrt(2.0);
    std::size_t ring = g.ring_size();
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (k % ring == 0) {
        double ct = g.points()[k].z;
        normalized_assoc_legendre(l_hi, ct, std::sqrt(1.0 - ct * ct), legendre);
      }
      double gk = std::sqrt(g.weights()[k]) * beta[k];
      if (gk == 0.0) continue;
      double phi = g.longitude(k);
      for (int m = 0; m <= l_hi; ++m) {
        cosk[static_cast<std::size_t>(m)] = std::cos(m * phi);
        sink[static_cast<std::size_t>(m)] = std::sin(m * phi);
      }
      for (int ell : ells) {
        if (ell > l_max) continue;
        double bg = windows_.value_at(j, ell) * gk;
        std::size_t base = static_cast<std::size_t>(ell) * (ell + 1) / 2;
        std::size_t off = HarmonicCoefficients::offset(ell);
        alm.values[off] += bg * legendre[base];
        for (int m = 1; m <= ell; ++m) {
          double p = root2 * legendre[base + static_cast<std::size_t>(m)] * bg;
          alm.values[off + 2 * static_cast<std::size_t>(m) - 1] +=
              p * cosk[static_cast<std::size_t>(m)];
          alm.values[off + 2 * static_cast<std::size_t>(m)] +=
              p * sink[static_cast<std::size_t>(m)];
        }
      }
    }
  }
  return alm;
}

double NeedletTransform::parseval_ratio(const HarmonicCoefficients& alm) const {
  double denom = alm.norm_squared();
  if (denom == 0.0) throw std::invalid_argument("zero-norm input");
  auto coeffs = analyze_all(alm);
  double num = 0.0;
  for (const auto& band : coeffs.per_band) {
    for (double b : band) num += b * b;
  }
  return num / denom;
}

}  // namespace needlets
