#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "needlets/grid.hpp"
#include "needlets/rng.hpp"

using namespace needlets;

namespace {

HarmonicCoefficients random_coefficients(int l_max, std::uint64_t seed) {
  HarmonicCoefficients alm(l_max);
  rng::CounterStream rnd(seed, 0);
  for (auto& v : alm.values) v = 2.0 * rnd.next_uniform() - 1.0;
  return alm;
}

}  // namespace

TEST_CASE("geodesic distance") {
  Vec3 x{0.0, 0.0, 1.0};
  Vec3 y{1.0, 0.0, 0.0};
  Vec3 mx{0.0, 0.0, -1.0};
  CHECK(geodesic_distance(x, x) == 0.0);
  CHECK(geodesic_distance(x, y) == doctest::Approx(M_PI / 2).epsilon(1e-15));
  CHECK(geodesic_distance(y, x) == geodesic_distance(x, y));
  CHECK(std::abs(geodesic_distance(x, mx) - M_PI) < 1e-14);
}

TEST_CASE("degenerate grid integrates constants") {
  auto g = CubatureGrid::build(0);
  double total = 0.0;
  for (double w : g.weights()) total += w;
  CHECK(total == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
}

TEST_CASE("grid weights, norms and discrete orthonormality") {
  auto g = CubatureGrid::build(8);
  double total = 0.0;
  for (double w : g.weights()) {
    CHECK(w > 0.0);
    total += w;
  }
  CHECK(std::abs(total - 4.0 * M_PI) < 1e-10);
  for (const auto& p : g.points()) {
    CHECK(std::abs(dot(p, p) - 1.0) < 1e-14);
  }

  // gram matrix of the basis (including the constant) is the identity
  int l = g.exactness();
  std::size_t dim = HarmonicCoefficients::packed_size(l) + 1;
  std::vector<double> gram(dim * dim, 0.0);
  std::vector<double> basis(dim);
  std::vector<double> packed(HarmonicCoefficients::packed_size(l));
  for (std::size_t k = 0; k < g.size(); ++k) {
    real_harmonic_basis(l, g.colatitude(k), g.longitude(k), packed);
    basis[0] = 1.0 / std::sqrt(4.0 * M_PI);
    for (std::size_t i = 0; i < packed.size(); ++i) basis[i + 1] = packed[i];
    double w = g.weights()[k];
    for (std::size_t a = 0; a < dim; ++a) {
      for (std::size_t b = a; b < dim; ++b) {
        gram[a * dim + b] += w * basis[a] * basis[b];
      }
    }
  }
  double worst = 0.0;
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = a; b < dim; ++b) {
      double target = (a == b) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(gram[a * dim + b] - target));
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("low-degree orthonormality is near machine precision") {
  auto g = CubatureGrid::build(4);
  for (int m = 1; m <= 3; ++m) {
    for (int mp = 1; mp <= 3; ++mp) {
      double acc = 0.0;
      for (std::size_t k = 0; k < g.size(); ++k) {
        acc += g.weights()[k] *
               spherical_harmonic(1, m, g.colatitude(k), g.longitude(k)) *
               spherical_harmonic(1, mp, g.colatitude(k), g.longitude(k));
      }
      CHECK(std::abs(acc - (m == mp ? 1.0 : 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("reproducing kernel property under cubature") {
  SphereDim d2(2);
  auto g = CubatureGrid::build(32);
  Vec3 x{0.3, -0.4, std::sqrt(1.0 - 0.25)};
  Vec3 z{-0.1, 0.7, std::sqrt(1.0 - 0.5)};
  const int l_top = 16;
  // zonal tables Z_ell(<x, xi_k>) and Z_ell(<xi_k, z>) per grid point
  std::vector<std::vector<double>> zx(static_cast<std::size_t>(l_top) + 1,
                                      std::vector<double>(g.size()));
  std::vector<std::vector<double>> zz = zx;
  for (std::size_t k = 0; k < g.size(); ++k) {
    double tx = std::clamp(dot(x, g.points()[k]), -1.0, 1.0);
    double tz = std::clamp(dot(g.points()[k], z), -1.0, 1.0);
    for (int ell = 0; ell <= l_top; ++ell) {
      zx[static_cast<std::size_t>(ell)][k] = zonal(ell, d2, tx);
      zz[static_cast<std::size_t>(ell)][k] = zonal(ell, d2, tz);
    }
  }
  double txz = std::clamp(dot(x, z), -1.0, 1.0);
  double worst = 0.0;
  for (int ell = 0; ell <= l_top; ++ell) {
    for (int lp = 0; lp <= l_top; ++lp) {
      double acc = 0.0;
      for (std::size_t k = 0; k < g.size(); ++k) {
        acc += g.weights()[k] * zx[static_cast<std::size_t>(ell)][k] *
               zz[static_cast<std::size_t>(lp)][k];
      }
      double target = (ell == lp) ? zonal(ell, d2, txz) : 0.0;
      worst = std::max(worst, std::abs(acc - target));
    }
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("minimum spacing scales like the inverse squared degree") {
  // polar rings of the product grid cluster, so d_min * l^2 sits in a fixed
  // bracket while d_min * l drifts downward
  for (int l : {4, 8, 16, 32}) {
    auto g = CubatureGrid::build(l);
    double d = g.min_spacing();
    CHECK(d * l * l > 3.0);
    CHECK(d * l * l < 10.0);
  }
}

TEST_CASE("analysis of a pure harmonic at the band peak") {
  WindowFamily w(ScaleSequence::geometric(2.0, 5));
  NeedletTransform transform(w);
  // b_1(2) = 1 at the peak of band 1
  HarmonicCoefficients alm(2);
  alm.at(2, 3) = 1.0;
  auto beta = transform.analyze(alm, 1);
  const auto& g = transform.grid(1);
  for (std::size_t k = 0; k < g.size(); ++k) {
    double expected = std::sqrt(g.weights()[k]) *
                      spherical_harmonic(2, 3, g.colatitude(k), g.longitude(k));
    CHECK(beta[k] == doctest::Approx(expected).epsilon(1e-12).scale(1.0));
  }

  // harmonic outside the band: all coefficients vanish
  HarmonicCoefficients out(8);
  out.at(8, 5) = 1.0;
  auto beta2 = transform.analyze(out, 1);
  for (double b : beta2) CHECK(b == 0.0);

  // zero input
  HarmonicCoefficients zero(4);
  for (double b : transform.analyze(zero, 1)) CHECK(b == 0.0);
}

TEST_CASE("analysis is linear") {
  WindowFamily w(ScaleSequence::geometric(2.0, 5));
  NeedletTransform transform(w);
  auto a = random_coefficients(12, 3);
  auto b = random_coefficients(12, 4);
  HarmonicCoefficients sum(12);
  for (std::size_t i = 0; i < sum.values.size(); ++i) {
    sum.values[i] = a.values[i] + b.values[i];
  }
  for (int j : {2, 3}) {
    auto ba = transform.analyze(a, j);
    auto bb = transform.analyze(b, j);
    auto bs = transform.analyze(sum, j);
    for (std::size_t k = 0; k < bs.size(); ++k) {
      CHECK(bs[k] == doctest::Approx(ba[k] + bb[k]).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("discrete coefficients equal the continuous band field") {
  WindowFamily w(ScaleSequence::geometric(2.0, 5));
  NeedletTransform transform(w);
  auto alm = random_coefficients(16, 9);
  int j = 3;
  auto beta = transform.analyze(alm, j);
  const auto& g = transform.grid(j);
  std::vector<double> basis(HarmonicCoefficients::packed_size(16));
  for (std::size_t k = 0; k < g.size(); k += 37) {
    real_harmonic_basis(16, g.colatitude(k), g.longitude(k), basis);
    double field = 0.0;
    for (int ell : w.multipoles(j)) {
      if (ell > 16) continue;
      double bj = w.value_at(j, ell);
      std::size_t off = HarmonicCoefficients::offset(ell);
      for (int m = 0; m < 2 * ell + 1; ++m) {
        field += bj * alm.values[off + static_cast<std::size_t>(m)] *
                 basis[off + static_cast<std::size_t>(m)];
      }
    }
    CHECK(beta[k] == doctest::Approx(std::sqrt(g.weights()[k]) * field)
                         .epsilon(1e-10)
                         .scale(1.0));
  }
}

TEST_CASE("round trip recovers band-limited coefficients") {
  WindowFamily w(ScaleSequence::geometric(2.0, 5));
  NeedletTransform transform(w);
  for (std::uint64_t seed : {1, 2, 3}) {
    auto alm = random_coefficients(16, seed);
    auto coeffs = transform.analyze_all(alm);
    auto back = transform.synthesize(coeffs, 16);
    double worst = 0.0;
    for (std::size_t i = 0; i < alm.values.size(); ++i) {
      worst = std::max(worst, std::abs(back.values[i] - alm.values[i]));
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("single-band truncation filters by the squared window") {
  WindowFamily w(ScaleSequence::geometric(2.0, 5));
  NeedletTransform transform(w);
  auto alm = random_coefficients(16, 5);
  auto coeffs = transform.analyze_all(alm);
  int keep = 3;
  for (int j = 0; j < transform.band_count(); ++j) {
    if (j == keep) continue;
    for (auto& v : coeffs.per_band[static_cast<std::size_t>(j)]) v = 0.0;
  }
  auto back = transform.synthesize(coeffs, 16);
  for (int ell = 1; ell <= 16; ++ell) {
    double bj = w.value_at(keep, ell);
    for (int m = 1; m <= 2 * ell + 1; ++m) {
      CHECK(back.at(ell, m) == doctest::Approx(bj * bj * alm.at(ell, m))
                                   .epsilon(1e-10)
                                   .scale(1.0));
    }
  }
}

TEST_CASE("zero coefficients synthesize to zero") {
  WindowFamily w(ScaleSequence::geometric(2.0, 4));
  NeedletTransform transform(w);
  NeedletCoefficients zero;
  for (int j = 0; j < transform.band_count(); ++j) {
    zero.per_band.emplace_back(transform.grid(j).size(), 0.0);
  }
  auto alm = transform.synthesize(zero, 8);
  for (double v : alm.values) CHECK(v == 0.0);
}

TEST_CASE("parseval ratio is one for band-limited input") {
  WindowFamily w(ScaleSequence::geometric(2.0, 5));
  NeedletTransform transform(w);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto alm = random_coefficients(16, 100 + seed);
    CHECK(std::abs(transform.parseval_ratio(alm) - 1.0) < 1e-9);
  }

  // single harmonic: ratio is the partition of unity at that multipole
  HarmonicCoefficients single(7);
  single.at(7, 4) = 2.5;
  CHECK(std::abs(transform.parseval_ratio(single) - 1.0) < 1e-9);

  // scaling invariance
  auto alm = random_coefficients(10, 42);
  double r1 = transform.parseval_ratio(alm);
  for (auto& v : alm.values) v *= 3.0;
  CHECK(transform.parseval_ratio(alm) ==
        doctest::Approx(r1).epsilon(1e-13));
}

TEST_CASE("shape and band-limit errors") {
  WindowFamily w(ScaleSequence::geometric(2.0, 4));
  NeedletTransform transform(w);
  CHECK(transform.coverage_l_max() == 8);

  HarmonicCoefficients zero(4);
  CHECK_THROWS_AS(transform.parseval_ratio(zero), std::invalid_argument);

  HarmonicCoefficients wide(12);
  wide.at(12, 1) = 1.0;
  CHECK_THROWS_WITH_AS(transform.analyze_all(wide),
                       doctest::Contains("window coverage"),
                       std::invalid_argument);
  // per-band analysis only reads the band, so extra content is harmless
  for (double b : transform.analyze(wide, 1)) CHECK(b == 0.0);

  NeedletCoefficients bad;
  bad.per_band.assign(static_cast<std::size_t>(transform.band_count()),
                      std::vector<double>{1.0});
  CHECK_THROWS_AS(transform.synthesize(bad, 8), std::invalid_argument);
  NeedletCoefficients wrong_count;
  CHECK_THROWS_AS(transform.synthesize(wrong_count, 8),
                  std::invalid_argument);
}
