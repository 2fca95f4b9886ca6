#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "needlets/window.hpp"

using namespace needlets;

TEST_CASE("bump values") {
  CHECK(bump(0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(bump(1.0) == 0.0);
  CHECK(bump(-1.0) == 0.0);
  CHECK(bump(2.0) == 0.0);
  CHECK(bump(0.99) > 0.0);
}

TEST_CASE("bump normalization constant") {
  // adaptive quadrature oracle value, cross-checked at 40 digits
  CHECK(bump_normalization() ==
        doctest::Approx(0.4439938161680794).epsilon(1e-11));
  CHECK(bump_normalization() > 0.443);
  CHECK(bump_normalization() < 0.445);
}

TEST_CASE("bump primitive saturates, is monotone and symmetric") {
  CHECK(bump_primitive(-1.0) == 0.0);
  CHECK(bump_primitive(-1.5) == 0.0);
  CHECK(bump_primitive(1.0) == 1.0);
  CHECK(bump_primitive(3.0) == 1.0);
  CHECK(bump_primitive(0.0) == doctest::Approx(0.5).epsilon(1e-12));
  double prev = -1.0;
  for (int i = 0; i <= 40; ++i) {
    double u = -1.0 + 2.0 * i / 40.0;
    double v = bump_primitive(u);
    CHECK(v >= prev);
    prev = v;
    CHECK(bump_primitive(-u) ==
          doctest::Approx(1.0 - v).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("step functions plateau and ramp") {
  WindowFamily w(ScaleSequence::geometric(2.0, 6));
  // j = 2: plateau up to S_1 = 2, ramp to S_2 = 4
  CHECK(w.step(2, 2.0) == 1.0);
  CHECK(w.step(2, 0.5) == 1.0);
  CHECK(w.step(2, 3.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(w.step(2, 4.0) == 0.0);
  CHECK(w.step(2, 5.0) == 0.0);
  double prev = 2.0;
  for (int i = 0; i <= 50; ++i) {
    double u = 1.5 + 3.0 * i / 50.0;
    double v = w.step(2, u);
    CHECK(v <= prev + 1e-15);
    prev = v;
  }
  CHECK_THROWS_AS(w.step(7, 1.0), std::out_of_range);
}

TEST_CASE("windows peak at S_j and vanish at the support edges") {
  WindowFamily w(ScaleSequence::geometric(2.0, 6));
  for (int j = 0; j < w.count(); ++j) {
    double sj = w.scales().value(j);
    CHECK(w.value(j, sj) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(w.value(j, w.scales().value(j + 1)) == 0.0);
    if (j >= 1) {
      CHECK(w.value(j, w.scales().value(j - 1)) == 0.0);
      double mid = 0.5 * (w.scales().value(j - 1) + sj);
      CHECK(w.value(j, mid) ==
            doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(w.value(6, 3.0), std::out_of_range);
}

TEST_CASE("window values lie in [0, 1] and memo agrees with evaluation") {
  WindowFamily w(ScaleSequence::geometric(2.0, 5));
  for (int j = 0; j < w.count(); ++j) {
    auto [lo, hi] = w.scales().support_interval(j);
    for (int i = 0; i <= 100; ++i) {
      double u = lo + (hi - lo) * i / 100.0;
      double b = w.value(j, u);
      CHECK(b >= 0.0);
      CHECK(b <= 1.0);
    }
    for (int ell : w.multipoles(j)) {
      CHECK(w.value_at(j, ell) == w.value(j, ell));
    }
    CHECK(w.value_at(j, 100000) == 0.0);
  }
}

TEST_CASE("step monotonicity in j makes the square root real") {
  WindowFamily w(ScaleSequence::custom({1, 3, 6, 10, 15}));
  for (int j = 0; j < w.scales().j_max(); ++j) {
    for (int i = 0; i <= 200; ++i) {
      double u = 15.0 * i / 200.0;
      CHECK(w.step(j + 1, u) >= w.step(j, u) - 1e-12);
    }
  }
}

TEST_CASE("disjoint supports for bands two apart") {
  WindowFamily w(ScaleSequence::geometric(1.5, 7));
  for (int i = 0; i <= 300; ++i) {
    double u = 1.0 + (w.scales().value(7) - 1.0) * i / 300.0;
    for (int j = 0; j + 2 < w.count(); ++j) {
      for (int jp = j + 2; jp < w.count(); ++jp) {
        CHECK(w.value(j, u) * w.value(jp, u) == 0.0);
      }
    }
  }
}

TEST_CASE("partition of unity telescopes") {
  WindowFamily w(ScaleSequence::geometric(2.0, 6));
  std::vector<double> grid;
  for (int u = 1; u <= 31; ++u) grid.push_back(u);
  CHECK(w.partition_deviation(grid) < 1e-12);

  CHECK(w.partition_deviation(std::vector<double>{1.0}) < 1e-15);
  CHECK(w.partition_deviation(std::vector<double>{}) == 0.0);
  CHECK_THROWS_AS(w.partition_deviation(std::vector<double>{0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(w.partition_deviation(std::vector<double>{33.0}),
                  std::invalid_argument);
}

TEST_CASE("geometric windows are rescaled copies of each other") {
  double B = 2.0;
  WindowFamily w(ScaleSequence::geometric(B, 6));
  for (int j = 2; j <= 4; ++j) {
    for (int i = 0; i <= 60; ++i) {
      auto [lo, hi] = w.scales().support_interval(j);
      double u = lo + (hi - lo) * i / 60.0;
      CHECK(w.value(j, u) ==
            doctest::Approx(w.value(1, u / std::pow(B, j - 1)))
                .epsilon(1e-12)
                .scale(1.0));
    }
  }
}

TEST_CASE("derivative bound estimates are scale free") {
  WindowFamily w(ScaleSequence::geometric(2.0, 6));
  double k2 = w.derivative_bound_estimate(2, 1, 64);
  double k3 = w.derivative_bound_estimate(3, 1, 64);
  double k4 = w.derivative_bound_estimate(4, 1, 64);
  CHECK(k3 == doctest::Approx(k2).epsilon(0.2));
  CHECK(k4 == doctest::Approx(k2).epsilon(0.2));

  // smooth maximum: the centered quotient at S_j is tiny
  double sj = w.scales().value(3);
  double width = sj - w.scales().value(2);
  double h = width * 1e-3;
  double fd = (w.value(3, sj + h) - w.value(3, sj - h)) / (2.0 * h);
  CHECK(std::abs(fd) * width < 0.5);

  // outside the support the quotient is exactly zero
  double outside = w.scales().value(4) + 2.0 * width;
  double fd0 = (w.value(3, outside + h) - w.value(3, outside - h)) / (2.0 * h);
  CHECK(fd0 == 0.0);

  CHECK_THROWS_AS(w.derivative_bound_estimate(2, 5, 64),
                  std::invalid_argument);
  CHECK_THROWS_AS(w.derivative_bound_estimate(2, 0, 64),
                  std::invalid_argument);
  CHECK_THROWS_AS(w.derivative_bound_estimate(2, 1, 4),
                  std::invalid_argument);
}

TEST_CASE("difference quotients stay bounded across junctions") {
  WindowFamily w(ScaleSequence::geometric(2.0, 6));
  int j = 3;
  double width = w.scales().value(j) - w.scales().value(j - 1);
  for (double junction : {w.scales().value(j - 1), w.scales().value(j),
                          w.scales().value(j + 1)}) {
    for (double h : {1e-3 * width, 5e-4 * width}) {
      double d1 = (w.value(j, junction + h) - w.value(j, junction - h)) /
                  (2.0 * h);
      double d2 = (w.value(j, junction + h) - 2.0 * w.value(j, junction) +
                   w.value(j, junction - h)) /
                  (h * h);
      CHECK(std::abs(d1) < 100.0 / width);
      CHECK(std::abs(d2) < 1000.0 / (width * width));
    }
  }
}
