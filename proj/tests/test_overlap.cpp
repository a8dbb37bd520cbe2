// Copyright 2026 The hyperent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <complex>
#include <numbers>

#include <gtest/gtest.h>

#include "hyperent/checks.hpp"
#include "hyperent/overlap.hpp"

namespace hyperent {
namespace {

// Composite Simpson estimate of |E[exp(i k X)]|, X ~ N(0, sigma^2), over
// +-14 sigma. Independent of both the closed form and the library's
// trapezoidal oracle.
double simpson_overlap(double sigma, double k) {
  const int n = 20000;  // even
  const double lo = -14.0 * sigma, h = 28.0 * sigma / n;
  std::complex<double> sum{};
  for (int i = 0; i <= n; ++i) {
    const double x = lo + i * h;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const double rho = std::exp(-0.5 * x * x / (sigma * sigma)) / (sigma * std::sqrt(2.0 * std::numbers::pi));
    sum += w * rho * std::polar(1.0, k * x);
  }
  return std::abs(sum * h / 3.0);
}

TEST(GaussianOverlap, QuadratureOracleFirst) {
  // Frozen from adaptive quadrature of the unit-variance density at k = 1.
  constexpr double kUnitOverlap = 0.6065306597126334;
  ASSERT_NEAR(simpson_overlap(1.0, 1.0), kUnitOverlap, 1e-12);
  ASSERT_NEAR(gaussian_overlap_quadrature(1.0, 1.0), kUnitOverlap, 1e-12);
  EXPECT_NEAR(gaussian_recoil_overlap({1.0, 1.0}), kUnitOverlap, 1e-15);
}

TEST(GaussianOverlap, MatchesQuadratureOnGrid) {
  for (double sigma : {0.1, 1.0, 10.0})
    for (double k : {0.0, 0.5, 1.0, 5.0}) {
      const double closed = gaussian_recoil_overlap({sigma, k});
      EXPECT_NEAR(closed, simpson_overlap(sigma, k), 1e-8) << sigma << " " << k;
      EXPECT_NEAR(closed, gaussian_overlap_quadrature(sigma, k), 1e-8) << sigma << " " << k;
      EXPECT_GE(closed, 0.0);
      EXPECT_LE(closed, 1.0);
    }
}

TEST(GaussianOverlap, NoKickAndMonotone) {
  EXPECT_EQ(gaussian_recoil_overlap({2.5, 0.0}), 1.0);
  double prev = 1.0;
  for (double k = 0.1; k < 3.0; k += 0.1) {
    const double s = gaussian_recoil_overlap({1.3, k});
    EXPECT_LT(s, prev);
    prev = s;
  }
}

TEST(GaussianOverlap, RejectsInvalidModel) {
  EXPECT_THROW(gaussian_recoil_overlap({0.0, 1.0}), InvalidArgument);
  EXPECT_THROW(gaussian_recoil_overlap({-1.0, 1.0}), InvalidArgument);
  EXPECT_THROW(gaussian_recoil_overlap({1.0, -0.5}), InvalidArgument);
  EXPECT_THROW(gaussian_recoil_overlap({std::nan(""), 1.0}), InvalidArgument);
}

TEST(DecomposeOverlap, Examples) {
  auto p = decompose_overlap(1.0);
  EXPECT_EQ(p.parallel, 1.0);
  EXPECT_EQ(p.perpendicular, 0.0);
  p = decompose_overlap(0.0);
  EXPECT_EQ(p.parallel, 0.0);
  EXPECT_EQ(p.perpendicular, 1.0);
  p = decompose_overlap(0.6);
  EXPECT_DOUBLE_EQ(p.parallel, 0.6);
  EXPECT_DOUBLE_EQ(p.perpendicular, 0.8);
}

TEST(DecomposeOverlap, OutOfRange) {
  EXPECT_THROW(decompose_overlap(1.1), OutOfRange);
  EXPECT_THROW(decompose_overlap(-1.0 - 1e-9), OutOfRange);
  EXPECT_NO_THROW(decompose_overlap(1.0 + 1e-13));
}

TEST(DecomposeOverlap, UnitCircleProperty) {
  for (int i = -1000; i <= 1000; ++i) {
    const auto p = decompose_overlap(i / 1000.0);
    const double n = p.parallel * p.parallel + p.perpendicular * p.perpendicular;
    EXPECT_GE(n, 1.0 - 1e-12);
    EXPECT_LE(n, 1.0 + 1e-12);
    EXPECT_GE(p.perpendicular, 0.0);
  }
}

TEST(DecomposeOverlap, ComposesWithGaussianModel) {
  for (double sigma : {0.01, 0.3, 1.0, 7.0})
    for (double k : {0.0, 0.2, 1.0, 4.0, 40.0}) {
      const double s = gaussian_recoil_overlap({sigma, k});
      const auto ov = RecoilOverlaps::from_overlaps(s, s);
      EXPECT_NO_THROW(ov.validate());
    }
}

}  // namespace
}  // namespace hyperent
