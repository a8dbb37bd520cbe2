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

// Recoiled center-of-mass states are not orthogonal to the originals. A
// recoiled state is written in coordinates over {original, orthogonal
// complement}:
//
//   |phi_bar_j>    = a |phi_j>    + b |phi_j^perp>
//   |varphi_bar_j> = c |varphi_j> + d |varphi_j^perp>
//
// with real coefficients and b, d >= 0. The same pair applies to j = L and R.

#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "hyperent/errors.hpp"

namespace hyperent {

/// Coordinates of one recoiled state: `parallel` along the original state,
/// `perpendicular` (>= 0) along its orthogonal complement.
struct OverlapPair {
  double parallel = 1.0;
  double perpendicular = 0.0;
};

/// Split an overlap <phi|phi_bar> = s into (a, b) with a = s, b = sqrt(1 - s^2).
inline OverlapPair decompose_overlap(double s) {
  if (!std::isfinite(s) || std::abs(s) > 1.0 + 1e-12)
    throw OutOfRange("overlap scalar must satisfy |s| <= 1, got " + std::to_string(s));
  const double a = std::clamp(s, -1.0, 1.0);
  // (1 - a)(1 + a) loses less precision than 1 - a*a near |a| = 1.
  return {a, std::sqrt((1.0 - a) * (1.0 + a))};
}

struct RecoilOverlaps {
  double a = 1.0, b = 0.0;  // particle A
  double c = 1.0, d = 0.0;  // particle B

  static RecoilOverlaps from_overlaps(double overlap_a, double overlap_b) {
    const auto pa = decompose_overlap(overlap_a);
    const auto pb = decompose_overlap(overlap_b);
    return {pa.parallel, pa.perpendicular, pb.parallel, pb.perpendicular};
  }

  /// No recoil: phi_bar = phi, varphi_bar = varphi.
  static RecoilOverlaps none() { return {}; }

  void validate() const {
    const auto bad = [](double x, double y) {
      return !std::isfinite(x) || !std::isfinite(y) || y < 0.0 ||
             std::abs(x * x + y * y - 1.0) > 1e-12;
    };
    if (bad(a, b))
      throw InvalidArgument("recoil overlaps violate a^2 + b^2 = 1 with b >= 0");
    if (bad(c, d))
      throw InvalidArgument("recoil overlaps violate c^2 + d^2 = 1 with d >= 0");
  }
};

/// Gaussian wavepacket with a plane-wave momentum kick,
/// phi_bar(x) = exp(i k x) phi(x), |phi(x)|^2 normal with variance sigma_x^2.
struct GaussianRecoilModel {
  double sigma_x = 1.0;
  double k_recoil = 0.0;

  void validate() const {
    if (!std::isfinite(sigma_x) || sigma_x <= 0.0)
      throw InvalidArgument("sigma_x must be finite and positive");
    if (!std::isfinite(k_recoil) || k_recoil < 0.0)
      throw InvalidArgument("k_recoil must be finite and non-negative");
  }
};

/// |<phi|phi_bar>| = |E[exp(i k x)]| = exp(-k^2 sigma^2 / 2).
inline double gaussian_recoil_overlap(const GaussianRecoilModel& model) {
  model.validate();
  const double ks = model.k_recoil * model.sigma_x;
  return std::exp(-0.5 * ks * ks);
}

}  // namespace hyperent
