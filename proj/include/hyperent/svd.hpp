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

// One-sided (Hestenes) Jacobi SVD for small dense complex matrices.
//
// Columns of a working copy are rotated pairwise until mutually orthogonal;
// the column norms are then the singular values and the accumulated rotations
// form V. Accurate to a few ulps relative to the largest singular value,
// which is all the Schmidt machinery needs for matrices of order <= 32.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace hyperent {

/// Thin SVD: matrix = u * diag(singular_values) * v.adjoint(), with
/// min(rows, cols) singular values sorted in descending order.
struct SvdResult {
  Eigen::MatrixXcd u;
  Eigen::VectorXd singular_values;
  Eigen::MatrixXcd v;
};

namespace detail {

// Gram-Schmidt completion of the columns of `q` flagged as missing, against
// the columns already present. Used when a singular value is zero and the
// corresponding left vector cannot be obtained by scaling.
inline void complete_orthonormal(Eigen::MatrixXcd& q, const std::vector<bool>& present) {
  const Eigen::Index m = q.rows();
  Eigen::Index probe = 0;
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    if (present[j]) continue;
    for (; probe < m; ++probe) {
      Eigen::VectorXcd c = Eigen::VectorXcd::Unit(m, probe);
      for (int pass = 0; pass < 2; ++pass)
        for (Eigen::Index k = 0; k < q.cols(); ++k)
          if (present[k] || k < j) c -= q.col(k) * q.col(k).dot(c);
      const double n = c.norm();
      if (n > 1e-8) {
        q.col(j) = c / n;
        ++probe;
        break;
      }
    }
  }
}

inline SvdResult jacobi_svd_tall(const Eigen::MatrixXcd& a) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  Eigen::MatrixXcd w = a;
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(n, n);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr int max_sweeps = 60;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double alpha = w.col(p).squaredNorm();
        const double beta = w.col(q).squaredNorm();
        const std::complex<double> gamma = w.col(p).dot(w.col(q));
        const double g = std::abs(gamma);
        if (g <= eps * std::sqrt(alpha * beta) || g == 0.0) continue;
        rotated = true;
        // Rotate column q by the phase of gamma so the pair coupling is real.
        const std::complex<double> phase = gamma / g;
        w.col(q) *= std::conj(phase);
        v.col(q) *= std::conj(phase);
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (auto* mat : {&w, &v}) {
          Eigen::VectorXcd cp = mat->col(p);
          mat->col(p) = c * cp - s * mat->col(q);
          mat->col(q) = s * cp + c * mat->col(q);
        }
      }
    }
    if (!rotated) break;
  }

  Eigen::VectorXd sv(n);
  for (Eigen::Index j = 0; j < n; ++j) sv(j) = w.col(j).norm();
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return sv(i) > sv(j); });

  SvdResult r;
  r.singular_values.resize(n);
  r.u = Eigen::MatrixXcd::Zero(m, n);
  r.v.resize(n, n);
  const double smax = n > 0 ? sv(order[0]) : 0.0;
  std::vector<bool> present(n, false);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index j = order[k];
    r.singular_values(k) = sv(j);
    r.v.col(k) = v.col(j);
    if (sv(j) > std::max(smax * 1e-13, std::numeric_limits<double>::min())) {
      r.u.col(k) = w.col(j) / sv(j);
      present[k] = true;
    }
  }
  complete_orthonormal(r.u, present);
  return r;
}

}  // namespace detail

inline SvdResult jacobi_svd(const Eigen::MatrixXcd& a) {
  if (a.rows() >= a.cols()) return detail::jacobi_svd_tall(a);
  // A^H = V S U^H
  SvdResult t = detail::jacobi_svd_tall(a.adjoint());
  return {std::move(t.v), std::move(t.singular_values), std::move(t.u)};
}

inline std::vector<double> singular_values(const Eigen::MatrixXcd& a) {
  const auto r = jacobi_svd(a);
  return {r.singular_values.data(), r.singular_values.data() + r.singular_values.size()};
}

}  // namespace hyperent
