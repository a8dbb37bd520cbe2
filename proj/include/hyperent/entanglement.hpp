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

// Entanglement of two-atom pure states.
//
// Two independent routes to the A|B Schmidt coefficients are provided:
//
//  * schmidt_decompose: singular values of the coefficient matrix (canonical,
//    valid for any state);
//  * the lambda route: eigenvalues of the 6x6 block matrix [[0, T], [T, 0]]
//    written down by hand for the entangled pair after absorption. Because
//    T is rank one the eigenvalues are {0 x4, +k, -k} and their renormalized
//    moduli coincide with the singular values. lambda_spectrum_check and
//    eigen_schmidt_route exercise that agreement.
//
// is_product_across and hyperentanglement_report classify how entanglement
// is spread between the particle split and the spatial|internal split.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "hyperent/absorption.hpp"
#include "hyperent/errors.hpp"
#include "hyperent/overlap.hpp"
#include "hyperent/state.hpp"
#include "hyperent/svd.hpp"

namespace hyperent {

/// Default relative threshold on the second singular value for product tests.
inline constexpr double kProductTolerance = 1e-8;
/// Schmidt coefficients at or below this are dropped from SchmidtResult.
inline constexpr double kSchmidtCutoff = 1e-13;
/// |k| at or below this makes the eigen-route renormalization undefined.
inline constexpr double kDegenerateK = 1e-10;

/// -sum p log2 p, with 0 log 0 = 0.
inline double entropy_bits(std::span<const double> probabilities) {
  double total = 0.0;
  for (double p : probabilities) {
    if (!std::isfinite(p) || p < -1e-12)
      throw NotADistribution("probability entry is negative or not finite");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-10)
    throw NotADistribution("probabilities sum to " + std::to_string(total) + ", not 1");
  double s = 0.0;
  for (double p : probabilities)
    if (p > 0.0) s -= p * std::log2(p);
  return s;
}

struct SchmidtResult {
  Bipartition split = Bipartition::ParticleSplit;
  /// Non-negative, descending.
  std::vector<double> coefficients;
  std::vector<FactorKey> row_basis;
  std::vector<FactorKey> column_basis;
  /// Column k is the k-th vector on the row (resp. column) factor, so that
  /// the state is sum_k coefficients[k] * left.col(k) (x) right.col(k).
  Eigen::MatrixXcd left_vectors;
  Eigen::MatrixXcd right_vectors;
  double entropy_bits = 0.0;

  Ket reconstruct() const {
    CoefficientMatrix cm{split, row_basis, column_basis,
                         Eigen::MatrixXcd::Zero(row_basis.size(), column_basis.size())};
    for (std::size_t k = 0; k < coefficients.size(); ++k)
      cm.matrix += coefficients[k] * left_vectors.col(k) * right_vectors.col(k).transpose();
    return cm.flatten();
  }
};

inline SchmidtResult schmidt_decompose(const Ket& x, Bipartition split) {
  if (!x.is_normalized(1e-10)) throw NotNormalized(x.norm());
  const auto cm = coefficient_matrix(x, split);
  const auto svd = jacobi_svd(cm.matrix);

  SchmidtResult r;
  r.split = split;
  r.row_basis = cm.rows;
  r.column_basis = cm.columns;
  Eigen::Index kept = 0;
  while (kept < svd.singular_values.size() && svd.singular_values(kept) > kSchmidtCutoff) ++kept;
  r.coefficients.assign(svd.singular_values.data(), svd.singular_values.data() + kept);
  r.left_vectors = svd.u.leftCols(kept);
  r.right_vectors = svd.v.leftCols(kept).conjugate();

  std::vector<double> p;
  double total = 0.0;
  for (double c : r.coefficients) {
    p.push_back(c * c);
    total += c * c;
  }
  for (double& q : p) q /= total;
  r.entropy_bits = entropy_bits(p);
  return r;
}

/// True iff the second singular value of the coefficient matrix is below
/// tol times the largest. Insensitive to global phase and scale.
inline bool is_product_across(const Ket& x, Bipartition split, double tol = kProductTolerance) {
  if (!(tol > 0.0 && tol < 1.0)) throw InvalidArgument("product tolerance must lie in (0, 1)");
  if (x.norm() <= kZeroNormThreshold) throw ZeroNorm();
  const auto sv = singular_values(coefficient_matrix(x, split).matrix);
  return sv.size() < 2 || sv[1] < tol * sv[0];
}

// ---------------------------------------------------------------------------
// Lambda route

/// The hand-derived coefficient matrices of the absorbed entangled pair.
///
/// lambda_tilde rows: (beta delta,  alpha delta a,  alpha delta b)
///                    (beta gamma c, alpha gamma ac, alpha gamma bc)
///                    (beta gamma d, alpha gamma ad, alpha gamma bd)
/// lambda_full = [[0, lambda_tilde], [lambda_tilde, 0]] over lambda_basis().
struct LambdaMatrices {
  Eigen::Matrix3d lambda_tilde = Eigen::Matrix3d::Zero();
  Eigen::Matrix<double, 6, 6> lambda_full = Eigen::Matrix<double, 6, 6>::Zero();
  /// alpha gamma (ac + bd) + beta delta
  double k_value = 0.0;
};

/// Ordering of the six single-particle states spanning each factor:
/// (L,g), (L,e), (L^perp,e), (R,g), (R,e), (R^perp,e).
inline std::vector<FactorKey> lambda_basis() {
  const BasisLabel order[] = {
      label_a(Spatial::L, Internal::g), label_a(Spatial::L, Internal::e),
      label_a(Spatial::LPerp, Internal::e), label_a(Spatial::R, Internal::g),
      label_a(Spatial::R, Internal::e), label_a(Spatial::RPerp, Internal::e)};
  std::vector<FactorKey> keys;
  for (const auto& l : order) keys.push_back(particle_key(l));
  return keys;
}

inline LambdaMatrices build_lambda(const AbsorptionAmplitudes& amps, const RecoilOverlaps& ov) {
  if (!amps.is_real()) throw ComplexAmplitudes();
  amps.validate();
  ov.validate();
  const double al = amps.alpha.real(), be = amps.beta.real();
  const double ga = amps.gamma.real(), de = amps.delta.real();
  const double a = ov.a, b = ov.b, c = ov.c, d = ov.d;

  LambdaMatrices lm;
  lm.lambda_tilde << be * de, al * de * a, al * de * b,
                     be * ga * c, al * ga * a * c, al * ga * b * c,
                     be * ga * d, al * ga * a * d, al * ga * b * d;
  lm.lambda_full.topRightCorner<3, 3>() = lm.lambda_tilde;
  lm.lambda_full.bottomLeftCorner<3, 3>() = lm.lambda_tilde;
  lm.k_value = al * ga * (a * c + b * d) + be * de;
  return lm;
}

/// A ket over the lambda frame: rows indexed by B's lambda_basis(), columns
/// by A's. In this orientation the absorbed entangled pair equals
/// lambda_full / sqrt(2) entry by entry.
inline Eigen::MatrixXcd lambda_frame_matrix(const Ket& x) {
  const auto basis = lambda_basis();
  return coefficient_matrix(x, Bipartition::ParticleSplit, basis, basis).matrix.transpose();
}

/// Coefficients of det(lambda I - m), highest degree first, by the
/// Faddeev-LeVerrier recursion (no eigen-solve involved).
template <int N>
std::array<double, N + 1> characteristic_polynomial(const Eigen::Matrix<double, N, N>& m) {
  std::array<double, N + 1> coeff{};
  coeff[0] = 1.0;
  Eigen::Matrix<double, N, N> mk = Eigen::Matrix<double, N, N>::Zero();
  const auto id = Eigen::Matrix<double, N, N>::Identity();
  for (int k = 1; k <= N; ++k) {
    mk = m * mk + coeff[k - 1] * id;
    coeff[k] = -(m * mk).trace() / k;
  }
  return coeff;
}

struct SpectrumCheck {
  /// Real parts, ascending.
  std::vector<double> eigenvalues;
  double max_imaginary = 0.0;
  /// det(lambda I - Lambda) coefficients, lambda^6 first.
  std::array<double, 7> char_poly{};
  double max_eigenvalue_error = 0.0;
  double char_poly_error = 0.0;
  bool verdict = false;
};

/// Compares the dense eigenvalues of lambda_full with {0 x4, -k, +k} and the
/// characteristic polynomial with lambda^6 - k^2 lambda^4, both within `tol`.
inline SpectrumCheck lambda_spectrum_check(const LambdaMatrices& lm, double tol = 1e-10) {
  SpectrumCheck sc;
  Eigen::EigenSolver<Eigen::Matrix<double, 6, 6>> es(lm.lambda_full, false);
  for (int i = 0; i < 6; ++i) {
    sc.eigenvalues.push_back(es.eigenvalues()(i).real());
    sc.max_imaginary = std::max(sc.max_imaginary, std::abs(es.eigenvalues()(i).imag()));
  }
  std::sort(sc.eigenvalues.begin(), sc.eigenvalues.end());

  const double k = std::abs(lm.k_value);
  std::array<double, 6> expected{-k, 0.0, 0.0, 0.0, 0.0, k};
  std::sort(expected.begin(), expected.end());
  for (int i = 0; i < 6; ++i)
    sc.max_eigenvalue_error =
        std::max(sc.max_eigenvalue_error, std::abs(sc.eigenvalues[i] - expected[i]));
  sc.max_eigenvalue_error = std::max(sc.max_eigenvalue_error, sc.max_imaginary);

  sc.char_poly = characteristic_polynomial<6>(lm.lambda_full);
  const std::array<double, 7> target{1.0, 0.0, -lm.k_value * lm.k_value, 0.0, 0.0, 0.0, 0.0};
  for (int i = 0; i < 7; ++i)
    sc.char_poly_error = std::max(sc.char_poly_error, std::abs(sc.char_poly[i] - target[i]));

  sc.verdict = sc.max_eigenvalue_error <= tol && sc.char_poly_error <= tol;
  return sc;
}

/// Schmidt form from the lambda eigenvalues: coefficients
/// |lambda_+-| / sqrt(lambda_+^2 + lambda_-^2). The vectors are the
/// eigenkets of lambda_full for +k and -k over lambda_basis().
inline SchmidtResult eigen_schmidt_route(const LambdaMatrices& lm) {
  const double k = lm.k_value;
  if (std::abs(k) <= kDegenerateK) throw DegenerateSpectrum(k);
  const double lp = k, lmn = -k;
  const double scale = std::sqrt(lp * lp + lmn * lmn);

  SchmidtResult r;
  r.split = Bipartition::ParticleSplit;
  r.row_basis = lambda_basis();
  r.column_basis = lambda_basis();
  r.coefficients = {std::abs(lp) / scale, std::abs(lmn) / scale};

  Eigen::EigenSolver<Eigen::Matrix<double, 6, 6>> es(lm.lambda_full, true);
  r.left_vectors.resize(6, 2);
  for (int slot = 0; slot < 2; ++slot) {
    const double target = slot == 0 ? lp : lmn;
    int best = 0;
    for (int i = 1; i < 6; ++i)
      if (std::abs(es.eigenvalues()(i) - target) < std::abs(es.eigenvalues()(best) - target))
        best = i;
    r.left_vectors.col(slot) = es.eigenvectors().col(best).normalized();
  }
  r.right_vectors = r.left_vectors;

  std::vector<double> p;
  for (double c : r.coefficients) p.push_back(c * c);
  r.entropy_bits = entropy_bits(p);
  return r;
}

// ---------------------------------------------------------------------------
// Hyperentanglement

enum class EntanglementClass {
  Separable,
  SingleDofEntangled,
  ProductFormHyperentangled,
  NonProductHyperentangled,
};

inline std::string_view to_string(EntanglementClass c) {
  switch (c) {
    case EntanglementClass::Separable:
      return "separable";
    case EntanglementClass::SingleDofEntangled:
      return "single-dof entangled";
    case EntanglementClass::ProductFormHyperentangled:
      return "product-form hyperentangled";
    case EntanglementClass::NonProductHyperentangled:
      return "non-product hyperentangled";
  }
  return "?";
}

struct HyperentanglementReport {
  bool particle_entangled = false;
  double particle_entropy_bits = 0.0;
  bool spatial_internal_product = false;
  // Only meaningful when spatial_internal_product holds.
  bool spatial_factor_entangled = false;
  bool internal_factor_entangled = false;
  EntanglementClass classification = EntanglementClass::Separable;
};

namespace detail {

// Entangled across A|B when a factor vector over (A coordinate, B coordinate)
// keys is reshaped into a matrix.
inline bool factor_entangled(const Eigen::VectorXcd& v, const std::vector<FactorKey>& keys,
                             std::size_t dim_a, std::size_t dim_b, double tol) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim_a, dim_b);
  for (std::size_t i = 0; i < keys.size(); ++i) m(keys[i].first, keys[i].second) = v(i);
  const auto sv = singular_values(m);
  return sv.size() >= 2 && sv[1] >= tol * sv[0];
}

}  // namespace detail

inline HyperentanglementReport hyperentanglement_report(const Ket& x,
                                                        double tol = kProductTolerance) {
  if (!x.is_normalized(1e-10)) throw NotNormalized(x.norm());
  HyperentanglementReport rep;
  rep.particle_entangled = !is_product_across(x, Bipartition::ParticleSplit, tol);
  rep.particle_entropy_bits = schmidt_decompose(x, Bipartition::ParticleSplit).entropy_bits;

  const auto dof = coefficient_matrix(x, Bipartition::DofSplit);
  const auto svd = jacobi_svd(dof.matrix);
  rep.spatial_internal_product =
      svd.singular_values.size() < 2 || svd.singular_values(1) < tol * svd.singular_values(0);
  if (rep.spatial_internal_product) {
    rep.spatial_factor_entangled =
        detail::factor_entangled(svd.u.col(0), dof.rows, kSpatialCount, kSpatialCount, tol);
    rep.internal_factor_entangled = detail::factor_entangled(
        svd.v.col(0).conjugate(), dof.columns, kInternalCount, kInternalCount, tol);
  }

  if (!rep.particle_entangled)
    rep.classification = EntanglementClass::Separable;
  else if (!rep.spatial_internal_product)
    rep.classification = EntanglementClass::NonProductHyperentangled;
  else if (rep.spatial_factor_entangled && rep.internal_factor_entangled)
    rep.classification = EntanglementClass::ProductFormHyperentangled;
  else
    rep.classification = EntanglementClass::SingleDofEntangled;
  return rep;
}

}  // namespace hyperent
