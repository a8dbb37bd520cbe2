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

// Two-particle state algebra over a labeled, orthonormal product basis.
//
// Every single-particle basis element is (particle, spatial mode, internal
// level). Particle A uses the spatial family phi_{L,R,L^perp,R^perp}, particle
// B the family varphi_{L,R,L^perp,R^perp}; the particle tag keeps the two
// families apart. All eight labels per particle are mutually orthonormal,
// so inner products reduce to sums over matching keys.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hyperent/errors.hpp"

namespace hyperent {

using Complex = std::complex<double>;

/// Amplitudes with modulus at or below this are not stored.
inline constexpr double kDropTolerance = 1e-15;
/// Norm below which normalize() refuses to rescale.
inline constexpr double kZeroNormThreshold = 1e-14;
/// Allowed deviation of a "normalized" state's norm from 1.
inline constexpr double kNormTolerance = 1e-12;

enum class Particle : std::uint8_t { A, B };
enum class Spatial : std::uint8_t { L, R, LPerp, RPerp };
enum class Internal : std::uint8_t { g, e };

inline constexpr std::size_t kSpatialCount = 4;
inline constexpr std::size_t kInternalCount = 2;

struct BasisLabel {
  Particle particle = Particle::A;
  Spatial spatial = Spatial::L;
  Internal internal = Internal::g;

  friend constexpr auto operator<=>(const BasisLabel&,
                                    const BasisLabel&) = default;
};

constexpr BasisLabel label_a(Spatial s, Internal i) {
  return {Particle::A, s, i};
}
constexpr BasisLabel label_b(Spatial s, Internal i) {
  return {Particle::B, s, i};
}

inline std::string to_string(Spatial s, Particle p) {
  const std::string stem = p == Particle::A ? "phi" : "varphi";
  switch (s) {
    case Spatial::L:
      return stem + "_L";
    case Spatial::R:
      return stem + "_R";
    case Spatial::LPerp:
      return stem + "_L^perp";
    case Spatial::RPerp:
      return stem + "_R^perp";
  }
  return stem + "_?";
}

inline std::string to_string(Internal i) { return i == Internal::g ? "g" : "e"; }

inline std::string to_string(const BasisLabel& l) {
  return to_string(l.spatial, l.particle) + "," + to_string(l.internal);
}

/// Amplitudes of a single-particle state, keyed by that particle's labels.
using SingleParticleState = std::map<BasisLabel, Complex>;

/// Pure two-particle state: a sparse map from (A label, B label) to amplitude.
///
/// Immutable once built. Construction validates that the first label of every
/// key belongs to particle A and the second to particle B, and drops entries
/// whose modulus does not exceed kDropTolerance.
class Ket {
 public:
  using Key = std::pair<BasisLabel, BasisLabel>;
  using Map = std::map<Key, Complex>;

  Ket() = default;

  explicit Ket(Map amplitudes) : amplitudes_(std::move(amplitudes)) {
    for (auto it = amplitudes_.begin(); it != amplitudes_.end();) {
      check_key(it->first);
      if (std::abs(it->second) <= kDropTolerance)
        it = amplitudes_.erase(it);
      else
        ++it;
    }
  }

  Ket(std::initializer_list<Map::value_type> entries)
      : Ket(accumulate(entries)) {}

  const Map& amplitudes() const { return amplitudes_; }
  std::size_t size() const { return amplitudes_.size(); }
  bool empty() const { return amplitudes_.empty(); }

  Complex amplitude(const Key& key) const {
    auto it = amplitudes_.find(key);
    return it == amplitudes_.end() ? Complex{} : it->second;
  }
  Complex amplitude(const BasisLabel& a, const BasisLabel& b) const {
    return amplitude({a, b});
  }

  double squared_norm() const {
    double s = 0.0;
    for (const auto& [key, amp] : amplitudes_) s += std::norm(amp);
    return s;
  }
  double norm() const { return std::sqrt(squared_norm()); }

  bool is_normalized(double tol = kNormTolerance) const {
    return std::abs(norm() - 1.0) <= tol;
  }

  static void check_key(const Key& key) {
    if (key.first.particle != Particle::A || key.second.particle != Particle::B)
      throw FamilyMismatch("ket key must pair an A label with a B label, got (" +
                           to_string(key.first) + "; " + to_string(key.second) +
                           ")");
  }

 private:
  static Map accumulate(std::initializer_list<Map::value_type> entries) {
    Map m;
    for (const auto& [key, amp] : entries) m[key] += amp;
    return m;
  }

  Map amplitudes_;
};

inline Ket operator+(const Ket& x, const Ket& y) {
  Ket::Map m = x.amplitudes();
  for (const auto& [key, amp] : y.amplitudes()) m[key] += amp;
  return Ket(std::move(m));
}

inline Ket operator*(Complex s, const Ket& x) {
  Ket::Map m = x.amplitudes();
  for (auto& [key, amp] : m) amp *= s;
  return Ket(std::move(m));
}

/// <x|y>: conjugate-linear in x, linear in y.
inline Complex inner(const Ket& x, const Ket& y) {
  const auto& small = x.size() <= y.size() ? x : y;
  const auto& large = x.size() <= y.size() ? y : x;
  Complex s{};
  for (const auto& [key, amp] : small.amplitudes()) {
    auto it = large.amplitudes().find(key);
    if (it == large.amplitudes().end()) continue;
    s += &small == &x ? std::conj(amp) * it->second : std::conj(it->second) * amp;
  }
  return s;
}

inline Ket normalize(const Ket& x) {
  const double n = x.norm();
  if (n <= kZeroNormThreshold) throw ZeroNorm();
  return Complex{1.0 / n, 0.0} * x;
}

/// Product state a ⊗ b. `a` must hold only A labels, `b` only B labels.
inline Ket tensor(const SingleParticleState& a, const SingleParticleState& b) {
  for (const auto& [l, amp] : a)
    if (l.particle != Particle::A)
      throw FamilyMismatch("first tensor factor holds non-A label " + to_string(l));
  for (const auto& [l, amp] : b)
    if (l.particle != Particle::B)
      throw FamilyMismatch("second tensor factor holds non-B label " + to_string(l));
  Ket::Map m;
  for (const auto& [la, xa] : a)
    for (const auto& [lb, xb] : b) m[{la, lb}] = xa * xb;
  return Ket(std::move(m));
}

// ---------------------------------------------------------------------------
// Bipartitions

/// ParticleSplit: (A spatial, A internal) | (B spatial, B internal).
/// DofSplit: (A spatial, B spatial) | (A internal, B internal).
enum class Bipartition : std::uint8_t { ParticleSplit, DofSplit };

enum class Side : std::uint8_t { Row, Column };

/// Index of one factor of a bipartition: two label coordinates.
struct FactorKey {
  std::uint8_t first = 0;
  std::uint8_t second = 0;

  friend constexpr auto operator<=>(const FactorKey&, const FactorKey&) = default;
};

inline FactorKey row_key(const Ket::Key& k, Bipartition split) {
  const auto& [a, b] = k;
  if (split == Bipartition::ParticleSplit)
    return {static_cast<std::uint8_t>(a.spatial), static_cast<std::uint8_t>(a.internal)};
  return {static_cast<std::uint8_t>(a.spatial), static_cast<std::uint8_t>(b.spatial)};
}

inline FactorKey column_key(const Ket::Key& k, Bipartition split) {
  const auto& [a, b] = k;
  if (split == Bipartition::ParticleSplit)
    return {static_cast<std::uint8_t>(b.spatial), static_cast<std::uint8_t>(b.internal)};
  return {static_cast<std::uint8_t>(a.internal), static_cast<std::uint8_t>(b.internal)};
}

inline Ket::Key join_keys(FactorKey row, FactorKey col, Bipartition split) {
  auto sp = [](std::uint8_t v) { return static_cast<Spatial>(v); };
  auto in = [](std::uint8_t v) { return static_cast<Internal>(v); };
  if (split == Bipartition::ParticleSplit)
    return {label_a(sp(row.first), in(row.second)), label_b(sp(col.first), in(col.second))};
  return {label_a(sp(row.first), in(col.first)), label_b(sp(row.second), in(col.second))};
}

inline std::string to_string(FactorKey k, Bipartition split, Side side) {
  auto sp = [](std::uint8_t v) { return static_cast<Spatial>(v); };
  auto in = [](std::uint8_t v) { return static_cast<Internal>(v); };
  if (split == Bipartition::ParticleSplit) {
    const Particle p = side == Side::Row ? Particle::A : Particle::B;
    return to_string(BasisLabel{p, sp(k.first), in(k.second)});
  }
  if (side == Side::Row)
    return to_string(sp(k.first), Particle::A) + "," + to_string(sp(k.second), Particle::B);
  return to_string(in(k.first)) + "_A," + to_string(in(k.second)) + "_B";
}

/// Key of a single-particle label used as a ParticleSplit factor index.
constexpr FactorKey particle_key(const BasisLabel& l) {
  return {static_cast<std::uint8_t>(l.spatial), static_cast<std::uint8_t>(l.internal)};
}

/// A ket reshaped into a matrix: entry (i, j) is the amplitude of
/// rows[i] joined with columns[j].
struct CoefficientMatrix {
  Bipartition split = Bipartition::ParticleSplit;
  std::vector<FactorKey> rows;
  std::vector<FactorKey> columns;
  Eigen::MatrixXcd matrix;

  Ket flatten() const {
    Ket::Map m;
    for (Eigen::Index i = 0; i < matrix.rows(); ++i)
      for (Eigen::Index j = 0; j < matrix.cols(); ++j)
        m[join_keys(rows[i], columns[j], split)] = matrix(i, j);
    return Ket(std::move(m));
  }
};

/// Coefficient matrix over explicitly ordered factor bases. Every occupied
/// key of `x` must be representable, otherwise the reshape would lose data.
inline CoefficientMatrix coefficient_matrix(const Ket& x, Bipartition split,
                                            std::vector<FactorKey> rows,
                                            std::vector<FactorKey> columns) {
  std::map<FactorKey, Eigen::Index> row_index, col_index;
  for (std::size_t i = 0; i < rows.size(); ++i) row_index.emplace(rows[i], i);
  for (std::size_t j = 0; j < columns.size(); ++j) col_index.emplace(columns[j], j);
  if (row_index.size() != rows.size() || col_index.size() != columns.size())
    throw InvalidArgument("coefficient_matrix: duplicate factor key in basis");

  CoefficientMatrix cm{split, std::move(rows), std::move(columns), {}};
  cm.matrix = Eigen::MatrixXcd::Zero(cm.rows.size(), cm.columns.size());
  for (const auto& [key, amp] : x.amplitudes()) {
    auto r = row_index.find(row_key(key, split));
    auto c = col_index.find(column_key(key, split));
    if (r == row_index.end() || c == col_index.end())
      throw InvalidArgument("coefficient_matrix: basis does not cover (" +
                            to_string(key.first) + "; " + to_string(key.second) + ")");
    cm.matrix(r->second, c->second) = amp;
  }
  return cm;
}

/// Coefficient matrix over the occupied factor keys, in ascending key order.
inline CoefficientMatrix coefficient_matrix(const Ket& x, Bipartition split) {
  std::vector<FactorKey> rows, cols;
  for (const auto& [key, amp] : x.amplitudes()) {
    rows.push_back(row_key(key, split));
    cols.push_back(column_key(key, split));
  }
  for (auto* v : {&rows, &cols}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  return coefficient_matrix(x, split, std::move(rows), std::move(cols));
}

// ---------------------------------------------------------------------------
// Mixtures and density matrices

struct MixedBranch {
  double weight = 0.0;
  Ket ket;
};

/// Convex mixture of normalized kets with explicit weights.
class MixedState {
 public:
  MixedState() = default;

  explicit MixedState(std::vector<MixedBranch> branches)
      : branches_(std::move(branches)) {
    if (branches_.empty()) throw InvalidArgument("mixture needs at least one branch");
    double total = 0.0;
    for (const auto& br : branches_) {
      if (!(br.weight > 0.0 && br.weight <= 1.0))
        throw InvalidArgument("mixture weight outside (0, 1]: " + std::to_string(br.weight));
      if (!br.ket.is_normalized()) throw NotNormalized(br.ket.norm());
      total += br.weight;
    }
    if (std::abs(total - 1.0) > kNormTolerance)
      throw InvalidArgument("mixture weights sum to " + std::to_string(total) + ", not 1");
  }

  const std::vector<MixedBranch>& branches() const { return branches_; }

 private:
  std::vector<MixedBranch> branches_;
};

/// Hermitian, unit-trace operator over an ordered basis.
template <typename BasisKey>
struct DensityMatrix {
  std::vector<BasisKey> basis;
  Eigen::MatrixXcd matrix;

  /// Eigenvalues in descending order.
  std::vector<double> eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix, Eigen::EigenvaluesOnly);
    std::vector<double> ev(es.eigenvalues().data(),
                           es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
  }

  double trace() const { return matrix.trace().real(); }
};

using ReducedDensityMatrix = DensityMatrix<FactorKey>;
using JointDensityMatrix = DensityMatrix<Ket::Key>;

/// Partial trace of |x><x| over the factor of `split` opposite to `keep`.
inline ReducedDensityMatrix reduced_density(const Ket& x, Bipartition split, Side keep) {
  if (!x.is_normalized()) throw NotNormalized(x.norm());
  const auto cm = coefficient_matrix(x, split);
  if (keep == Side::Row) return {cm.rows, cm.matrix * cm.matrix.adjoint()};
  // rho_col[j, j'] = sum_i M[i, j] conj(M[i, j'])
  return {cm.columns, cm.matrix.transpose() * cm.matrix.conjugate()};
}

/// Reduced state of one particle.
inline ReducedDensityMatrix reduced_density(const Ket& x, Particle keep) {
  return reduced_density(x, Bipartition::ParticleSplit,
                         keep == Particle::A ? Side::Row : Side::Column);
}

/// Full two-particle density matrix of a weighted ensemble, over the union of
/// occupied keys in ascending order.
inline JointDensityMatrix density_matrix(const MixedState& rho) {
  std::map<Ket::Key, Eigen::Index> index;
  for (const auto& br : rho.branches())
    for (const auto& [key, amp] : br.ket.amplitudes()) index.emplace(key, 0);
  JointDensityMatrix dm;
  for (auto& [key, i] : index) {
    i = static_cast<Eigen::Index>(dm.basis.size());
    dm.basis.push_back(key);
  }
  const auto n = static_cast<Eigen::Index>(dm.basis.size());
  dm.matrix = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& br : rho.branches()) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
    for (const auto& [key, amp] : br.ket.amplitudes()) v(index.at(key)) = amp;
    dm.matrix += br.weight * v * v.adjoint();
  }
  return dm;
}

inline JointDensityMatrix density_matrix(const Ket& x) {
  if (!x.is_normalized()) throw NotNormalized(x.norm());
  return density_matrix(MixedState({{1.0, x}}));
}

}  // namespace hyperent
