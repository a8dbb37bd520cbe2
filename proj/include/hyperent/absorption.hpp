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

// Initial preparations of the atom pair and the single-absorption channel.
//
// In the linear regime each ground-state atom either absorbs once (and
// recoils) or stays put:
//
//   |phi_j, g>_A    -> alpha |phi_bar_j, e>_A    + beta  |phi_j, g>_A
//   |varphi_j, g>_B -> gamma |varphi_bar_j, e>_B + delta |varphi_j, g>_B
//
// with the recoiled states expanded through RecoilOverlaps.

#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>

#include "hyperent/errors.hpp"
#include "hyperent/overlap.hpp"
#include "hyperent/state.hpp"

namespace hyperent {

/// Above this excitation probability the single-absorption model is only
/// advisory; see AbsorptionAmplitudes::linear_regime_exceeded.
inline constexpr double kLinearRegimeLimit = 0.1;

struct AbsorptionAmplitudes {
  Complex alpha{0.0, 0.0};  // A excites
  Complex beta{1.0, 0.0};   // A stays in g
  Complex gamma{0.0, 0.0};  // B excites
  Complex delta{1.0, 0.0};  // B stays in g

  /// Positive-real completion: beta = sqrt(1 - |alpha|^2), likewise delta.
  static AbsorptionAmplitudes with_auto_ground(Complex alpha, Complex gamma) {
    auto complete = [](Complex x, const char* name) {
      const double p = std::norm(x);
      if (p > 1.0 + 1e-12)
        throw InvalidAmplitudes(std::string("|") + name + "|^2 exceeds 1");
      return Complex{std::sqrt(std::max(0.0, 1.0 - p)), 0.0};
    };
    return {alpha, complete(alpha, "alpha"), gamma, complete(gamma, "gamma")};
  }

  /// Throws InvalidAmplitudes naming the violated relation.
  void validate(double tol = 1e-12) const {
    const double ab = std::norm(alpha) + std::norm(beta);
    const double gd = std::norm(gamma) + std::norm(delta);
    if (!std::isfinite(ab) || std::abs(ab - 1.0) > tol)
      throw InvalidAmplitudes("|alpha|^2 + |beta|^2 = 1 violated (got " +
                              std::to_string(ab) + ")");
    if (!std::isfinite(gd) || std::abs(gd - 1.0) > tol)
      throw InvalidAmplitudes("|gamma|^2 + |delta|^2 = 1 violated (got " +
                              std::to_string(gd) + ")");
  }

  bool linear_regime_exceeded() const {
    return std::norm(alpha) > kLinearRegimeLimit || std::norm(gamma) > kLinearRegimeLimit;
  }

  bool is_real(double tol = 1e-14) const {
    return std::abs(alpha.imag()) <= tol && std::abs(beta.imag()) <= tol &&
           std::abs(gamma.imag()) <= tol && std::abs(delta.imag()) <= tol;
  }
};

enum class InitialStateKind { Entangled, EqualMixture, Product };

inline std::string_view to_string(InitialStateKind k) {
  switch (k) {
    case InitialStateKind::Entangled:
      return "entangled";
    case InitialStateKind::EqualMixture:
      return "mixture";
    case InitialStateKind::Product:
      return "product";
  }
  return "?";
}

struct Scenario {
  InitialStateKind kind = InitialStateKind::Entangled;
  AbsorptionAmplitudes amplitudes;
  RecoilOverlaps overlaps;

  void validate() const {
    amplitudes.validate();
    overlaps.validate();
  }
};

using PreparedState = std::variant<Ket, MixedState>;

/// |phi_L g; varphi_R g>, the left-right arrangement.
inline Ket left_right_ket() {
  return Ket{{{label_a(Spatial::L, Internal::g), label_b(Spatial::R, Internal::g)}, 1.0}};
}

/// |phi_R g; varphi_L g>, the swapped arrangement.
inline Ket right_left_ket() {
  return Ket{{{label_a(Spatial::R, Internal::g), label_b(Spatial::L, Internal::g)}, 1.0}};
}

inline PreparedState build_initial(InitialStateKind kind) {
  switch (kind) {
    case InitialStateKind::Entangled: {
      const Complex h{1.0 / std::sqrt(2.0), 0.0};
      return h * left_right_ket() + h * right_left_ket();
    }
    case InitialStateKind::EqualMixture:
      return MixedState({{0.5, left_right_ket()}, {0.5, right_left_ket()}});
    case InitialStateKind::Product:
      return left_right_ket();
  }
  throw InvalidArgument("unknown initial-state kind");
}

namespace detail {

inline Spatial perpendicular_mode(Spatial s) {
  return s == Spatial::L ? Spatial::LPerp : Spatial::RPerp;
}

// Image of one ground-state factor under the channel.
inline SingleParticleState absorb_factor(const BasisLabel& in, Complex excite,
                                         Complex stay, double parallel,
                                         double perpendicular) {
  if (in.internal == Internal::e) throw ExcitedInput();
  if (in.spatial != Spatial::L && in.spatial != Spatial::R)
    throw InvalidArgument("absorption channel acts on L/R modes only, got " + to_string(in));
  SingleParticleState out;
  out[{in.particle, in.spatial, Internal::e}] = excite * parallel;
  out[{in.particle, perpendicular_mode(in.spatial), Internal::e}] = excite * perpendicular;
  out[{in.particle, in.spatial, Internal::g}] = stay;
  return out;
}

}  // namespace detail

inline Ket apply_absorption(const Ket& x, const AbsorptionAmplitudes& amps,
                            const RecoilOverlaps& ov) {
  amps.validate();
  ov.validate();
  Ket::Map out;
  for (const auto& [key, amp] : x.amplitudes()) {
    const auto fa = detail::absorb_factor(key.first, amps.alpha, amps.beta, ov.a, ov.b);
    const auto fb = detail::absorb_factor(key.second, amps.gamma, amps.delta, ov.c, ov.d);
    for (const auto& [la, xa] : fa)
      for (const auto& [lb, xb] : fb) out[{la, lb}] += amp * xa * xb;
  }
  return Ket(std::move(out));
}

/// Branch-wise channel; weights are unchanged.
inline MixedState apply_absorption(const MixedState& rho, const AbsorptionAmplitudes& amps,
                                   const RecoilOverlaps& ov) {
  std::vector<MixedBranch> out;
  out.reserve(rho.branches().size());
  for (const auto& br : rho.branches())
    out.push_back({br.weight, apply_absorption(br.ket, amps, ov)});
  return MixedState(std::move(out));
}

inline PreparedState apply_absorption(const PreparedState& s, const AbsorptionAmplitudes& amps,
                                      const RecoilOverlaps& ov) {
  return std::visit([&](const auto& v) -> PreparedState { return apply_absorption(v, amps, ov); },
                    s);
}

/// Final state of a scenario: preparation followed by the channel.
inline PreparedState final_state(const Scenario& sc) {
  return apply_absorption(build_initial(sc.kind), sc.amplitudes, sc.overlaps);
}

struct OutcomeProbabilities {
  double p_double = 0.0;  // both excited
  double p_a_only = 0.0;
  double p_b_only = 0.0;
  double p_none = 0.0;

  double total() const { return p_double + p_a_only + p_b_only + p_none; }

  friend bool operator==(const OutcomeProbabilities&, const OutcomeProbabilities&) = default;
};

/// Squared-amplitude weight of each excitation pattern (A internal, B internal).
inline OutcomeProbabilities outcome_probabilities(const Ket& x) {
  if (!x.is_normalized()) throw NotNormalized(x.norm());
  OutcomeProbabilities p;
  for (const auto& [key, amp] : x.amplitudes()) {
    const bool ea = key.first.internal == Internal::e;
    const bool eb = key.second.internal == Internal::e;
    const double w = std::norm(amp);
    if (ea && eb)
      p.p_double += w;
    else if (ea)
      p.p_a_only += w;
    else if (eb)
      p.p_b_only += w;
    else
      p.p_none += w;
  }
  return p;
}

inline OutcomeProbabilities outcome_probabilities(const MixedState& rho) {
  OutcomeProbabilities p;
  for (const auto& br : rho.branches()) {
    const auto q = outcome_probabilities(br.ket);
    p.p_double += br.weight * q.p_double;
    p.p_a_only += br.weight * q.p_a_only;
    p.p_b_only += br.weight * q.p_b_only;
    p.p_none += br.weight * q.p_none;
  }
  return p;
}

inline OutcomeProbabilities outcome_probabilities(const PreparedState& s) {
  return std::visit([](const auto& v) { return outcome_probabilities(v); }, s);
}

/// Final state of the entangled preparation with recoil neglected, assembled
/// directly as (spatial Bell pair) x (alpha|e> + beta|g>)_A x (gamma|e> + delta|g>)_B.
inline Ket no_recoil_final(InitialStateKind kind, const AbsorptionAmplitudes& amps) {
  if (kind != InitialStateKind::Entangled)
    throw WrongKind("no-recoil final state is defined for the entangled preparation only");
  amps.validate();
  const double h = 1.0 / std::sqrt(2.0);
  const std::pair<Spatial, Spatial> spatial[] = {{Spatial::L, Spatial::R},
                                                 {Spatial::R, Spatial::L}};
  const std::pair<Internal, Complex> internal_a[] = {{Internal::e, amps.alpha},
                                                     {Internal::g, amps.beta}};
  const std::pair<Internal, Complex> internal_b[] = {{Internal::e, amps.gamma},
                                                     {Internal::g, amps.delta}};
  Ket::Map m;
  for (const auto& [sa, sb] : spatial)
    for (const auto& [ia, ca] : internal_a)
      for (const auto& [ib, cb] : internal_b) m[{label_a(sa, ia), label_b(sb, ib)}] += h * ca * cb;
  return Ket(std::move(m));
}

inline Ket no_recoil_final(const Scenario& sc) { return no_recoil_final(sc.kind, sc.amplitudes); }

}  // namespace hyperent
