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

// Self-contained reproduction checks run by `hyperent check`.
//
// Each check draws random valid parameters from a fixed seed, evaluates one
// claim about the absorption model at a pinned tolerance and reports the worst
// deviation seen. A Perturbation deliberately corrupts one ingredient so the
// suite can be shown to detect it.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hyperent/absorption.hpp"
#include "hyperent/entanglement.hpp"
#include "hyperent/overlap.hpp"
#include "hyperent/state.hpp"

namespace hyperent {

enum class Perturbation {
  None,
  FlipLambdaEntry,       // negate one off-diagonal entry of lambda_tilde
  DropRecoilComplement,  // channel ignores the perpendicular recoil component
  HalveGaussianExponent, // closed-form overlap uses exp(-k^2 sigma^2 / 4)
  NaturalLogEntropy,     // entropies measured in nats
};

inline std::string_view to_string(Perturbation p) {
  switch (p) {
    case Perturbation::None:
      return "none";
    case Perturbation::FlipLambdaEntry:
      return "flip-lambda-entry";
    case Perturbation::DropRecoilComplement:
      return "drop-recoil-complement";
    case Perturbation::HalveGaussianExponent:
      return "halve-gaussian-exponent";
    case Perturbation::NaturalLogEntropy:
      return "natural-log-entropy";
  }
  return "?";
}

inline constexpr Perturbation kAllPerturbations[] = {
    Perturbation::FlipLambdaEntry, Perturbation::DropRecoilComplement,
    Perturbation::HalveGaussianExponent, Perturbation::NaturalLogEntropy};

struct CheckResult {
  int id = 0;
  std::string name;
  std::string measured;
  std::string expected;
  bool passed = false;
};

/// Trapezoidal quadrature of |integral |phi(x)|^2 exp(i k x) dx| for a
/// normal density of standard deviation sigma, over +-12 sigma.
inline double gaussian_overlap_quadrature(double sigma, double k, int intervals = 8000) {
  const double lo = -12.0 * sigma, hi = 12.0 * sigma;
  const double h = (hi - lo) / intervals;
  const double norm = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
  std::complex<double> sum{};
  for (int i = 0; i <= intervals; ++i) {
    const double x = lo + i * h;
    const double w = (i == 0 || i == intervals) ? 0.5 : 1.0;
    const double rho = norm * std::exp(-0.5 * (x / sigma) * (x / sigma));
    sum += w * rho * std::polar(1.0, k * x);
  }
  return std::abs(sum * h);
}

/// Uniformly random valid real scenario parameters.
struct RealDraw {
  AbsorptionAmplitudes amps;
  RecoilOverlaps overlaps;
};

class ParameterSampler {
 public:
  explicit ParameterSampler(std::uint64_t seed) : rng_(seed) {}

  /// |alpha|, |gamma| >= min_excite; overlap scalars drawn in [-1, 1].
  RealDraw draw(double min_excite = 0.0, double min_perp = 0.0) {
    RealDraw d;
    const double alpha = signed_magnitude(min_excite);
    const double gamma = signed_magnitude(min_excite);
    d.amps = {alpha, sign() * std::sqrt(1.0 - alpha * alpha), gamma,
              sign() * std::sqrt(1.0 - gamma * gamma)};
    const double bound = std::sqrt(1.0 - min_perp * min_perp);
    std::uniform_real_distribution<double> s(-bound, bound);
    d.overlaps = RecoilOverlaps::from_overlaps(s(rng_), s(rng_));
    return d;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  double sign() { return std::bernoulli_distribution(0.5)(rng_) ? 1.0 : -1.0; }

  // |x| in [lo, 0.98] with random sign, keeping the ground amplitude away from 0.
  double signed_magnitude(double lo) {
    return sign() * std::uniform_real_distribution<double>(lo, 0.98)(rng_);
  }

  std::mt19937_64 rng_;
};

namespace detail {

inline std::string sci(double x) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << x;
  return s.str();
}

inline std::string fixed6(double x) {
  std::ostringstream s;
  s.precision(6);
  s << std::fixed << x;
  return s.str();
}

inline Ket entangled_final(const RealDraw& d, Perturbation p) {
  RecoilOverlaps ov = d.overlaps;
  if (p == Perturbation::DropRecoilComplement) {
    // Bypass validation: the corrupted channel keeps a, c but loses b, d.
    const AbsorptionAmplitudes& a = d.amps;
    const double h = 1.0 / std::sqrt(2.0);
    Ket::Map m;
    const std::pair<Spatial, Spatial> arrangements[] = {{Spatial::L, Spatial::R},
                                                        {Spatial::R, Spatial::L}};
    for (const auto& [sa, sb] : arrangements) {
      const std::pair<Internal, Complex> fa[] = {{Internal::e, a.alpha * ov.a}, {Internal::g, a.beta}};
      const std::pair<Internal, Complex> fb[] = {{Internal::e, a.gamma * ov.c}, {Internal::g, a.delta}};
      for (const auto& [ia, xa] : fa)
        for (const auto& [ib, xb] : fb) m[{label_a(sa, ia), label_b(sb, ib)}] += h * xa * xb;
    }
    return Ket(std::move(m));
  }
  return std::get<Ket>(apply_absorption(build_initial(InitialStateKind::Entangled), d.amps, ov));
}

inline LambdaMatrices lambda_for(const RealDraw& d, Perturbation p) {
  LambdaMatrices lm = build_lambda(d.amps, d.overlaps);
  if (p == Perturbation::FlipLambdaEntry) {
    lm.lambda_tilde(0, 1) = -lm.lambda_tilde(0, 1);
    lm.lambda_full.topRightCorner<3, 3>() = lm.lambda_tilde;
    lm.lambda_full.bottomLeftCorner<3, 3>() = lm.lambda_tilde;
  }
  return lm;
}

inline double entropy_of(const SchmidtResult& r, Perturbation p) {
  if (p != Perturbation::NaturalLogEntropy) return r.entropy_bits;
  return r.entropy_bits * std::numbers::ln2;
}

inline double max_minor(const Eigen::Matrix3d& t) {
  double worst = 0.0;
  for (int r0 = 0; r0 < 3; ++r0)
    for (int r1 = r0 + 1; r1 < 3; ++r1)
      for (int c0 = 0; c0 < 3; ++c0)
        for (int c1 = c0 + 1; c1 < 3; ++c1)
          worst = std::max(worst, std::abs(t(r0, c0) * t(r1, c1) - t(r0, c1) * t(r1, c0)));
  return worst;
}

// Random normalized ket with `na` A labels and `nb` B labels drawn from the
// eight per particle.
inline Ket random_ket(std::mt19937_64& rng, int na, int nb) {
  std::vector<BasisLabel> la, lb;
  for (auto s : {Spatial::L, Spatial::R, Spatial::LPerp, Spatial::RPerp})
    for (auto i : {Internal::g, Internal::e}) {
      la.push_back(label_a(s, i));
      lb.push_back(label_b(s, i));
    }
  std::shuffle(la.begin(), la.end(), rng);
  std::shuffle(lb.begin(), lb.end(), rng);
  std::normal_distribution<double> n(0.0, 1.0);
  Ket::Map m;
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) m[{la[i], lb[j]}] = {n(rng), n(rng)};
  return normalize(Ket(std::move(m)));
}

}  // namespace detail

/// Runs checks 1-8. `seed` fixes every random draw.
inline std::vector<CheckResult> run_checks(Perturbation p = Perturbation::None,
                                           std::uint64_t seed = 20260101) {
  using detail::fixed6;
  using detail::sci;
  std::vector<CheckResult> results;
  auto guarded = [&](int id, std::string name, const std::function<CheckResult()>& body) {
    CheckResult r;
    try {
      r = body();
    } catch (const std::exception& e) {
      r.measured = std::string("exception: ") + e.what();
      r.passed = false;
    }
    r.id = id;
    r.name = std::move(name);
    results.push_back(std::move(r));
  };

  guarded(1, "entanglement-enhanced double absorption", [&] {
    ParameterSampler s(seed + 1);
    double worst_ratio = 0.0, worst_formula = 0.0, ratio_sum = 0.0;
    const int n = 1000;
    for (int i = 0; i < n; ++i) {
      const auto d = s.draw(0.05);
      const double pe = outcome_probabilities(detail::entangled_final(d, p)).p_double;
      const double pm = outcome_probabilities(
          apply_absorption(build_initial(InitialStateKind::EqualMixture), d.amps, d.overlaps)).p_double;
      const double ratio = pe / pm;
      ratio_sum += ratio;
      worst_ratio = std::max(worst_ratio, std::abs(ratio - 2.0));
      const double target = 2.0 * std::norm(d.amps.alpha * d.amps.gamma);
      worst_formula = std::max(worst_formula, std::abs(pe - target));
    }
    return CheckResult{0, "", "ratio " + fixed6(ratio_sum / n) + " (expected 2), max |p_double - 2|ag|^2| " +
                                  sci(worst_formula) + " (expected 0)",
                       "tolerance 1e-12",
                       worst_ratio <= 1e-12 && worst_formula <= 1e-12};
  });

  guarded(2, "lambda reproduction by the channel", [&] {
    ParameterSampler s(seed + 2);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const auto d = s.draw();
      const auto lm = detail::lambda_for(d, p);
      const Eigen::MatrixXcd frame = lambda_frame_matrix(detail::entangled_final(d, p));
      const Eigen::MatrixXcd target = lm.lambda_full.cast<Complex>() / std::sqrt(2.0);
      worst = std::max(worst, (frame - target).cwiseAbs().maxCoeff());
    }
    return CheckResult{0, "", "max entry deviation " + sci(worst) + " (expected 0)", "tolerance 1e-12", worst <= 1e-12};
  });

  guarded(3, "lambda spectrum {0 x4, +-k} and rank-one minors", [&] {
    ParameterSampler s(seed + 3);
    double worst_ev = 0.0, worst_poly = 0.0, worst_minor = 0.0;
    bool all = true;
    for (int i = 0; i < 200; ++i) {
      const auto lm = detail::lambda_for(s.draw(), p);
      const auto sc = lambda_spectrum_check(lm);
      all = all && sc.verdict;
      worst_ev = std::max(worst_ev, sc.max_eigenvalue_error);
      worst_poly = std::max(worst_poly, sc.char_poly_error);
      worst_minor = std::max(worst_minor, detail::max_minor(lm.lambda_tilde));
    }
    return CheckResult{0, "",
                       "eigenvalue dev " + sci(worst_ev) + ", char-poly dev " + sci(worst_poly) +
                           ", max minor " + sci(worst_minor),
                       "tolerance 1e-10 eigen/poly, 1e-12 minors",
                       all && worst_ev <= 1e-10 && worst_poly <= 1e-10 && worst_minor <= 1e-12};
  });

  guarded(4, "entropy conserved across absorption (A|B)", [&] {
    ParameterSampler s(seed + 4);
    const Ket psi0 = std::get<Ket>(build_initial(InitialStateKind::Entangled));
    const double s0 = detail::entropy_of(schmidt_decompose(psi0, Bipartition::ParticleSplit), p);
    double worst = std::abs(s0 - 1.0), worst_route = 0.0, s_last = 0.0;
    for (int i = 0; i < 500; ++i) {
      const auto d = s.draw();
      const auto svd_route = schmidt_decompose(detail::entangled_final(d, p), Bipartition::ParticleSplit);
      s_last = detail::entropy_of(svd_route, p);
      worst = std::max(worst, std::abs(s_last - 1.0));
      const auto lm = detail::lambda_for(d, p);
      if (std::abs(lm.k_value) > 1e-6)
        worst_route = std::max(worst_route,
                               std::abs(detail::entropy_of(eigen_schmidt_route(lm), p) - s_last));
    }
    return CheckResult{0, "",
                       "S(psi0) " + fixed6(s0) + ", S(psi_f) " + fixed6(s_last) + " (expected 1), max |S - 1| " +
                           sci(worst) + ", max route gap " + sci(worst_route),
                       "tolerance 1e-9", worst <= 1e-9 && worst_route <= 1e-9};
  });

  guarded(5, "hyperentanglement classification", [&] {
    ParameterSampler s(seed + 5);
    bool no_recoil_product = true, generic_not_product = true;
    double min_generic_ratio = 1.0, worst_product_entropy = 0.0;
    for (int i = 0; i < 200; ++i) {
      auto d = s.draw(0.05, 0.05);
      // Generic: every one of alpha..delta, b, d bounded away from zero.
      const Ket generic = detail::entangled_final(d, p);
      const auto sv = singular_values(coefficient_matrix(generic, Bipartition::DofSplit).matrix);
      const double ratio = sv.size() > 1 ? sv[1] / sv[0] : 0.0;
      min_generic_ratio = std::min(min_generic_ratio, ratio);
      generic_not_product = generic_not_product && ratio > 1e-6;

      RealDraw stiff = d;
      stiff.overlaps = RecoilOverlaps::none();
      no_recoil_product = no_recoil_product &&
                          is_product_across(detail::entangled_final(stiff, p), Bipartition::DofSplit);

      const Ket absorbed_product =
          std::get<Ket>(apply_absorption(build_initial(InitialStateKind::Product), d.amps, d.overlaps));
      worst_product_entropy = std::max(
          worst_product_entropy,
          detail::entropy_of(schmidt_decompose(absorbed_product, Bipartition::ParticleSplit), p));
    }
    return CheckResult{0, "",
                       std::string("no-recoil product: ") + (no_recoil_product ? "yes" : "no") +
                           ", min generic sv2/sv1 " + sci(min_generic_ratio) +
                           ", product-state S_final " + sci(worst_product_entropy),
                       "expected yes; > 1e-6; 0 within 1e-12",
                       no_recoil_product && generic_not_product && worst_product_entropy <= 1e-12};
  });

  guarded(6, "outcome probabilities sum to 1", [&] {
    ParameterSampler s(seed + 6);
    double worst = 0.0;
    std::normal_distribution<double> n(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
      auto d = s.draw();
      if (i % 2 == 1) {
        // Complex amplitudes with the same moduli.
        d.amps.alpha *= std::polar(1.0, n(s.engine()));
        d.amps.beta *= std::polar(1.0, n(s.engine()));
        d.amps.gamma *= std::polar(1.0, n(s.engine()));
        d.amps.delta *= std::polar(1.0, n(s.engine()));
      }
      for (auto kind : {InitialStateKind::Entangled, InitialStateKind::EqualMixture,
                        InitialStateKind::Product}) {
        double total;
        if (kind == InitialStateKind::Entangled && p == Perturbation::DropRecoilComplement) {
          const Ket f = detail::entangled_final(d, p);
          total = 0.0;
          for (const auto& [key, amp] : f.amplitudes()) total += std::norm(amp);
        } else {
          total = outcome_probabilities(apply_absorption(build_initial(kind), d.amps, d.overlaps)).total();
        }
        worst = std::max(worst, std::abs(total - 1.0));
      }
    }
    return CheckResult{0, "", "max |sum - 1| " + sci(worst) + " (expected 0)", "tolerance 1e-12", worst <= 1e-12};
  });

  guarded(7, "Gaussian recoil overlap vs quadrature", [&] {
    double worst = 0.0;
    for (double sigma : {0.1, 1.0, 10.0})
      for (double k : {0.0, 0.5, 1.0, 5.0}) {
        const double oracle = gaussian_overlap_quadrature(sigma, k);
        double closed = gaussian_recoil_overlap({sigma, k});
        if (p == Perturbation::HalveGaussianExponent) closed = std::exp(-0.25 * k * k * sigma * sigma);
        worst = std::max(worst, std::abs(closed - oracle));
      }
    return CheckResult{0, "", "max |closed - quadrature| " + sci(worst) + " on 3x4 grid (expected 0)",
                       "tolerance 1e-8", worst <= 1e-8};
  });

  guarded(8, "reduced-density eigenvalues = squared Schmidt coefficients", [&] {
    std::mt19937_64 rng(seed + 8);
    std::uniform_int_distribution<int> dim(1, 8);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
      const Ket x = detail::random_ket(rng, dim(rng), dim(rng));
      const auto ev = reduced_density(x, Particle::A).eigenvalues();
      const auto sr = schmidt_decompose(x, Bipartition::ParticleSplit);
      for (std::size_t k = 0; k < ev.size(); ++k) {
        const double c = k < sr.coefficients.size() ? sr.coefficients[k] : 0.0;
        worst = std::max(worst, std::abs(ev[k] - c * c));
      }
    }
    return CheckResult{0, "", "max eigenvalue gap " + sci(worst) + " (expected 0)", "tolerance 1e-10", worst <= 1e-10};
  });

  return results;
}

inline bool all_passed(const std::vector<CheckResult>& rs) {
  return std::all_of(rs.begin(), rs.end(), [](const CheckResult& r) { return r.passed; });
}

}  // namespace hyperent
