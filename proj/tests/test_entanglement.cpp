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
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "hyperent/checks.hpp"
#include "hyperent/entanglement.hpp"
#include "test_util.hpp"

namespace hyperent {
namespace {

const double kH = 1.0 / std::sqrt(2.0);

Ket psi0() { return std::get<Ket>(build_initial(InitialStateKind::Entangled)); }

// Worked example with k = 0.36 * 0.96 + 0.64 = 0.9856.
const AbsorptionAmplitudes kExampleAmps{0.6, 0.8, 0.6, 0.8};
const RecoilOverlaps kExampleOverlaps{0.8, 0.6, 0.6, 0.8};

TEST(EntropyBits, Examples) {
  const std::vector<double> half{0.5, 0.5}, pure{1.0}, skew{0.25, 0.75}, four{0.25, 0.25, 0.25, 0.25};
  EXPECT_NEAR(entropy_bits(half), 1.0, 1e-15);
  EXPECT_EQ(entropy_bits(pure), 0.0);
  EXPECT_NEAR(entropy_bits(skew), 0.8112781244591328, 1e-15);
  EXPECT_NEAR(entropy_bits(four), 2.0, 1e-15);
  const std::vector<double> with_zero{0.5, 0.0, 0.5};
  EXPECT_NEAR(entropy_bits(with_zero), 1.0, 1e-15);
}

TEST(EntropyBits, RejectsNonDistributions) {
  const std::vector<double> short_sum{0.5, 0.4}, negative{1.1, -0.1};
  EXPECT_THROW(entropy_bits(short_sum), NotADistribution);
  EXPECT_THROW(entropy_bits(negative), NotADistribution);
}

TEST(Schmidt, InitialStateIsMaximallyEntangled) {
  const auto r = schmidt_decompose(psi0(), Bipartition::ParticleSplit);
  ASSERT_EQ(r.coefficients.size(), 2u);
  EXPECT_NEAR(r.coefficients[0], kH, 1e-15);
  EXPECT_NEAR(r.coefficients[1], kH, 1e-15);
  EXPECT_NEAR(r.entropy_bits, 1.0, 1e-14);
}

TEST(Schmidt, ProductStateHasOneTerm) {
  const auto r = schmidt_decompose(left_right_ket(), Bipartition::ParticleSplit);
  ASSERT_EQ(r.coefficients.size(), 1u);
  EXPECT_NEAR(r.coefficients[0], 1.0, 1e-15);
  EXPECT_EQ(r.entropy_bits, 0.0);
}

TEST(Schmidt, ReconstructsRandomStates) {
  std::mt19937_64 rng(211);
  std::uniform_int_distribution<int> dim(1, 8);
  for (int t = 0; t < 300; ++t) {
    const Ket x = detail::random_ket(rng, dim(rng), dim(rng));
    for (auto split : {Bipartition::ParticleSplit, Bipartition::DofSplit}) {
      const auto r = schmidt_decompose(x, split);
      const Ket y = r.reconstruct();
      for (const auto& [key, amp] : x.amplitudes()) EXPECT_LT(std::abs(amp - y.amplitude(key)), 1e-10);
      EXPECT_NEAR(y.norm(), 1.0, 1e-10);
      double sum = 0.0;
      for (double c : r.coefficients) sum += c * c;
      EXPECT_NEAR(sum, 1.0, 1e-10);
    }
  }
}

TEST(Schmidt, RejectsUnnormalized) {
  EXPECT_THROW(schmidt_decompose(Complex(2.0) * psi0(), Bipartition::ParticleSplit), NotNormalized);
}

TEST(Schmidt, AbsorbedEntangledPairKeepsOneBit) {
  ParameterSampler s(223);
  for (int t = 0; t < 200; ++t) {
    const auto d = s.draw();
    const Ket f = std::get<Ket>(apply_absorption(build_initial(InitialStateKind::Entangled), d.amps, d.overlaps));
    const auto r = schmidt_decompose(f, Bipartition::ParticleSplit);
    EXPECT_NEAR(r.entropy_bits, 1.0, 1e-9);
    const Ket y = r.reconstruct();
    for (const auto& [key, amp] : f.amplitudes()) EXPECT_LT(std::abs(amp - y.amplitude(key)), 1e-10);
  }
}

TEST(Lambda, WorkedExampleEntries) {
  const auto lm = build_lambda(kExampleAmps, kExampleOverlaps);
  Eigen::Matrix3d expected;
  expected << 0.64, 0.384, 0.288,
              0.288, 0.1728, 0.1296,
              0.384, 0.2304, 0.1728;
  EXPECT_LT((lm.lambda_tilde - expected).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(lm.k_value, 0.9856, 1e-15);
  EXPECT_TRUE((lm.lambda_full.topLeftCorner<3, 3>().isZero()));
  EXPECT_TRUE((lm.lambda_full.bottomRightCorner<3, 3>().isZero()));
  EXPECT_TRUE((lm.lambda_full.topRightCorner<3, 3>() == lm.lambda_tilde));
  EXPECT_TRUE((lm.lambda_full.bottomLeftCorner<3, 3>() == lm.lambda_tilde));
}

TEST(Lambda, LimitingCases) {
  // No absorption on A: only the ground column survives.
  const auto none_a = build_lambda({0.0, 1.0, 0.6, 0.8}, kExampleOverlaps);
  EXPECT_TRUE(none_a.lambda_tilde.rightCols<2>().isZero());
  EXPECT_NEAR(none_a.k_value, 0.8, 1e-15);
  // No recoil: the perpendicular row and column vanish.
  const auto stiff = build_lambda(kExampleAmps, RecoilOverlaps::none());
  EXPECT_TRUE(stiff.lambda_tilde.row(2).isZero());
  EXPECT_TRUE(stiff.lambda_tilde.col(2).isZero());
  EXPECT_NEAR(stiff.k_value, 1.0, 1e-15);
}

TEST(Lambda, RejectsComplexAmplitudes) {
  AbsorptionAmplitudes amps = kExampleAmps;
  amps.alpha = Complex(0.0, 0.6);
  EXPECT_THROW(build_lambda(amps, kExampleOverlaps), ComplexAmplitudes);
}

TEST(Lambda, SpectrumOfWorkedExample) {
  const auto sc = lambda_spectrum_check(build_lambda(kExampleAmps, kExampleOverlaps));
  ASSERT_EQ(sc.eigenvalues.size(), 6u);
  EXPECT_NEAR(sc.eigenvalues.front(), -0.9856, 1e-12);
  EXPECT_NEAR(sc.eigenvalues.back(), 0.9856, 1e-12);
  for (int i = 1; i < 5; ++i) EXPECT_NEAR(sc.eigenvalues[i], 0.0, 1e-10);
  EXPECT_NEAR(sc.char_poly[2], -0.9856 * 0.9856, 1e-14);
  EXPECT_TRUE(sc.verdict);
}

TEST(Lambda, SpectrumWhenAAlwaysAbsorbs) {
  const auto sc = lambda_spectrum_check(build_lambda({1.0, 0.0, 0.6, 0.8}, RecoilOverlaps::none()));
  EXPECT_NEAR(sc.eigenvalues.front(), -0.6, 1e-12);
  EXPECT_NEAR(sc.eigenvalues.back(), 0.6, 1e-12);
  EXPECT_TRUE(sc.verdict);
}

TEST(Lambda, RandomSpectraAndCharacteristicPolynomial) {
  ParameterSampler s(227);
  for (int t = 0; t < 300; ++t) {
    const auto lm = build_lambda(s.draw().amps, s.draw().overlaps);
    const auto sc = lambda_spectrum_check(lm);
    EXPECT_TRUE(sc.verdict) << "k = " << lm.k_value << " eig dev " << sc.max_eigenvalue_error;
    EXPECT_LT(detail::max_minor(lm.lambda_tilde), 1e-12);
  }
}

TEST(Lambda, CharacteristicPolynomialOfKnownMatrix) {
  Eigen::Matrix3d m;
  m << 2, 0, 0, 0, 3, 0, 0, 0, 5;
  const auto p = characteristic_polynomial<3>(m);
  // (x - 2)(x - 3)(x - 5) = x^3 - 10 x^2 + 31 x - 30
  EXPECT_NEAR(p[0], 1.0, 1e-15);
  EXPECT_NEAR(p[1], -10.0, 1e-13);
  EXPECT_NEAR(p[2], 31.0, 1e-13);
  EXPECT_NEAR(p[3], -30.0, 1e-13);
}

TEST(Lambda, SingularValuesOfFullMatrix) {
  const auto lm = build_lambda(kExampleAmps, kExampleOverlaps);
  // lambda_full / sqrt(2) is a normalized coefficient matrix with two equal
  // Schmidt weights, so lambda_full has singular values {1, 1, 0, 0, 0, 0}.
  const auto sv = test::eigen_singular_values(lm.lambda_full.cast<Complex>());
  ASSERT_EQ(sv.size(), 6u);
  EXPECT_NEAR(sv[0], 1.0, 1e-12);
  EXPECT_NEAR(sv[1], 1.0, 1e-12);
  for (int i = 2; i < 6; ++i) EXPECT_NEAR(sv[i], 0.0, 1e-12);
}

TEST(Lambda, ChannelReproducesMatrix) {
  ParameterSampler s(229);
  for (int t = 0; t < 200; ++t) {
    const auto d = s.draw();
    const Ket f = std::get<Ket>(apply_absorption(build_initial(InitialStateKind::Entangled), d.amps, d.overlaps));
    const auto lm = build_lambda(d.amps, d.overlaps);
    const Eigen::MatrixXcd target = lm.lambda_full.cast<Complex>() / std::sqrt(2.0);
    EXPECT_LT((lambda_frame_matrix(f) - target).cwiseAbs().maxCoeff(), 1e-12);
    // A-indexed rows give the transpose.
    const auto basis = lambda_basis();
    const auto rows_a = coefficient_matrix(f, Bipartition::ParticleSplit, basis, basis).matrix;
    EXPECT_LT((rows_a - target.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Lambda, EigenRouteAgreesWithSvdRoute) {
  ParameterSampler s(233);
  for (int t = 0; t < 200; ++t) {
    const auto d = s.draw();
    const auto lm = build_lambda(d.amps, d.overlaps);
    if (std::abs(lm.k_value) < 1e-6) continue;
    const Ket f = std::get<Ket>(apply_absorption(build_initial(InitialStateKind::Entangled), d.amps, d.overlaps));
    const auto svd_route = schmidt_decompose(f, Bipartition::ParticleSplit);
    const auto eig_route = eigen_schmidt_route(lm);
    ASSERT_EQ(svd_route.coefficients.size(), 2u);
    EXPECT_NEAR(eig_route.coefficients[0], svd_route.coefficients[0], 1e-10);
    EXPECT_NEAR(eig_route.coefficients[1], svd_route.coefficients[1], 1e-10);
    EXPECT_NEAR(eig_route.entropy_bits, svd_route.entropy_bits, 1e-9);
  }
}

TEST(Lambda, DegenerateSpectrumIsReported) {
  // a = 0 and c = 1 with beta = 0 make k vanish.
  const auto lm = build_lambda({1.0, 0.0, 0.6, 0.8}, RecoilOverlaps::from_overlaps(0.0, 1.0));
  EXPECT_NEAR(lm.k_value, 0.0, 1e-16);
  EXPECT_THROW(eigen_schmidt_route(lm), DegenerateSpectrum);
  EXPECT_THROW(eigen_schmidt_route(lm), NumericalGuard);
}

TEST(IsProductAcross, Examples) {
  EXPECT_TRUE(is_product_across(left_right_ket(), Bipartition::ParticleSplit));
  EXPECT_FALSE(is_product_across(psi0(), Bipartition::ParticleSplit));
  EXPECT_TRUE(is_product_across(psi0(), Bipartition::DofSplit));
  EXPECT_THROW(is_product_across(psi0(), Bipartition::DofSplit, 0.0), InvalidArgument);
  EXPECT_THROW(is_product_across(psi0(), Bipartition::DofSplit, 1.0), InvalidArgument);
  EXPECT_THROW(is_product_across(Ket{}, Bipartition::DofSplit), ZeroNorm);
}

TEST(IsProductAcross, InvariantUnderPhaseAndScale) {
  std::mt19937_64 rng(239);
  std::uniform_int_distribution<int> dim(1, 4);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int t = 0; t < 200; ++t) {
    const Ket x = detail::random_ket(rng, dim(rng), dim(rng));
    const Complex s = std::polar(u(rng), u(rng));
    for (auto split : {Bipartition::ParticleSplit, Bipartition::DofSplit})
      EXPECT_EQ(is_product_across(x, split), is_product_across(s * x, split));
  }
}

TEST(Classification, Examples) {
  EXPECT_EQ(hyperentanglement_report(left_right_ket()).classification, EntanglementClass::Separable);
  EXPECT_EQ(hyperentanglement_report(psi0()).classification, EntanglementClass::SingleDofEntangled);

  const auto amps = AbsorptionAmplitudes::with_auto_ground(0.3, 0.25);
  const auto stiff = hyperentanglement_report(no_recoil_final(InitialStateKind::Entangled, amps));
  EXPECT_TRUE(stiff.spatial_internal_product);
  EXPECT_TRUE(stiff.spatial_factor_entangled);
  EXPECT_FALSE(stiff.internal_factor_entangled);
  EXPECT_EQ(stiff.classification, EntanglementClass::SingleDofEntangled);

  // (LR + RL)(eg + ge) / 2 is entangled in both coordinates separately.
  Ket::Map m;
  for (auto [sa, sb] : {std::pair{Spatial::L, Spatial::R}, std::pair{Spatial::R, Spatial::L}})
    for (auto [ia, ib] : {std::pair{Internal::e, Internal::g}, std::pair{Internal::g, Internal::e}})
      m[{label_a(sa, ia), label_b(sb, ib)}] = 0.5;
  const auto both = hyperentanglement_report(Ket(std::move(m)));
  EXPECT_EQ(both.classification, EntanglementClass::ProductFormHyperentangled);

  const auto recoil = RecoilOverlaps::from_overlaps(0.7, 0.6);
  const Ket f = std::get<Ket>(apply_absorption(build_initial(InitialStateKind::Entangled), amps, recoil));
  const auto rep = hyperentanglement_report(f);
  EXPECT_FALSE(rep.spatial_internal_product);
  EXPECT_EQ(rep.classification, EntanglementClass::NonProductHyperentangled);
  EXPECT_NEAR(rep.particle_entropy_bits, 1.0, 1e-9);
}

TEST(Classification, NoRecoilFinalIsProductAcrossCoordinates) {
  ParameterSampler s(241);
  for (int t = 0; t < 200; ++t)
    EXPECT_TRUE(is_product_across(no_recoil_final(InitialStateKind::Entangled, s.draw().amps),
                                  Bipartition::DofSplit));
}

TEST(Classification, CoordinateEntanglementShrinksWithRecoil) {
  const auto amps = AbsorptionAmplitudes::with_auto_ground(0.3, 0.25);
  double last = 1.0;
  for (double b : {0.8, 0.4, 0.2, 0.1, 0.05, 0.01}) {
    const double a = std::sqrt(1.0 - b * b);
    const Ket f = std::get<Ket>(apply_absorption(build_initial(InitialStateKind::Entangled), amps,
                                                 RecoilOverlaps::from_overlaps(a, a)));
    const auto sv = singular_values(coefficient_matrix(f, Bipartition::DofSplit).matrix);
    const double ratio = sv[1] / sv[0];
    EXPECT_LT(ratio, last) << "b = " << b;
    last = ratio;
  }
}

}  // namespace
}  // namespace hyperent
