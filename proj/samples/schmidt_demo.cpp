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

// Walks one entangled pair through absorption using the library API directly
// and prints both Schmidt routes.

#include <iomanip>
#include <iostream>

#include "hyperent/absorption.hpp"
#include "hyperent/entanglement.hpp"

int main() {
  using namespace hyperent;

  const auto amps = AbsorptionAmplitudes::with_auto_ground(0.3, 0.25);
  const auto ov = RecoilOverlaps::from_overlaps(0.8, 0.7);

  const Ket psi0 = std::get<Ket>(build_initial(InitialStateKind::Entangled));
  const Ket psif = apply_absorption(psi0, amps, ov);

  std::cout << std::setprecision(12);
  std::cout << "final state has " << psif.size() << " basis entries\n";
  for (const auto& [key, amp] : psif.amplitudes())
    std::cout << "  (" << to_string(key.first) << "; " << to_string(key.second) << ")  " << amp
              << "\n";

  const auto svd_route = schmidt_decompose(psif, Bipartition::ParticleSplit);
  std::cout << "SVD route coefficients:";
  for (double c : svd_route.coefficients) std::cout << " " << c;
  std::cout << "\n  entropy " << svd_route.entropy_bits << " bits\n";

  const auto lm = build_lambda(amps, ov);
  const auto spectrum = lambda_spectrum_check(lm);
  std::cout << "lambda eigenvalues:";
  for (double e : spectrum.eigenvalues) std::cout << " " << e;
  std::cout << "\n  k = " << lm.k_value << ", verdict " << (spectrum.verdict ? "ok" : "mismatch")
            << "\n";
  std::cout << "eigen route entropy " << eigen_schmidt_route(lm).entropy_bits << " bits\n";

  const auto rep = hyperentanglement_report(psif);
  std::cout << "classification: " << to_string(rep.classification) << "\n";
  return 0;
}
