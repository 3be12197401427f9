// Copyright 2026 The qpm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Probability of every index as a function of the number of amplification
// steps, simulated next to the closed-form sinusoid.
//
//   grover_curve [QUERY] [T_MAX]    defaults: 1h, 20

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>

#include "qpm/qpm.hpp"

int main(int argc, char** argv) {
  try {
    const std::string name = argc > 1 ? argv[1] : "1h";
    const std::size_t t_max = argc > 2 ? std::stoul(argv[2]) : 20;
    const auto db = qpm::toy16_database();
    const auto query = qpm::binary_image(qpm::parse_toy_name(name));
    const auto scheme = qpm::EncodingScheme::kFrqi;
    const std::size_t n_data = qpm::data_qubits(query, scheme);

    const auto psi = qpm::build_matching_state(qpm::database_state(db, scheme),
                                               qpm::HouseholderPrep(qpm::encode_image(query, scheme)));
    const auto curve = qpm::analytic_curve(psi, n_data);
    const qpm::AAOperators ops(n_data, db.index_qubits(), qpm::Preparation::from_state(psi));
    const auto traj = qpm::grover_run(ops, t_max);

    std::cout << "# beta = " << curve.beta << ", omega = " << curve.omega << "\n";
    std::cout << "# t";
    for (const auto& l : db.labels()) std::cout << "  " << l << "(sim/ana)";
    std::cout << "\n" << std::fixed << std::setprecision(5);
    const std::size_t n_d = std::size_t{1} << n_data;
    for (std::size_t t = 0; t <= t_max; ++t) {
      std::cout << std::setw(3) << t;
      for (std::size_t x = 0; x < db.size(); ++x) {
        std::cout << "  " << std::norm(traj[t][x * n_d]) << "/"
                  << qpm::hit_probability(curve, x * n_d, static_cast<double>(t));
      }
      std::cout << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_FAILURE;
  }
  return EXIT_SUCCESS;
}
