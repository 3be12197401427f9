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

// Toy 16-image matching: index distribution of one query before and after
// amplification, with the ideal encoder.
//
//   toy_match [QUERY] [T]     defaults: 0h, auto (m = 1)

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>

#include "qpm/qpm.hpp"

int main(int argc, char** argv) {
  try {
    const std::string name = argc > 1 ? argv[1] : "0h";
    const auto db = qpm::toy16_database();
    const auto query = qpm::binary_image(qpm::parse_toy_name(name));

    qpm::MatchConfig cfg;
    if (argc > 2) {
      cfg.iterations = static_cast<std::size_t>(std::stoul(argv[2]));
    } else {
      cfg.iterations = qpm::AutoIterations{1};
    }
    const auto res = qpm::run_pipeline(db, query, cfg);
    const auto before = qpm::index_distribution(qpm::Preparation::from_state(res.psi_prime), res.report.n_data, 0);

    std::cout << "query " << name << "  beta = " << res.beta << "  t = " << res.iterations << "\n\n";
    std::cout << "label   HD   P(t=0)      P(t)\n";
    for (std::size_t x = 0; x < db.size(); ++x) {
      std::cout << std::left << std::setw(6) << db.labels()[x] << std::right << std::setw(4)
                << qpm::hamming_distance(query, db[x]) << std::fixed << std::setprecision(6) << std::setw(11)
                << before.probability[x] << std::setw(11) << res.report.probability[x] << "\n";
    }
    std::cout << "others    " << std::setw(11) << before.others << std::setw(11) << res.report.others << "\n";
    std::cout << "\nmatch: " << db.labels()[res.report.match_index] << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_FAILURE;
  }
  return EXIT_SUCCESS;
}
