// Copyright 2026 The nashqubo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reference external sampler: reads a QUBO model on stdin and answers with
// every ground state found by exhaustive enumeration, one JSON line each.

#include <iostream>
#include <iterator>
#include <string>

#include "nashqubo/exhaustive.hpp"

int main() {
  using namespace nashqubo;
  try {
    const std::string input{std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    const QuboModel model = qubo_from_json(nlohmann::json::parse(input));
    const SampleSet samples = solve_exhaustive(model, {.max_vars = default_capacity()});
    for (const auto& rec : samples.records) {
      nlohmann::json line = {{"assignment", rec.assignment},
                             {"energy", to_double(rec.energy)},
                             {"occurrences", rec.occurrences}};
      std::cout << line.dump() << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
