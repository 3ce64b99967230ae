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

#pragma once

#include <chrono>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "nashqubo/sample_set.hpp"
#include "nashqubo/subprocess.hpp"

namespace nashqubo {

/// An external sampler program.
///
/// Protocol: the program receives the QuboModel JSON document on stdin, with
/// one extra top-level key "params": {"reads": N, "seed": S}. It writes one
/// JSON object per line to stdout,
///   {"assignment": [0, 1, ...], "energy": <number>, "occurrences": k}
/// ("occurrences" defaults to 1) and exits with status 0.
struct ExternalCommand {
  std::vector<std::string> argv;

  /// Runs `command` through /bin/sh -c.
  static ExternalCommand shell(const std::string& command) { return {{"/bin/sh", "-c", command}}; }
};

inline constexpr double kExternalEnergyTolerance = 1e-9;

/// Parses the line-delimited records of an external sampler and checks every
/// reported energy against the exact one.
inline std::vector<std::pair<Assignment, std::uint64_t>> parse_external_records(const QuboModel& model,
                                                                                 const std::string& output) {
  std::vector<std::pair<Assignment, std::uint64_t>> draws;
  std::istringstream lines(output);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "record on line " + std::to_string(line_no);
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ProtocolError("malformed " + where + ": " + e.what());
    }
    if (!rec.is_object() || !rec.contains("assignment") || !rec.contains("energy") || !rec["assignment"].is_array())
      throw ProtocolError("malformed " + where + ": needs \"assignment\" array and \"energy\"");
    Assignment x;
    for (const auto& bit : rec["assignment"]) {
      if (!bit.is_number_integer() || (bit.get<int>() != 0 && bit.get<int>() != 1))
        throw ProtocolError("malformed " + where + ": assignment entries must be 0 or 1");
      x.push_back(static_cast<std::uint8_t>(bit.get<int>()));
    }
    if (x.size() != model.n_vars())
      throw ProtocolError("malformed " + where + ": assignment has " + std::to_string(x.size()) +
                          " bits, model has " + std::to_string(model.n_vars()));
    std::uint64_t occurrences = 1;
    if (rec.contains("occurrences")) {
      if (!rec["occurrences"].is_number_unsigned() || rec["occurrences"].get<std::uint64_t>() == 0)
        throw ProtocolError("malformed " + where + ": occurrences must be a positive integer");
      occurrences = rec["occurrences"].get<std::uint64_t>();
    }
    double reported = 0;
    try {
      reported = to_double(rational_from_json(rec["energy"]));
    } catch (const ParseError& e) {
      throw ProtocolError("malformed " + where + ": " + e.what());
    }
    const double exact = to_double(energy(model, x));
    if (!(std::abs(reported - exact) <= kExternalEnergyTolerance * std::max(1.0, std::abs(exact))))
      throw IntegrityError(where + " reports energy " + std::to_string(reported) + " but the assignment has " +
                           std::to_string(exact));
    draws.emplace_back(std::move(x), occurrences);
  }
  return draws;
}

inline SampleSet sample_external(const QuboModel& model, const ExternalCommand& command, std::size_t reads,
                                 std::uint64_t seed = 0) {
  if (reads < 1) throw ParameterError("reads must be at least 1");
  auto started = std::chrono::steady_clock::now();
  nlohmann::json doc = to_json(model);
  doc["params"] = {{"reads", reads}, {"seed", seed}};
  ProcessResult result = run_process(command.argv, doc.dump());
  if (result.exit_code != 0)
    throw ProcessError("external sampler exited with status " + std::to_string(result.exit_code));
  SampleSet out;
  out.records = aggregate(model, parse_external_records(model, result.output));
  out.info.sampler = "external";
  out.info.seed = seed;
  out.info.reads = reads;
  out.info.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return out;
}

}  // namespace nashqubo
