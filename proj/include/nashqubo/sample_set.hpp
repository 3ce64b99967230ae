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

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "nashqubo/qubo.hpp"

namespace nashqubo {

struct SampleRecord {
  Assignment assignment;
  Rational energy;
  std::uint64_t occurrences = 1;

  friend bool operator==(const SampleRecord&, const SampleRecord&) = default;
};

struct SampleSetInfo {
  std::string sampler;
  std::uint64_t seed = 0;
  std::uint64_t reads = 0;
  std::uint64_t sweeps = 0;
  double t_start = 0;
  double t_end = 0;
  double seconds = 0;
};

/// Records sorted by ascending energy, then descending occurrences, then
/// lexicographic assignment; no assignment appears twice.
struct SampleSet {
  std::vector<SampleRecord> records;
  SampleSetInfo info;

  std::uint64_t total_occurrences() const {
    std::uint64_t total = 0;
    for (const auto& r : records) total += r.occurrences;
    return total;
  }
};

inline void sort_records(std::vector<SampleRecord>& records) {
  std::sort(records.begin(), records.end(), [](const SampleRecord& a, const SampleRecord& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    if (a.occurrences != b.occurrences) return a.occurrences > b.occurrences;
    return a.assignment < b.assignment;
  });
}

/// Merges duplicate assignments, recomputes every energy exactly and sorts.
inline std::vector<SampleRecord> aggregate(const QuboModel& model,
                                           const std::vector<std::pair<Assignment, std::uint64_t>>& draws) {
  std::map<Assignment, std::uint64_t> counts;
  for (const auto& [x, k] : draws) counts[x] += k;
  std::vector<SampleRecord> records;
  records.reserve(counts.size());
  for (auto& [x, k] : counts) records.push_back({x, energy(model, x), k});
  sort_records(records);
  return records;
}

/// Integer image of a QuboModel: every coefficient multiplied by the common
/// denominator D, so energy(x) = value(x) / D exactly. Neighbour lists are
/// stored in CSR form. Both exhaustive enumeration and annealing run on it.
struct IntegerQubo {
  BigInt denominator = 1;
  std::int64_t offset = 0;
  std::vector<std::int64_t> linear;
  std::vector<std::size_t> start;  // size n + 1
  std::vector<std::uint32_t> neighbor;
  std::vector<std::int64_t> weight;

  std::size_t n_vars() const { return linear.size(); }

  static IntegerQubo from(const QuboModel& model) {
    IntegerQubo out;
    BigInt d = boost::multiprecision::denominator(model.offset);
    for (const auto& a : model.linear) d = lcm(d, boost::multiprecision::denominator(a));
    for (const auto& [key, b] : model.quadratic) d = lcm(d, boost::multiprecision::denominator(b));
    out.denominator = d;

    BigInt magnitude = 0;
    auto scaled = [&](const Rational& v) {
      BigInt s = numerator(v) * (d / boost::multiprecision::denominator(v));
      magnitude += abs(s);
      return s;
    };
    out.offset = to_int64(scaled(model.offset), "scaled offset");
    const std::size_t n = model.n_vars();
    for (const auto& a : model.linear) out.linear.push_back(to_int64(scaled(a), "scaled coefficient"));

    std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> adj(n);
    for (const auto& [key, b] : model.quadratic) {
      std::int64_t w = to_int64(scaled(b), "scaled coefficient");
      adj[key.first].emplace_back(static_cast<std::uint32_t>(key.second), w);
      adj[key.second].emplace_back(static_cast<std::uint32_t>(key.first), w);
    }
    if (magnitude >= (BigInt(1) << 62))
      throw CapacityError("integer image of the model could overflow 64-bit energies");
    out.start.push_back(0);
    for (std::size_t i = 0; i < n; ++i) {
      for (auto& [j, w] : adj[i]) {
        out.neighbor.push_back(j);
        out.weight.push_back(w);
      }
      out.start.push_back(out.neighbor.size());
    }
    return out;
  }
};

/// Exhaustive-enumeration limit: NASHQUBO_CAPACITY when set, else 24.
inline std::size_t default_capacity() {
  if (const char* env = std::getenv("NASHQUBO_CAPACITY")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 40) return v;
    throw ParameterError("NASHQUBO_CAPACITY must be an integer in [1, 40], got '" + std::string(env) + "'");
  }
  return 24;
}

}  // namespace nashqubo
