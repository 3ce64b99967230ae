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

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "nashqubo/sample_set.hpp"

namespace nashqubo {

struct ExhaustiveOptions {
  std::size_t max_vars = 24;
  std::size_t max_records = std::size_t{1} << 20;
  bool force_decomposition = false;
};

/// Enumeration plan. Small models are enumerated directly. Larger compiled
/// models split into core variables (p, q, alpha, beta bits) and blocks:
/// connected groups of slack bits with no edges between groups. Fixing the
/// core makes the blocks independent, so the exact minimum is the core energy
/// plus each block's own minimum, found by enumerating the block alone.
struct ExhaustivePlan {
  std::vector<std::size_t> core;
  std::vector<std::vector<std::size_t>> blocks;

  /// log2 of the number of energy evaluations.
  double work_bits() const {
    double block_states = 0;
    for (const auto& b : blocks) block_states += std::ldexp(1.0, static_cast<int>(b.size()));
    return static_cast<double>(core.size()) + (blocks.empty() ? 0.0 : std::log2(block_states));
  }
};

inline ExhaustivePlan plan_exhaustive(const QuboModel& model) {
  const std::size_t n = model.n_vars();
  ExhaustivePlan plan;
  std::vector<char> in_core(n, 1);
  if (model.varmap.size() == n)
    for (std::size_t v = 0; v < n; ++v) in_core[v] = model.varmap[v].role != VarRole::slack;
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& [key, b] : model.quadratic) {
    adj[key.first].push_back(key.second);
    adj[key.second].push_back(key.first);
  }
  std::vector<char> seen(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (in_core[v]) {
      plan.core.push_back(v);
      continue;
    }
    if (seen[v]) continue;
    std::vector<std::size_t> block{v};
    seen[v] = 1;
    for (std::size_t k = 0; k < block.size(); ++k)
      for (std::size_t w : adj[block[k]])
        if (!in_core[w] && !seen[w]) {
          seen[w] = 1;
          block.push_back(w);
        }
    std::sort(block.begin(), block.end());
    plan.blocks.push_back(std::move(block));
  }
  return plan;
}

namespace detail {

/// Collects all minimizers while bounding how many are kept.
struct TieSink {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::size_t count = 0;
  std::size_t limit = 0;

  bool offer(std::int64_t e, std::size_t multiplicity) {
    if (e > best) return false;
    if (e < best) {
      best = e;
      count = 0;
    }
    count += multiplicity;
    if (count > limit)
      throw CapacityError("more than " + std::to_string(limit) + " tied ground states");
    return true;
  }
};

inline SampleSet finish_exhaustive(const QuboModel& model, std::vector<Assignment> minimizers,
                                   std::chrono::steady_clock::time_point started) {
  SampleSet out;
  for (auto& x : minimizers) {
    Rational e = energy(model, x);
    out.records.push_back({std::move(x), e, 1});
  }
  sort_records(out.records);
  out.info.sampler = "exhaustive";
  out.info.reads = out.records.size();
  out.info.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return out;
}

inline SampleSet enumerate_all(const QuboModel& model, const IntegerQubo& iq, const ExhaustiveOptions& opts) {
  auto started = std::chrono::steady_clock::now();
  const std::size_t n = iq.n_vars();
  std::vector<std::int64_t> field = iq.linear;
  Assignment x(n, 0);
  std::int64_t e = iq.offset;
  TieSink sink{.limit = opts.max_records};
  std::vector<std::uint64_t> ties;
  std::uint64_t code = 0;
  sink.offer(e, 1);
  ties.push_back(0);
  const std::uint64_t states = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < states; ++k) {
    const auto i = static_cast<std::size_t>(std::countr_zero(k));
    const std::int64_t sign = x[i] ? -1 : 1;
    e += sign * field[i];
    x[i] ^= 1;
    code ^= std::uint64_t{1} << i;
    for (std::size_t t = iq.start[i]; t < iq.start[i + 1]; ++t) field[iq.neighbor[t]] += sign * iq.weight[t];
    if (e <= sink.best) {
      if (e < sink.best) ties.clear();
      sink.offer(e, 1);
      ties.push_back(code);
    }
  }
  std::vector<Assignment> minimizers;
  for (std::uint64_t c : ties) {
    Assignment y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = static_cast<std::uint8_t>((c >> i) & 1u);
    minimizers.push_back(std::move(y));
  }
  return finish_exhaustive(model, std::move(minimizers), started);
}

struct Block {
  std::vector<std::size_t> vars;  // global indices
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> internal;  // local adjacency
};

/// Minimum of one block given the fields imposed by the core; fills `masks`
/// with every minimizing local assignment.
inline std::int64_t block_minimum(const Block& block, const std::vector<std::int64_t>& field,
                                  std::vector<std::int64_t>& local, std::vector<std::uint32_t>& masks) {
  const std::size_t m = block.vars.size();
  local.resize(m);
  for (std::size_t k = 0; k < m; ++k) local[k] = field[block.vars[k]];
  std::int64_t e = 0;
  std::int64_t best = 0;
  std::uint32_t state = 0;
  masks.assign(1, 0);
  const std::uint32_t states = std::uint32_t{1} << m;
  for (std::uint32_t k = 1; k < states; ++k) {
    const auto i = static_cast<std::size_t>(std::countr_zero(k));
    const bool on = (state >> i) & 1u;
    const std::int64_t sign = on ? -1 : 1;
    e += sign * local[i];
    state ^= std::uint32_t{1} << i;
    for (const auto& [j, w] : block.internal[i]) local[j] += sign * w;
    if (e < best) {
      best = e;
      masks.assign(1, state);
    } else if (e == best) {
      masks.push_back(state);
    }
  }
  return best;
}

inline SampleSet enumerate_decomposed(const QuboModel& model, const IntegerQubo& iq, const ExhaustivePlan& plan,
                                      const ExhaustiveOptions& opts) {
  auto started = std::chrono::steady_clock::now();
  const std::size_t n = iq.n_vars();
  for (const auto& b : plan.blocks)
    if (b.size() > 30) throw CapacityError("slack block of " + std::to_string(b.size()) + " bits is too large");

  std::vector<std::ptrdiff_t> block_of(n, -1);
  std::vector<std::size_t> local_of(n, 0);
  std::vector<Block> blocks(plan.blocks.size());
  for (std::size_t b = 0; b < plan.blocks.size(); ++b) {
    blocks[b].vars = plan.blocks[b];
    blocks[b].internal.resize(plan.blocks[b].size());
    for (std::size_t k = 0; k < plan.blocks[b].size(); ++k) {
      block_of[plan.blocks[b][k]] = static_cast<std::ptrdiff_t>(b);
      local_of[plan.blocks[b][k]] = k;
    }
  }
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (std::size_t k = 0; k < blocks[b].vars.size(); ++k) {
      const std::size_t v = blocks[b].vars[k];
      for (std::size_t t = iq.start[v]; t < iq.start[v + 1]; ++t)
        if (block_of[iq.neighbor[t]] == static_cast<std::ptrdiff_t>(b))
          blocks[b].internal[k].emplace_back(local_of[iq.neighbor[t]], iq.weight[t]);
    }

  // field[v] = linear[v] + sum of couplings to core variables that are set.
  std::vector<std::int64_t> field = iq.linear;
  std::vector<std::uint8_t> x(n, 0);
  std::int64_t core_energy = iq.offset;

  struct Tie {
    std::vector<std::uint8_t> core;
    std::vector<std::vector<std::uint32_t>> block_masks;
  };
  std::vector<Tie> ties;
  TieSink sink{.limit = opts.max_records};
  std::vector<std::int64_t> scratch;
  std::vector<std::vector<std::uint32_t>> masks(blocks.size());

  auto visit = [&]() {
    std::int64_t total = core_energy;
    std::size_t multiplicity = 1;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      total += block_minimum(blocks[b], field, scratch, masks[b]);
      multiplicity = std::min(multiplicity * masks[b].size(), opts.max_records + 1);
    }
    if (total > sink.best) return;
    if (total < sink.best) ties.clear();
    sink.offer(total, multiplicity);
    ties.push_back({x, masks});
  };

  visit();
  const std::size_t c = plan.core.size();
  const std::uint64_t states = std::uint64_t{1} << c;
  for (std::uint64_t k = 1; k < states; ++k) {
    const std::size_t u = plan.core[static_cast<std::size_t>(std::countr_zero(k))];
    const std::int64_t sign = x[u] ? -1 : 1;
    core_energy += sign * field[u];
    x[u] ^= 1;
    for (std::size_t t = iq.start[u]; t < iq.start[u + 1]; ++t) field[iq.neighbor[t]] += sign * iq.weight[t];
    visit();
  }

  std::vector<Assignment> minimizers;
  for (const auto& tie : ties) {
    std::vector<std::size_t> pick(blocks.size(), 0);
    while (true) {
      Assignment y = tie.core;
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        const std::uint32_t mask = tie.block_masks[b][pick[b]];
        for (std::size_t k = 0; k < blocks[b].vars.size(); ++k)
          y[blocks[b].vars[k]] = static_cast<std::uint8_t>((mask >> k) & 1u);
      }
      minimizers.push_back(std::move(y));
      std::size_t b = 0;
      for (; b < blocks.size(); ++b) {
        if (++pick[b] < tie.block_masks[b].size()) break;
        pick[b] = 0;
      }
      if (b == blocks.size()) break;
    }
  }
  return finish_exhaustive(model, std::move(minimizers), started);
}

}  // namespace detail

/// Every assignment attaining the exact minimum energy, each with one
/// occurrence. Models up to opts.max_vars variables are enumerated directly;
/// larger models are solved exactly through the core/block split of
/// plan_exhaustive as long as its work stays within 2^max_vars evaluations.
inline SampleSet solve_exhaustive(const QuboModel& model, const ExhaustiveOptions& opts = {}) {
  const IntegerQubo iq = IntegerQubo::from(model);
  if (model.n_vars() <= opts.max_vars && !opts.force_decomposition && model.n_vars() < 63)
    return detail::enumerate_all(model, iq, opts);
  const ExhaustivePlan plan = plan_exhaustive(model);
  if (plan.core.size() > 62 || plan.work_bits() > static_cast<double>(opts.max_vars))
    throw CapacityError("model with " + std::to_string(model.n_vars()) + " variables needs 2^" +
                        std::to_string(static_cast<int>(std::ceil(plan.work_bits()))) +
                        " evaluations; exhaustive capacity limit is 2^" + std::to_string(opts.max_vars) +
                        " (NASHQUBO_CAPACITY)");
  return detail::enumerate_decomposed(model, iq, plan, opts);
}

/// True when solve_exhaustive would accept the model under `max_vars`.
inline bool fits_exhaustive(const QuboModel& model, std::size_t max_vars) {
  if (model.n_vars() <= max_vars) return true;
  const ExhaustivePlan plan = plan_exhaustive(model);
  return plan.core.size() <= 62 && plan.work_bits() <= static_cast<double>(max_vars);
}

}  // namespace nashqubo
