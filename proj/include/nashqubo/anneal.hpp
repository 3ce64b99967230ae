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
#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include "nashqubo/sample_set.hpp"

namespace nashqubo {

/// Geometric temperature ladder from t_start down to t_end, one temperature
/// per full sweep over the variables.
struct AnnealSchedule {
  double t_start = 1.0;
  double t_end = 0.01;
  std::size_t sweeps = 1000;

  void validate() const {
    if (!(t_end > 0) || !(t_start >= t_end) || !std::isfinite(t_start))
      throw ParameterError("schedule needs t_start >= t_end > 0, got t_start=" + std::to_string(t_start) +
                           " t_end=" + std::to_string(t_end));
    if (sweeps < 1) throw ParameterError("schedule needs at least one sweep");
  }

  double temperature(std::size_t sweep) const {
    if (sweeps == 1) return t_end;
    const double frac = static_cast<double>(sweep) / static_cast<double>(sweeps - 1);
    return t_start * std::pow(t_end / t_start, frac);
  }

  /// t_start is the largest coefficient magnitude, so early sweeps accept
  /// almost every flip.
  static AnnealSchedule defaults_for(const QuboModel& model) {
    double biggest = 0;
    for (const auto& a : model.linear) biggest = std::max(biggest, std::abs(to_double(a)));
    for (const auto& [key, b] : model.quadratic) biggest = std::max(biggest, std::abs(to_double(b)));
    AnnealSchedule s;
    s.t_start = std::max(biggest, s.t_end);
    return s;
  }
};

/// Assignment plus per-variable local fields over the integer image of a
/// model: flip deltas are O(1), flips O(degree), and no rounding accumulates.
class FlipState {
 public:
  explicit FlipState(const IntegerQubo& iq)
      : iq_(&iq), scale_(1.0 / iq.denominator.convert_to<double>()), x_(iq.n_vars(), 0), field_(iq.linear) {
    energy_ = iq.offset;
  }

  void reset(const Assignment& x) {
    std::fill(x_.begin(), x_.end(), 0);
    field_ = iq_->linear;
    energy_ = iq_->offset;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i]) flip(i);
  }

  /// Energy change if variable i were flipped, in model units.
  double delta(std::size_t i) const { return static_cast<double>(delta_scaled(i)) * scale_; }
  /// Same, times the model's common denominator (exact).
  std::int64_t delta_scaled(std::size_t i) const { return x_[i] ? -field_[i] : field_[i]; }

  void flip(std::size_t i) {
    const std::int64_t sign = x_[i] ? -1 : 1;
    energy_ += sign * field_[i];
    x_[i] ^= 1;
    for (std::size_t t = iq_->start[i]; t < iq_->start[i + 1]; ++t) field_[iq_->neighbor[t]] += sign * iq_->weight[t];
  }

  double energy() const { return static_cast<double>(energy_) * scale_; }
  std::int64_t energy_scaled() const { return energy_; }
  const Assignment& assignment() const { return x_; }
  std::size_t size() const { return x_.size(); }

 private:
  const IntegerQubo* iq_;
  double scale_;
  Assignment x_;
  std::vector<std::int64_t> field_;
  std::int64_t energy_ = 0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Generator for one read, a pure function of (seed, read).
inline std::mt19937_64 read_generator(std::uint64_t seed, std::uint64_t read) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(read + 0x632be59bd9b4e019ULL)));
}

inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline Assignment anneal_once(const IntegerQubo& iq, const std::vector<double>& temperatures,
                              std::uint64_t seed, std::uint64_t read, FlipState& state) {
  std::mt19937_64 rng = read_generator(seed, read);
  Assignment start(iq.n_vars());
  for (auto& bit : start) bit = static_cast<std::uint8_t>(rng() >> 63);
  state.reset(start);
  const std::size_t n = iq.n_vars();
  for (double t : temperatures) {
    const double inv_t = 1.0 / t;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = state.delta(i);
      if (d <= 0.0) {
        state.flip(i);
        continue;
      }
      const double x = d * inv_t;
      if (x < 40.0 && unit_uniform(rng) < std::exp(-x)) state.flip(i);
    }
  }
  return state.assignment();
}

}  // namespace detail

/// Simulated annealing with single-bit Metropolis moves. Each read starts from
/// its own random assignment and returns its final state. Reads may run on
/// several threads; the result depends only on (model, reads, schedule,
/// seed).
inline SampleSet sample_sa(const QuboModel& model, std::size_t reads, const AnnealSchedule& schedule,
                           std::uint64_t seed, unsigned threads = 0) {
  if (reads < 1) throw ParameterError("reads must be at least 1");
  schedule.validate();
  auto started = std::chrono::steady_clock::now();
  const IntegerQubo iq = IntegerQubo::from(model);
  std::vector<double> temperatures(schedule.sweeps);
  for (std::size_t s = 0; s < schedule.sweeps; ++s) temperatures[s] = schedule.temperature(s);

  std::vector<Assignment> finals(reads);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, reads));
  auto worker = [&](unsigned w) {
    FlipState state(iq);
    for (std::size_t r = w; r < reads; r += threads)
      finals[r] = detail::anneal_once(iq, temperatures, seed, r, state);
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
  }

  std::vector<std::pair<Assignment, std::uint64_t>> draws;
  draws.reserve(reads);
  for (auto& x : finals) draws.emplace_back(std::move(x), 1);
  SampleSet out;
  out.records = aggregate(model, draws);
  out.info.sampler = "sa";
  out.info.seed = seed;
  out.info.reads = reads;
  out.info.sweeps = schedule.sweeps;
  out.info.t_start = schedule.t_start;
  out.info.t_end = schedule.t_end;
  out.info.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return out;
}

}  // namespace nashqubo
