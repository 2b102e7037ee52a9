// Copyright 2026 The satqr Authors
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

#include "satqr/simcore.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "satqr/errors.hpp"

namespace satqr {

void EventQueue::schedule(SimEvent ev) {
  if (!(ev.time >= clock_))
    throw SimulationError("event scheduled in the past (t=" + std::to_string(ev.time) +
                          ", clock=" + std::to_string(clock_) + ")");
  ev.seq = next_seq_++;
  heap_.push(ev);
}

SimEvent EventQueue::resolve_next() {
  if (heap_.empty()) throw SimulationError("resolve_next on an empty event queue");
  SimEvent ev = heap_.top();
  heap_.pop();
  clock_ = ev.time;
  ++resolved_;
  return ev;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

Rng make_stream(std::uint64_t master, std::uint64_t stream) {
  const std::uint64_t s = derive_seed(master, stream);
  std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32)};
  return Rng(seq);
}

double uniform_open(Rng& rng) {
  // 53 random bits, shifted by half an ulp so 0 and 1 are never produced.
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t sample_geometric(double p, Rng& rng) {
  if (!(p > 0.0 && p <= 1.0)) throw InvalidArgument("geometric sampling needs p in (0,1]");
  if (p == 1.0) return 1;
  const double k = std::ceil(std::log(uniform_open(rng)) / std::log1p(-p));
  if (!(k < 9.0e18)) throw SimulationError("geometric trial count overflow");
  return k < 1.0 ? 1 : static_cast<std::uint64_t>(k);
}

std::uint64_t sample_geometric_sum(std::uint64_t count, double p, Rng& rng) {
  if (!(p > 0.0 && p <= 1.0)) throw InvalidArgument("geometric sampling needs p in (0,1]");
  if (count == 0) return 0;
  if (p == 1.0) return count;
  if (count <= 8) {
    std::uint64_t total = 0;
    for (std::uint64_t i = 0; i < count; ++i) total += sample_geometric(p, rng);
    return total;
  }
  // Failures before the count-th success are negative-binomial distributed.
  std::negative_binomial_distribution<std::int64_t> failures(static_cast<std::int64_t>(count), p);
  return count + static_cast<std::uint64_t>(failures(rng));
}

void lazy_update(TimedPair& pair, double now, const std::array<double, 2>& dephasing_time_s) {
  for (int q = 0; q < 2; ++q) {
    const double dt = now - pair.last_update[q];
    if (dt < 0.0) throw SimulationError("lazy_update would move a qubit back in time");
    const double tdp = dephasing_time_s[q];
    if (dt > 0.0 && tdp > 0.0 && std::isfinite(tdp))
      pair.state = dephase(pair.state, q, dt, tdp);
    pair.last_update[q] = now;
  }
}

MemoryBank::MemoryBank(std::uint32_t modes) : slots_(modes, kFree), confirmed_(modes, 0.0) {
  for (std::uint32_t m = 0; m < modes; ++m) free_.insert(free_.end(), m);
}

std::optional<std::uint32_t> MemoryBank::lowest_free() const {
  if (free_.empty()) return std::nullopt;
  return *free_.begin();
}

void MemoryBank::reserve(std::uint32_t mode) {
  if (slots_.at(mode) != kFree) throw SimulationError("reserving a mode that is not free");
  slots_[mode] = kReserved;
  free_.erase(mode);
}

void MemoryBank::occupy(std::uint32_t mode, std::uint64_t pair_id, double confirmed_at) {
  if (slots_.at(mode) != kReserved) throw SimulationError("occupying a mode that was not reserved");
  slots_[mode] = static_cast<std::int64_t>(pair_id);
  confirmed_[mode] = confirmed_at;
  eligible_.emplace(confirmed_at, mode);
  ++occupied_;
}

void MemoryBank::repoint(std::uint32_t mode, std::uint64_t pair_id) {
  if (slots_.at(mode) < 0) throw SimulationError("repointing an empty mode");
  slots_[mode] = static_cast<std::int64_t>(pair_id);
}

void MemoryBank::release(std::uint32_t mode) {
  const std::int64_t s = slots_.at(mode);
  if (s == kFree) throw SimulationError("releasing a mode that is already free");
  if (s >= 0) {
    eligible_.erase({confirmed_[mode], mode});
    --occupied_;
  }
  slots_[mode] = kFree;
  free_.insert(mode);
}

std::optional<std::uint32_t> MemoryBank::oldest() const {
  if (eligible_.empty()) return std::nullopt;
  return eligible_.begin()->second;
}

std::optional<double> MemoryBank::oldest_confirmed() const {
  if (eligible_.empty()) return std::nullopt;
  return eligible_.begin()->first;
}

}  // namespace satqr
