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

#pragma once

// Discrete-event machinery shared by every protocol: a time-ordered event
// queue, seeded random streams, geometric trial sampling, multi-mode memory
// banks and the pair store with lazy dephasing.

#include <cstdint>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <vector>

#include "satqr/quantum.hpp"

namespace satqr {

enum class EventKind : std::uint8_t {
  PairEstablished,    // a link trial succeeded and both ends know it
  ConfirmationArrival,  // classical notice of a finished pair reaches the end stations
  Swap,
  DiscardCutoff,
  SourceEmission,
  ProtocolStep,
};

struct SimEvent {
  double time = 0.0;
  std::uint64_t seq = 0;  // assigned by EventQueue::schedule
  EventKind kind = EventKind::ProtocolStep;
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  std::uint64_t c = 0;
};

/// Min-queue on (time, insertion sequence); equal times resolve FIFO.
class EventQueue {
 public:
  /// Throws SimulationError if `ev.time` lies before the current clock.
  void schedule(SimEvent ev);
  /// Pops the earliest event and advances the clock to its time.
  SimEvent resolve_next();

  double clock() const { return clock_; }
  /// Time of the earliest pending event; the queue must not be empty.
  double next_time() const { return heap_.top().time; }
  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  std::uint64_t resolved() const { return resolved_; }

 private:
  struct Later {
    bool operator()(const SimEvent& x, const SimEvent& y) const {
      return x.time != y.time ? x.time > y.time : x.seq > y.seq;
    }
  };
  std::priority_queue<SimEvent, std::vector<SimEvent>, Later> heap_;
  double clock_ = 0.0;
  std::uint64_t next_seq_ = 0;
  std::uint64_t resolved_ = 0;
};

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);
/// Seed for stream `index` under `master`; stable when other indices are added.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);
Rng make_stream(std::uint64_t master, std::uint64_t stream);

/// Uniform draw on the open interval (0, 1).
double uniform_open(Rng& rng);

/// Number of Bernoulli(p) trials up to and including the first success,
/// by inverse CDF. Throws InvalidArgument for p outside (0, 1].
std::uint64_t sample_geometric(double p, Rng& rng);

/// Sum of `count` independent geometric(p) trial counts.
std::uint64_t sample_geometric_sum(std::uint64_t count, double p, Rng& rng);

/// One delivered end-to-end pair.
struct SampleRecord {
  double time = 0.0;
  BellDiagonalState state;
};

/// Brings both qubits of `pair` up to `now`. A non-positive or infinite
/// dephasing time marks a qubit that is not stored (measured on arrival).
/// Throws SimulationError if `now` precedes a last-update time.
void lazy_update(TimedPair& pair, double now, const std::array<double, 2>& dephasing_time_s);

/// n-mode memory attached to one side of a node. Each mode is free,
/// reserved by a running link trial, or holds one qubit of a stored pair.
class MemoryBank {
 public:
  static constexpr std::int64_t kFree = -1;
  static constexpr std::int64_t kReserved = -2;

  explicit MemoryBank(std::uint32_t modes = 0);

  std::uint32_t modes() const { return static_cast<std::uint32_t>(slots_.size()); }
  std::uint32_t free_count() const { return static_cast<std::uint32_t>(free_.size()); }
  std::uint32_t occupied_count() const { return occupied_; }
  bool is_free(std::uint32_t mode) const { return slots_.at(mode) == kFree; }

  /// Lowest free mode, or nullopt.
  std::optional<std::uint32_t> lowest_free() const;
  void reserve(std::uint32_t mode);
  /// Places pair `pair_id` into a reserved mode. It becomes eligible for
  /// swapping with key `confirmed_at`.
  void occupy(std::uint32_t mode, std::uint64_t pair_id, double confirmed_at);
  /// Repoints an occupied mode at a different pair (after a remote swap).
  void repoint(std::uint32_t mode, std::uint64_t pair_id);
  void release(std::uint32_t mode);

  std::int64_t slot(std::uint32_t mode) const { return slots_.at(mode); }
  /// Eligible qubit with the earliest confirmation (ties: lowest mode).
  std::optional<std::uint32_t> oldest() const;
  std::optional<double> oldest_confirmed() const;
  const std::set<std::pair<double, std::uint32_t>>& eligible() const { return eligible_; }

 private:
  std::vector<std::int64_t> slots_;
  std::vector<double> confirmed_;
  std::set<std::uint32_t> free_;
  std::set<std::pair<double, std::uint32_t>> eligible_;
  std::uint32_t occupied_ = 0;
};

}  // namespace satqr
