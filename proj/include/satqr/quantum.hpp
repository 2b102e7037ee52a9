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

// Two-qubit states diagonal in the Bell basis. Every channel the simulator
// applies is a Pauli channel and Bell-measurement swapping maps such states
// to such states, so four weights describe a pair completely.
//
// Index layout: a Bell state is labelled by (bit flip, phase flip) relative
// to Phi+, index = 2*bit + phase:
//   0 = Phi+ (0,0)   1 = Phi- (0,1)   2 = Psi+ (1,0)   3 = Psi- (1,1)

#include <array>
#include <cstdint>

namespace satqr {

class BellDiagonalState {
 public:
  using Weights = std::array<double, 4>;

  BellDiagonalState() : w_{1.0, 0.0, 0.0, 0.0} {}
  /// Normalizes `w`; weights already summing to 1 within rounding are kept
  /// as is. Throws InvalidArgument on negative or all-zero weights.
  explicit BellDiagonalState(const Weights& w);

  static BellDiagonalState phi_plus() { return {}; }
  static BellDiagonalState fully_mixed() { return BellDiagonalState({0.25, 0.25, 0.25, 0.25}); }

  const Weights& weights() const { return w_; }
  double operator[](std::size_t i) const { return w_[i]; }
  double fidelity() const { return w_[0]; }

  bool operator==(const BellDiagonalState&) const = default;

 private:
  Weights w_;
};

struct ErrorRates {
  double e_x = 0.0;  // phase-flip weight
  double e_z = 0.0;  // bit-flip weight
};

/// Probability that a Z error has hit a qubit stored for `elapsed_s` in a
/// memory with dephasing time `dephasing_time_s`.
double dephasing_probability(double elapsed_s, double dephasing_time_s);

/// Memory dephasing on one qubit. The Bell-diagonal result does not depend
/// on which qubit is hit; `qubit` is accepted for symmetry with the dense
/// description and must be 0 or 1.
BellDiagonalState dephase(const BellDiagonalState& s, int qubit, double elapsed_s,
                          double dephasing_time_s);

/// Local depolarizing noise: with probability 1-alpha the qubit is replaced
/// by a maximally mixed one.
BellDiagonalState white_noise(const BellDiagonalState& s, int qubit, double alpha);

/// Entanglement swapping of A-B and B-C into A-C with Pauli-frame correction.
/// Bit and phase labels add mod 2, so the result is the Z2xZ2 convolution.
BellDiagonalState swap_states(const BellDiagonalState& left, const BellDiagonalState& right);

ErrorRates error_rates(const BellDiagonalState& s);

/// A Bell pair with node bookkeeping and lazy-dephasing timestamps.
struct TimedPair {
  BellDiagonalState state;
  std::array<std::uint32_t, 2> nodes{0, 1};
  std::array<double, 2> last_update{0.0, 0.0};
  double confirmed_at = 0.0;
};

/// Swaps two timed pairs at their single shared node. Both pairs must have
/// been brought up to the same time beforehand; the result carries that
/// time and the earlier confirmation. Throws InvalidArgument unless exactly
/// one node is shared.
TimedPair swap(const TimedPair& ab, const TimedPair& bc);

}  // namespace satqr
