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

#include "satqr/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "satqr/errors.hpp"

namespace satqr {

namespace {

void check_qubit(int qubit) {
  if (qubit != 0 && qubit != 1) throw InvalidArgument("qubit index must be 0 or 1");
}

}  // namespace

BellDiagonalState::BellDiagonalState(const Weights& w) {
  double sum = 0.0;
  for (double v : w) {
    if (!(v >= 0.0)) throw InvalidArgument("Bell-diagonal weights must be nonnegative");
    sum += v;
  }
  if (!(sum > 0.0)) throw InvalidArgument("Bell-diagonal weights must not all vanish");
  // Already normalized up to rounding: keep the weights bit for bit.
  if (std::abs(sum - 1.0) <= 8 * std::numeric_limits<double>::epsilon()) {
    w_ = w;
    return;
  }
  for (std::size_t i = 0; i < 4; ++i) w_[i] = w[i] / sum;
}

double dephasing_probability(double elapsed_s, double dephasing_time_s) {
  if (!(elapsed_s >= 0.0)) throw InvalidArgument("elapsed time must be >= 0");
  if (!(dephasing_time_s > 0.0)) throw InvalidArgument("dephasing time must be > 0");
  return -0.5 * std::expm1(-elapsed_s / dephasing_time_s);
}

BellDiagonalState dephase(const BellDiagonalState& s, int qubit, double elapsed_s,
                          double dephasing_time_s) {
  check_qubit(qubit);
  if (std::isinf(dephasing_time_s) && dephasing_time_s > 0) return s;
  const double lam = dephasing_probability(elapsed_s, dephasing_time_s);
  if (lam == 0.0) return s;
  const auto& w = s.weights();
  // Z flips the phase label: Phi+ <-> Phi-, Psi+ <-> Psi-.
  return BellDiagonalState({(1 - lam) * w[0] + lam * w[1], (1 - lam) * w[1] + lam * w[0],
                            (1 - lam) * w[2] + lam * w[3], (1 - lam) * w[3] + lam * w[2]});
}

BellDiagonalState white_noise(const BellDiagonalState& s, int qubit, double alpha) {
  check_qubit(qubit);
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in [0,1]");
  if (alpha == 1.0) return s;
  const double mix = 0.25 * (1.0 - alpha);
  const auto& w = s.weights();
  return BellDiagonalState(
      {alpha * w[0] + mix, alpha * w[1] + mix, alpha * w[2] + mix, alpha * w[3] + mix});
}

BellDiagonalState swap_states(const BellDiagonalState& left, const BellDiagonalState& right) {
  BellDiagonalState::Weights out{0, 0, 0, 0};
  const auto& a = left.weights();
  const auto& b = right.weights();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out[i ^ j] += a[i] * b[j];
  return BellDiagonalState(out);
}

ErrorRates error_rates(const BellDiagonalState& s) {
  const auto& w = s.weights();
  return {w[1] + w[3], w[2] + w[3]};
}

TimedPair swap(const TimedPair& ab, const TimedPair& bc) {
  int shared = 0;
  std::size_t i_ab = 0, i_bc = 0;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      if (ab.nodes[i] == bc.nodes[j]) {
        ++shared;
        i_ab = i;
        i_bc = j;
      }
  if (shared != 1 || ab.nodes[0] == ab.nodes[1] || bc.nodes[0] == bc.nodes[1])
    throw InvalidArgument("swap needs pairs sharing exactly one node");

  TimedPair out;
  out.state = swap_states(ab.state, bc.state);
  out.nodes = {ab.nodes[1 - i_ab], bc.nodes[1 - i_bc]};
  out.last_update = {ab.last_update[1 - i_ab], bc.last_update[1 - i_bc]};
  out.confirmed_at = std::min(ab.confirmed_at, bc.confirmed_at);
  return out;
}

}  // namespace satqr
