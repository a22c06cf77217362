// Copyright 2026 The wavesearch Authors
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

#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "wavesearch/error.hpp"
#include "wavesearch/grover.hpp"

namespace wavesearch::wave {

// N real wave-mode amplitudes; a_i^2 is the energy held by mode i.
class OscillatorBank {
 public:
  explicit OscillatorBank(std::vector<double> amplitudes)
      : amplitudes_(std::move(amplitudes)) {
    detail::require(!amplitudes_.empty(), ErrorCode::kInvalidDimension,
                    "oscillator bank needs at least one mode");
    total_energy_ = 0.0;
    for (double a : amplitudes_) {
      detail::require(std::isfinite(a), ErrorCode::kInvalidArgument,
                      "mode amplitudes must be finite");
      total_energy_ += a * a;
    }
  }

  std::size_t size() const noexcept { return amplitudes_.size(); }
  double operator[](std::size_t i) const { return amplitudes_[i]; }
  std::span<const double> amplitudes() const noexcept { return amplitudes_; }

  // Energy at construction of the bank this one descends from.
  double total_energy() const noexcept { return total_energy_; }

  double measured_energy() const noexcept {
    double e = 0.0;
    for (double a : amplitudes_) e += a * a;
    return e;
  }

  double energy_fraction(std::size_t mode) const {
    detail::require(mode < size(), ErrorCode::kIndexOutOfRange,
                    "mode index out of range");
    return amplitudes_[mode] * amplitudes_[mode] / total_energy_;
  }

  friend bool operator==(const OscillatorBank& a, const OscillatorBank& b) {
    return a.amplitudes_ == b.amplitudes_;
  }

 private:
  friend OscillatorBank reflect_target(const OscillatorBank&, std::size_t);
  friend OscillatorBank invert_about_mean(const OscillatorBank&);

  OscillatorBank(std::vector<double> amplitudes, double energy)
      : amplitudes_(std::move(amplitudes)), total_energy_(energy) {}

  std::vector<double> amplitudes_;
  double total_energy_ = 0.0;
};

// Synchronized equilibrium: every mode at sqrt(E/N).
inline OscillatorBank init_bank(std::size_t n, double total_energy) {
  detail::require(n >= 2, ErrorCode::kInvalidDimension,
                  "oscillator bank needs N >= 2");
  detail::require(total_energy > 0.0 && std::isfinite(total_energy),
                  ErrorCode::kInvalidArgument, "total energy must be positive");
  return OscillatorBank(std::vector<double>(
      n, std::sqrt(total_energy / static_cast<double>(n))));
}

inline OscillatorBank reflect_target(const OscillatorBank& bank, std::size_t target) {
  detail::require(target < bank.size(), ErrorCode::kIndexOutOfRange,
                  "target mode out of range");
  std::vector<double> a(bank.amplitudes_);
  a[target] = -a[target];
  return OscillatorBank(std::move(a), bank.total_energy_);
}

inline OscillatorBank invert_about_mean(const OscillatorBank& bank) {
  const double mean = std::accumulate(bank.amplitudes_.begin(), bank.amplitudes_.end(), 0.0) /
                      static_cast<double>(bank.size());
  std::vector<double> a(bank.amplitudes_);
  for (double& x : a) x = 2.0 * mean - x;
  return OscillatorBank(std::move(a), bank.total_energy_);
}

inline OscillatorBank focus_step(const OscillatorBank& bank, std::size_t target) {
  return invert_about_mean(reflect_target(bank, target));
}

// Exact inverse of focus_step.
inline OscillatorBank disperse_step(const OscillatorBank& bank, std::size_t target) {
  return reflect_target(invert_about_mean(bank), target);
}

struct FixedSteps {
  std::size_t steps;
};

struct Threshold {
  double tau;
};

using FocusMode = std::variant<FixedSteps, Threshold>;

struct EnergyPoint {
  std::size_t step;
  double energy_fraction;
};

struct EnergyTrajectory {
  std::vector<EnergyPoint> points;
  grover::StopReason stop;
  OscillatorBank final_bank;
};

inline EnergyTrajectory run_focus(std::size_t n, std::size_t target, FocusMode mode,
                                  double total_energy = 1.0) {
  OscillatorBank bank = init_bank(n, total_energy);
  detail::require(target < n, ErrorCode::kIndexOutOfRange, "target mode out of range");

  std::size_t limit = 0;
  double tau = 2.0;  // unreachable unless a threshold is requested
  grover::StopReason stop = grover::StopReason::kFixedSteps;
  if (const auto* fixed = std::get_if<FixedSteps>(&mode)) {
    limit = fixed->steps;
  } else {
    tau = std::get<Threshold>(mode).tau;
    detail::require(tau > 0.0 && tau <= 1.0, ErrorCode::kInvalidArgument,
                    "threshold must lie in (0, 1]");
    limit = grover::threshold_step_cap(n);
    stop = grover::StopReason::kStepCap;
  }

  std::vector<EnergyPoint> points{{0, bank.energy_fraction(target)}};
  for (std::size_t k = 0;; ++k) {
    if (points.back().energy_fraction >= tau) {
      stop = grover::StopReason::kThreshold;
      break;
    }
    if (k == limit) break;
    bank = focus_step(bank, target);
    points.push_back({k + 1, bank.energy_fraction(target)});
  }
  return EnergyTrajectory{std::move(points), stop, std::move(bank)};
}

// Time-reversed run: records the energy fraction left at the formerly focused
// mode after each inverse step.
inline EnergyTrajectory run_disperse(const OscillatorBank& focused, std::size_t target,
                                     std::size_t steps) {
  detail::require(target < focused.size(), ErrorCode::kIndexOutOfRange,
                  "target mode out of range");
  OscillatorBank bank = focused;
  std::vector<EnergyPoint> points{{0, bank.energy_fraction(target)}};
  for (std::size_t k = 1; k <= steps; ++k) {
    bank = disperse_step(bank, target);
    points.push_back({k, bank.energy_fraction(target)});
  }
  return EnergyTrajectory{std::move(points), grover::StopReason::kFixedSteps, std::move(bank)};
}

struct ResourceReport {
  std::size_t wave_modes;
  std::size_t qubits;               // ceil(log2 N)
  std::size_t queries_classical;    // wave / quantum oracle calls
  std::size_t boolean_queries;      // binary search: ceil(log2 N)
  std::size_t boolean_bits;         // ceil(log2 N)
  std::size_t membership_queries;   // one-at-a-time worst case: N - 1
};

inline std::size_t ceil_log2(std::size_t n) {
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  return bits;
}

inline ResourceReport resource_report(std::size_t n) {
  detail::require(n >= 2, ErrorCode::kInvalidDimension, "resource_report needs N >= 2");
  const std::size_t bits = ceil_log2(n);
  return ResourceReport{n, bits, grover::optimal_queries(n, 1), bits, bits, n - 1};
}

}  // namespace wavesearch::wave
