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
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wavesearch/error.hpp"

namespace wavesearch {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// Tolerance on ||axis||^2 - 1 accepted by reflect_about and friends.
inline constexpr double kNormTolerance = 1e-9;

// Dense vector of complex amplitudes over N basis states. Immutable once
// built; every operation returns a new value.
class StateVector {
 public:
  explicit StateVector(std::vector<Complex> amplitudes)
      : amplitudes_(std::move(amplitudes)) {
    detail::require(!amplitudes_.empty(), ErrorCode::kInvalidDimension,
                    "state dimension must be at least 1");
    for (const Complex& a : amplitudes_) {
      detail::require(std::isfinite(a.real()) && std::isfinite(a.imag()),
                      ErrorCode::kInvalidArgument,
                      "state amplitudes must be finite");
    }
  }

  static StateVector basis(std::size_t n, std::size_t index) {
    detail::require(n >= 1, ErrorCode::kInvalidDimension,
                    "state dimension must be at least 1");
    detail::require(index < n, ErrorCode::kIndexOutOfRange,
                    "basis index out of range");
    std::vector<Complex> amps(n, Complex{0.0, 0.0});
    amps[index] = Complex{1.0, 0.0};
    return StateVector(std::move(amps));
  }

  std::size_t dimension() const noexcept { return amplitudes_.size(); }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }

  double norm_squared() const noexcept {
    double sum = 0.0;
    for (const Complex& a : amplitudes_) sum += std::norm(a);
    return sum;
  }

  bool is_normalized(double tolerance = kNormTolerance) const noexcept {
    return std::abs(norm_squared() - 1.0) <= tolerance;
  }

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  std::vector<Complex> amplitudes_;
};

inline StateVector uniform_state(std::size_t n) {
  detail::require(n >= 1, ErrorCode::kInvalidDimension,
                  "uniform_state requires N >= 1");
  const double a = 1.0 / std::sqrt(static_cast<double>(n));
  return StateVector(std::vector<Complex>(n, Complex{a, 0.0}));
}

// <a|b>, conjugate-linear in a.
inline Complex inner_product(const StateVector& a, const StateVector& b) {
  detail::require(a.dimension() == b.dimension(), ErrorCode::kDimensionMismatch,
                  "inner_product: dimension mismatch");
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < a.dimension(); ++i) sum += std::conj(a[i]) * b[i];
  return sum;
}

inline double probability(const StateVector& state, std::size_t index) {
  detail::require(index < state.dimension(), ErrorCode::kIndexOutOfRange,
                  "probability: index out of range");
  return std::norm(state[index]);
}

// Total probability carried by a set of basis indices.
inline double probability_on(const StateVector& state,
                             std::span<const std::size_t> indices) {
  double sum = 0.0;
  for (std::size_t i : indices) sum += probability(state, i);
  return sum;
}

// 1 - e^{i phase}. A phase of exactly +-pi yields exactly 2 so the
// generalized reflection reduces bit-for-bit to I - 2P.
inline Complex reflection_coefficient(double phase) {
  if (std::abs(phase) == kPi) return Complex{2.0, 0.0};
  return Complex{1.0, 0.0} - std::polar(1.0, phase);
}

// e^{i phase}, exact -1 for +-pi.
inline Complex phase_factor(double phase) {
  if (std::abs(phase) == kPi) return Complex{-1.0, 0.0};
  return std::polar(1.0, phase);
}

// (I - (1 - e^{i phase}) |axis><axis|) state, applied as a rank-1 update.
inline StateVector reflect_about(const StateVector& state,
                                 const StateVector& axis, double phase) {
  detail::require(state.dimension() == axis.dimension(),
                  ErrorCode::kDimensionMismatch,
                  "reflect_about: dimension mismatch");
  detail::require(axis.is_normalized(), ErrorCode::kUnnormalized,
                  "reflect_about: axis is not normalized");
  const Complex scale = reflection_coefficient(phase) * inner_product(axis, state);
  std::vector<Complex> out(state.amplitudes().begin(), state.amplitudes().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= scale * axis[i];
  return StateVector(std::move(out));
}

}  // namespace wavesearch
