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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wavesearch/error.hpp"
#include "wavesearch/statevec.hpp"

namespace wavesearch::grover {

// One search problem: database size, marked set, oracle and diffusion phases
// and the state the diffusion operator reflects about.
class SearchSpec {
 public:
  SearchSpec(std::size_t n, std::vector<std::size_t> targets,
             double oracle_phase = kPi, double diffusion_phase = kPi,
             std::optional<StateVector> initial = std::nullopt)
      : n_(n),
        targets_(std::move(targets)),
        oracle_phase_(oracle_phase),
        diffusion_phase_(diffusion_phase),
        initial_(initial ? std::move(*initial) : uniform_state(std::max<std::size_t>(n, 1))) {
    detail::require(n_ >= 2, ErrorCode::kInvalidDimension,
                    "search requires N >= 2");
    detail::require(!targets_.empty(), ErrorCode::kInvalidArgument,
                    "target set must be non-empty");
    std::sort(targets_.begin(), targets_.end());
    detail::require(std::adjacent_find(targets_.begin(), targets_.end()) == targets_.end(),
                    ErrorCode::kInvalidArgument, "target indices must be distinct");
    detail::require(targets_.back() < n_, ErrorCode::kIndexOutOfRange,
                    "target index out of range");
    detail::require(targets_.size() < n_, ErrorCode::kInvalidArgument,
                    "target count M must satisfy M < N");
    check_phase(oracle_phase_, "oracle phase");
    check_phase(diffusion_phase_, "diffusion phase");
    detail::require(initial_.dimension() == n_, ErrorCode::kDimensionMismatch,
                    "initial state dimension differs from N");
    detail::require(initial_.is_normalized(), ErrorCode::kUnnormalized,
                    "initial state is not normalized");
  }

  std::size_t n() const noexcept { return n_; }
  std::span<const std::size_t> targets() const noexcept { return targets_; }
  std::size_t target_count() const noexcept { return targets_.size(); }
  double oracle_phase() const noexcept { return oracle_phase_; }
  double diffusion_phase() const noexcept { return diffusion_phase_; }
  const StateVector& initial() const noexcept { return initial_; }

  double success_probability(const StateVector& state) const {
    return probability_on(state, targets_);
  }

 private:
  static void check_phase(double phase, const char* what) {
    detail::require(std::isfinite(phase), ErrorCode::kInvalidArgument,
                    std::string(what) + " must be finite");
    detail::require(std::abs(std::remainder(phase, 2.0 * kPi)) > 1e-12,
                    ErrorCode::kInvalidArgument,
                    std::string(what) + " must not be a multiple of 2*pi");
  }

  std::size_t n_;
  std::vector<std::size_t> targets_;
  double oracle_phase_;
  double diffusion_phase_;
  StateVector initial_;
};

enum class StopReason { kFixedSteps, kThreshold, kStepCap };

constexpr std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::kFixedSteps: return "fixed-steps";
    case StopReason::kThreshold: return "threshold";
    case StopReason::kStepCap: return "step-cap";
  }
  return "unknown";
}

struct TrajectoryPoint {
  std::size_t step;
  double success_probability;
};

struct Trajectory {
  SearchSpec spec;
  std::vector<TrajectoryPoint> points;
  StopReason stop;
  StateVector final_state;

  double final_probability() const { return points.back().success_probability; }
};

// Oracle: multiply every marked amplitude by e^{i phi}.
inline StateVector apply_oracle(const StateVector& state, const SearchSpec& spec) {
  detail::require(state.dimension() == spec.n(), ErrorCode::kDimensionMismatch,
                  "oracle: state dimension differs from N");
  std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
  const Complex factor = phase_factor(spec.oracle_phase());
  for (std::size_t t : spec.targets()) amps[t] *= factor;
  return StateVector(std::move(amps));
}

// One iteration U_G = -R_s R_t. The leading sign is applied only when the
// diffusion phase is pi; for other phases the step is R_s(phase) R_t(phase).
inline StateVector grover_step(const StateVector& state, const SearchSpec& spec) {
  StateVector marked = apply_oracle(state, spec);
  StateVector diffused = reflect_about(marked, spec.initial(), spec.diffusion_phase());
  if (std::abs(spec.diffusion_phase()) != kPi) return diffused;
  std::vector<Complex> amps(diffused.amplitudes().begin(), diffused.amplitudes().end());
  for (Complex& a : amps) a = -a;
  return StateVector(std::move(amps));
}

inline Trajectory run(const SearchSpec& spec, std::size_t steps) {
  StateVector state = spec.initial();
  std::vector<TrajectoryPoint> points;
  points.reserve(steps + 1);
  points.push_back({0, spec.success_probability(state)});
  for (std::size_t k = 1; k <= steps; ++k) {
    state = grover_step(state, spec);
    points.push_back({k, spec.success_probability(state)});
  }
  return Trajectory{spec, std::move(points), StopReason::kFixedSteps, std::move(state)};
}

inline std::size_t threshold_step_cap(std::size_t n) {
  return static_cast<std::size_t>(std::ceil(10.0 * std::sqrt(static_cast<double>(n))));
}

// Iterates until the success probability reaches tau, or ceil(10 sqrt N)
// steps have been taken.
inline Trajectory run_until_threshold(const SearchSpec& spec, double tau) {
  detail::require(tau > 0.0 && tau <= 1.0, ErrorCode::kInvalidArgument,
                  "threshold must lie in (0, 1]");
  const std::size_t cap = threshold_step_cap(spec.n());
  StateVector state = spec.initial();
  std::vector<TrajectoryPoint> points;
  points.push_back({0, spec.success_probability(state)});
  StopReason stop = StopReason::kStepCap;
  for (std::size_t k = 0;; ++k) {
    if (points.back().success_probability >= tau) {
      stop = StopReason::kThreshold;
      break;
    }
    if (k == cap) break;
    state = grover_step(state, spec);
    points.push_back({k + 1, spec.success_probability(state)});
  }
  return Trajectory{spec, std::move(points), stop, std::move(state)};
}

// Exact reduction to span{|t>, |t_perp>}. The angle theta is
// defined by <s|t> = cos(theta); formulas below use alpha = pi/2 - theta,
// so that sin(alpha) = overlap and the success probability after k steps is
// sin^2((2k+1) alpha).
struct TwoDModel {
  double overlap;
  double theta;
  double alpha;
  double rotation_per_iteration;             // pi - 2 theta
  std::array<double, 2> hg_eigenvalues;      // {2 theta - pi, pi - 2 theta}
  std::size_t optimal_q;

  double success_probability(std::size_t k) const {
    const double s = std::sin((2.0 * static_cast<double>(k) + 1.0) * alpha);
    return s * s;
  }
};

// Largest k whose rotation can still be on the way up to the first peak,
// capped at ceil(3/overlap).
inline std::size_t first_rotation_limit(double overlap) {
  const double quarter = std::ceil(kPi / (4.0 * std::asin(overlap)));
  return static_cast<std::size_t>(std::min(quarter, std::ceil(3.0 / overlap)));
}

inline TwoDModel two_d_model(double overlap) {
  detail::require(overlap > 0.0 && overlap <= 1.0, ErrorCode::kInvalidArgument,
                  "overlap must lie in (0, 1]");
  TwoDModel m{};
  m.overlap = overlap;
  m.theta = std::acos(overlap);
  m.alpha = std::asin(overlap);
  m.rotation_per_iteration = 2.0 * m.alpha;
  m.hg_eigenvalues = {-m.rotation_per_iteration, m.rotation_per_iteration};

  // Scan the first rotation towards the target; equal success (within
  // rounding) keeps the smaller count.
  const auto limit = first_rotation_limit(overlap);
  std::size_t best = 0;
  double best_p = m.success_probability(0);
  for (std::size_t k = 1; k <= limit; ++k) {
    const double p = m.success_probability(k);
    if (p > best_p + 1e-13) {
      best = k;
      best_p = p;
    }
  }
  m.optimal_q = best;
  return m;
}

inline std::size_t optimal_queries(std::size_t n, std::size_t m) {
  detail::require(m >= 1 && m < n, ErrorCode::kInvalidArgument,
                  "optimal_queries requires 1 <= M < N");
  return two_d_model(std::sqrt(static_cast<double>(m) / static_cast<double>(n))).optimal_q;
}

// Real-valued N solving (2Q+1) asin(1/sqrt N) = pi/2.
inline double database_size_for_queries(std::int64_t q) {
  detail::require(q >= 1, ErrorCode::kInvalidArgument,
                  "query count must be at least 1");
  // Extended precision keeps Q = 1 at exactly 4 after the final rounding.
  const long double pi = std::numbers::pi_v<long double>;
  const long double s = std::sin(pi / (2.0L * (2.0L * static_cast<long double>(q) + 1.0L)));
  return static_cast<double>(1.0L / (s * s));
}

// Items distinguishable by binary search with Q binary queries.
inline std::uint64_t boolean_search_size(std::int64_t q) {
  detail::require(q >= 1, ErrorCode::kInvalidArgument,
                  "query count must be at least 1");
  detail::require(q <= 62, ErrorCode::kOverflow, "2^Q overflows for Q > 62");
  return std::uint64_t{1} << q;
}

// U_G = -R_s R_t written in the {|t>, |t_perp>} basis.
inline Eigen::Matrix2cd grover_operator_2d(double overlap) {
  const double c = overlap;
  const double s = std::sqrt(1.0 - overlap * overlap);
  Eigen::Matrix2cd u;
  u << 1.0 - 2.0 * c * c, 2.0 * c * s,
       -2.0 * c * s, 2.0 * s * s - 1.0;
  return u;
}

struct HgEigenpair {
  double eigenvalue;
  StateVector eigenvector;  // components on {|t>, |t_perp>}
};

// Eigenpairs of H_G tau = (2 theta - pi) sigma_2: (1, +i)/sqrt2 carries
// 2 theta - pi and (1, -i)/sqrt2 carries pi - 2 theta. Each pair is checked
// against U_G v = e^{-i lambda} v before it is returned.
inline std::array<HgEigenpair, 2> hg_spectrum(double overlap) {
  detail::require(overlap > 0.0 && overlap < 1.0, ErrorCode::kDegenerateGeometry,
                  "hg_spectrum requires 0 < overlap < 1");
  const double theta = std::acos(overlap);
  const double lambda = 2.0 * theta - kPi;
  const double r = 1.0 / std::sqrt(2.0);
  std::array<HgEigenpair, 2> pairs{
      HgEigenpair{lambda, StateVector({Complex{r, 0.0}, Complex{0.0, r}})},
      HgEigenpair{-lambda, StateVector({Complex{r, 0.0}, Complex{0.0, -r}})}};

  const Eigen::Matrix2cd u = grover_operator_2d(overlap);
  for (const HgEigenpair& p : pairs) {
    const Eigen::Vector2cd v(p.eigenvector[0], p.eigenvector[1]);
    const Eigen::Vector2cd residual = u * v - std::polar(1.0, -p.eigenvalue) * v;
    detail::require(residual.norm() <= 1e-10, ErrorCode::kSolverFailure,
                    "hg_spectrum: eigenpair failed U_G v = exp(-i lambda) v");
  }
  return pairs;
}

// Restricts the simulated N-dimensional step to span{|s>, |t>} (|t> being the
// normalized projection of the initial state on the marked set) and returns
// the eigenphases of the resulting 2x2 block, ascending.
inline std::array<double, 2> subspace_eigenphases(const SearchSpec& spec) {
  const std::size_t n = spec.n();
  const StateVector& s = spec.initial();
  std::vector<Complex> t(n, Complex{0.0, 0.0});
  for (std::size_t i : spec.targets()) t[i] = s[i];
  double tn = 0.0;
  for (const Complex& a : t) tn += std::norm(a);
  detail::require(tn > 1e-24, ErrorCode::kDegenerateGeometry,
                  "initial state has no weight on the marked set");
  tn = std::sqrt(tn);
  for (Complex& a : t) a /= tn;
  const StateVector t_state(t);
  const Complex st = inner_product(t_state, s);
  std::vector<Complex> perp(n);
  for (std::size_t i = 0; i < n; ++i) perp[i] = s[i] - st * t[i];
  double pn = 0.0;
  for (const Complex& a : perp) pn += std::norm(a);
  detail::require(pn > 1e-24, ErrorCode::kDegenerateGeometry,
                  "initial state lies inside the marked subspace");
  pn = std::sqrt(pn);
  for (Complex& a : perp) a /= pn;
  const std::array<StateVector, 2> basis{t_state, StateVector(perp)};

  Eigen::Matrix2cd block;
  for (int j = 0; j < 2; ++j) {
    const StateVector image = grover_step(basis[j], spec);
    for (int i = 0; i < 2; ++i) block(i, j) = inner_product(basis[i], image);
  }
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> solver(block, false);
  detail::require(solver.info() == Eigen::Success, ErrorCode::kSolverFailure,
                  "subspace_eigenphases: eigen solver failed");
  std::array<double, 2> phases{std::arg(solver.eigenvalues()(0)),
                               std::arg(solver.eigenvalues()(1))};
  std::sort(phases.begin(), phases.end());
  return phases;
}

struct Peak {
  std::size_t step;
  double probability;
};

// Largest success probability along a trajectory, earliest on ties.
inline Peak peak_success(const Trajectory& trajectory) {
  Peak best{0, -1.0};
  for (const TrajectoryPoint& p : trajectory.points) {
    if (p.success_probability > best.probability + 1e-13) {
      best = {p.step, p.success_probability};
    }
  }
  return best;
}

struct PhaseSweepRow {
  double phase;
  Peak matched;     // oracle and diffusion both at phase
  Peak mismatched;  // oracle at phase, diffusion at pi
};

// Peak single-target success within a fixed query budget for matched and
// mismatched phase pairs. budget = 0 uses optimal_queries(N, 1), the budget
// of the standard algorithm.
inline std::vector<PhaseSweepRow> phase_sweep(std::size_t n, std::span<const double> phases,
                                              std::size_t budget = 0) {
  if (budget == 0) budget = optimal_queries(n, 1);
  std::vector<PhaseSweepRow> rows;
  rows.reserve(phases.size());
  for (double phase : phases) {
    rows.push_back({phase, peak_success(run(SearchSpec(n, {0}, phase, phase), budget)),
                    peak_success(run(SearchSpec(n, {0}, phase, kPi), budget))});
  }
  return rows;
}

struct AmplificationResult {
  Trajectory trajectory;
  double overlap;
  std::size_t best_step;
  double best_probability;
};

// Grover iteration with the diffusion reflecting about an arbitrary initial
// state. Runs ceil(3/overlap) steps and reports the best one within the
// first rotation.
inline AmplificationResult amplitude_amplify(const StateVector& initial,
                                             std::vector<std::size_t> targets) {
  detail::require(initial.is_normalized(), ErrorCode::kUnnormalized,
                  "amplitude_amplify: initial state is not normalized");
  SearchSpec spec(initial.dimension(), std::move(targets), kPi, kPi, initial);
  const double overlap = std::sqrt(spec.success_probability(initial));
  detail::require(overlap > 1e-12, ErrorCode::kNoConvergence,
                  "initial state has zero overlap with the target subspace");
  const auto steps = static_cast<std::size_t>(std::ceil(3.0 / overlap));
  Trajectory trajectory = run(spec, steps);
  Peak peak{0, trajectory.points[0].success_probability};
  const std::size_t window = std::min(first_rotation_limit(std::min(overlap, 1.0)), steps);
  for (std::size_t k = 1; k <= window; ++k) {
    const double p = trajectory.points[k].success_probability;
    if (p > peak.probability + 1e-13) peak = {k, p};
  }
  detail::require(
      static_cast<double>(peak.step) <= std::ceil(2.0 / overlap),
      ErrorCode::kNoConvergence, "best step exceeds ceil(2/overlap)");
  return AmplificationResult{std::move(trajectory), overlap, peak.step, peak.probability};
}

}  // namespace wavesearch::grover
