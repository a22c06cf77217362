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
#include <cmath>
#include <cstddef>
#include <numeric>
#include <queue>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "wavesearch/error.hpp"
#include "wavesearch/grover.hpp"
#include "wavesearch/statevec.hpp"

namespace wavesearch::spatial {

enum class GraphKind { kComplete, kTorus1d, kTorus2d, kCustom };

constexpr std::string_view to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::kComplete: return "complete";
    case GraphKind::kTorus1d: return "torus1d";
    case GraphKind::kTorus2d: return "torus2d";
    case GraphKind::kCustom: return "custom";
  }
  return "unknown";
}

// Undirected, connected, loop-free graph. The complete graph keeps no
// explicit adjacency; its neighbour lists are generated on demand.
class Graph {
 public:
  static Graph complete(std::size_t n) {
    detail::require(n >= 2, ErrorCode::kInvalidDimension, "complete graph needs V >= 2");
    Graph g;
    g.kind_ = GraphKind::kComplete;
    g.vertices_ = n;
    g.dims_ = {n};
    return g;
  }

  static Graph torus1d(std::size_t n) {
    detail::require(n >= 3, ErrorCode::kInvalidDimension, "ring needs at least 3 vertices");
    Graph g;
    g.kind_ = GraphKind::kTorus1d;
    g.vertices_ = n;
    g.dims_ = {n};
    g.adjacency_.resize(n);
    for (std::size_t v = 0; v < n; ++v) g.adjacency_[v] = {(v + 1) % n, (v + n - 1) % n};
    return g;
  }

  // Vertex (x, y) has index y * width + x. Coin directions are +x, -x, +y, -y.
  static Graph torus2d(std::size_t width, std::size_t height) {
    detail::require(width >= 3 && height >= 3, ErrorCode::kInvalidDimension,
                    "2-D torus sides must be at least 3");
    Graph g;
    g.kind_ = GraphKind::kTorus2d;
    g.vertices_ = width * height;
    g.dims_ = {width, height};
    g.adjacency_.resize(g.vertices_);
    for (std::size_t y = 0; y < height; ++y) {
      for (std::size_t x = 0; x < width; ++x) {
        g.adjacency_[y * width + x] = {
            y * width + (x + 1) % width, y * width + (x + width - 1) % width,
            ((y + 1) % height) * width + x, ((y + height - 1) % height) * width + x};
      }
    }
    return g;
  }

  static Graph custom(std::vector<std::vector<std::size_t>> adjacency) {
    Graph g;
    g.kind_ = GraphKind::kCustom;
    g.vertices_ = adjacency.size();
    g.dims_ = {adjacency.size()};
    g.adjacency_ = std::move(adjacency);
    g.validate();
    return g;
  }

  GraphKind kind() const noexcept { return kind_; }
  std::size_t vertex_count() const noexcept { return vertices_; }
  std::span<const std::size_t> dims() const noexcept { return dims_; }

  std::vector<std::size_t> neighbors(std::size_t v) const {
    detail::require(v < vertices_, ErrorCode::kIndexOutOfRange, "vertex out of range");
    if (kind_ != GraphKind::kComplete) return adjacency_[v];
    std::vector<std::size_t> out;
    out.reserve(vertices_ - 1);
    for (std::size_t u = 0; u < vertices_; ++u) {
      if (u != v) out.push_back(u);
    }
    return out;
  }

  std::size_t degree(std::size_t v) const {
    detail::require(v < vertices_, ErrorCode::kIndexOutOfRange, "vertex out of range");
    return kind_ == GraphKind::kComplete ? vertices_ - 1 : adjacency_[v].size();
  }

  bool is_regular() const {
    for (std::size_t v = 1; v < vertices_; ++v) {
      if (degree(v) != degree(0)) return false;
    }
    return true;
  }

 private:
  Graph() = default;

  void validate() const {
    detail::require(vertices_ >= 2, ErrorCode::kInvalidDimension, "graph needs V >= 2");
    for (std::size_t v = 0; v < vertices_; ++v) {
      std::vector<std::size_t> sorted = adjacency_[v];
      std::sort(sorted.begin(), sorted.end());
      detail::require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
                      ErrorCode::kInvalidArgument, "graph has a repeated edge");
      for (std::size_t u : adjacency_[v]) {
        detail::require(u < vertices_, ErrorCode::kIndexOutOfRange, "edge endpoint out of range");
        detail::require(u != v, ErrorCode::kInvalidArgument, "graph has a self-loop");
        const auto& back = adjacency_[u];
        detail::require(std::find(back.begin(), back.end(), v) != back.end(),
                        ErrorCode::kInvalidArgument, "adjacency is not symmetric");
      }
    }
    std::vector<bool> seen(vertices_, false);
    std::queue<std::size_t> frontier;
    frontier.push(0);
    seen[0] = true;
    std::size_t reached = 1;
    while (!frontier.empty()) {
      const std::size_t v = frontier.front();
      frontier.pop();
      for (std::size_t u : adjacency_[v]) {
        if (!seen[u]) {
          seen[u] = true;
          ++reached;
          frontier.push(u);
        }
      }
    }
    detail::require(reached == vertices_, ErrorCode::kInvalidArgument, "graph is not connected");
  }

  GraphKind kind_ = GraphKind::kCustom;
  std::size_t vertices_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

struct SeriesPoint {
  double time;  // step index for discrete walks
  double probability;
};

struct WalkTrajectory {
  std::vector<SeriesPoint> points;
  double max_norm_drift = 0.0;       // max |norm^2 - 1| seen before any correction
  std::size_t renormalizations = 0;  // continuous-time integrator only

  SeriesPoint peak() const {
    SeriesPoint best{0.0, -1.0};
    for (const SeriesPoint& p : points) {
      if (p.probability > best.probability) best = p;
    }
    return best;
  }
};

// ---------------------------------------------------------------------------
// Continuous-time walk on the complete graph, H = -gamma A - sum_w |w><w|.

namespace detail_ctqw {

inline void apply_hamiltonian(std::span<const Complex> psi, std::span<Complex> out,
                              double gamma, std::span<const std::size_t> targets) {
  Complex total{0.0, 0.0};
  for (const Complex& a : psi) total += a;
  // A = J - I on the complete graph.
  for (std::size_t i = 0; i < psi.size(); ++i) out[i] = -gamma * (total - psi[i]);
  for (std::size_t t : targets) out[t] -= psi[t];
}

}  // namespace detail_ctqw

// Integrates i d/dt psi = H psi from the uniform state with classical RK4 at a
// step no larger than dt, renormalizing only when the norm drifts by more
// than 1e-12. Samples every max(dt, T/1000) time units.
inline WalkTrajectory ctqw_search(const Graph& graph, double gamma,
                                  std::vector<std::size_t> targets, double total_time,
                                  double dt) {
  detail::require(graph.kind() == GraphKind::kComplete, ErrorCode::kUnsupportedGraph,
                  "ctqw_search supports only the complete graph");
  const std::size_t n = graph.vertex_count();
  detail::require(gamma > 0.0 && std::isfinite(gamma), ErrorCode::kInvalidArgument,
                  "gamma must be positive");
  detail::require(total_time >= 0.0 && std::isfinite(total_time), ErrorCode::kInvalidArgument,
                  "total time must be non-negative");
  detail::require(dt > 0.0 && dt <= 0.05 / std::sqrt(static_cast<double>(n)) * (1.0 + 1e-12),
                  ErrorCode::kInvalidArgument, "dt must lie in (0, 0.05/sqrt(N)]");
  // Validates the marked set.
  const grover::SearchSpec marked(n, std::move(targets));

  const auto steps = static_cast<std::size_t>(std::ceil(total_time / dt - 1e-9));
  const double h = steps > 0 ? total_time / static_cast<double>(steps) : 0.0;
  const std::size_t stride =
      steps > 0 ? std::max<std::size_t>(1, static_cast<std::size_t>(
                                               std::floor(total_time / 1000.0 / h + 1e-9)))
                : 1;

  const StateVector start = uniform_state(n);
  std::vector<Complex> psi(start.amplitudes().begin(), start.amplitudes().end());
  std::vector<Complex> k1(n), k2(n), k3(n), k4(n), tmp(n);
  const Complex minus_i{0.0, -1.0};
  auto derivative = [&](std::span<const Complex> x, std::span<Complex> out) {
    detail_ctqw::apply_hamiltonian(x, out, gamma, marked.targets());
    for (Complex& v : out) v *= minus_i;
  };
  auto target_probability = [&] {
    double p = 0.0;
    for (std::size_t t : marked.targets()) p += std::norm(psi[t]);
    return p;
  };

  WalkTrajectory out;
  out.points.push_back({0.0, target_probability()});
  for (std::size_t s = 1; s <= steps; ++s) {
    derivative(psi, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = psi[i] + 0.5 * h * k1[i];
    derivative(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = psi[i] + 0.5 * h * k2[i];
    derivative(tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = psi[i] + h * k3[i];
    derivative(tmp, k4);
    for (std::size_t i = 0; i < n; ++i) {
      psi[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    double norm2 = 0.0;
    for (const Complex& a : psi) norm2 += std::norm(a);
    const double drift = std::abs(norm2 - 1.0);
    out.max_norm_drift = std::max(out.max_norm_drift, drift);
    if (drift > 1e-12) {
      const double scale = 1.0 / std::sqrt(norm2);
      for (Complex& a : psi) a *= scale;
      ++out.renormalizations;
    }
    if (s % stride == 0 || s == steps) {
      out.points.push_back({static_cast<double>(s) * h, target_probability()});
    }
  }
  return out;
}

// Closed-form evolution of the same Hamiltonian restricted to
// span{|w>, |r>}: |w> uniform over the M marked vertices, |r> uniform over
// the rest.
struct TwoLevelReduction {
  double h_ww, h_wr, h_rr;
  double a, b;  // |s> = a|w> + b|r>

  TwoLevelReduction(std::size_t n, std::size_t m, double gamma) {
    detail::require(m >= 1 && m < n, ErrorCode::kInvalidArgument,
                    "two-level reduction requires 1 <= M < N");
    const double nn = static_cast<double>(n);
    a = std::sqrt(static_cast<double>(m) / nn);
    b = std::sqrt(static_cast<double>(n - m) / nn);
    // -gamma (N |s><s| - I) - P_marked
    h_ww = -gamma * nn * a * a + gamma - 1.0;
    h_wr = -gamma * nn * a * b;
    h_rr = -gamma * nn * b * b + gamma;
  }

  double frequency() const {
    const double hz = 0.5 * (h_ww - h_rr);
    return std::sqrt(hz * hz + h_wr * h_wr);
  }

  double probability(double t) const {
    const double hz = 0.5 * (h_ww - h_rr);
    const double w = frequency();
    const double c = std::cos(w * t);
    const double s = std::sin(w * t) / w;
    const double im = s * (hz * a + h_wr * b);
    return c * c * a * a + im * im;
  }

  // First maximum of probability(t).
  double peak_time() const { return kPi / (2.0 * frequency()); }
};

// ---------------------------------------------------------------------------
// Discrete-time coined walk: Grover coin on every unmarked vertex, -I on
// marked vertices, then the flip-flop shift. Amplitude (v, d) lives at index
// v * degree + d.

class CoinedWalk {
 public:
  CoinedWalk(const Graph& graph, std::vector<std::size_t> marked)
      : vertices_(graph.vertex_count()), marked_flag_(graph.vertex_count(), false) {
    detail::require(graph.kind() != GraphKind::kComplete, ErrorCode::kUnsupportedGraph,
                    "coined walk expects a torus or custom sparse graph");
    detail::require(graph.is_regular(), ErrorCode::kUnsupportedGraph,
                    "coined walk requires a degree-regular graph");
    degree_ = graph.degree(0);
    for (std::size_t v : marked) {
      detail::require(v < vertices_, ErrorCode::kIndexOutOfRange, "marked vertex out of range");
      marked_flag_[v] = true;
    }
    marked_.assign(marked.begin(), marked.end());
    std::sort(marked_.begin(), marked_.end());
    marked_.erase(std::unique(marked_.begin(), marked_.end()), marked_.end());

    // shift_[v * d + j] = index that amplitude (v, j) moves to.
    shift_.resize(vertices_ * degree_);
    for (std::size_t v = 0; v < vertices_; ++v) {
      const auto nv = graph.neighbors(v);
      for (std::size_t j = 0; j < degree_; ++j) {
        const std::size_t u = nv[j];
        const auto nu = graph.neighbors(u);
        const auto back = std::find(nu.begin(), nu.end(), v);
        shift_[v * degree_ + j] = u * degree_ + static_cast<std::size_t>(back - nu.begin());
      }
    }
  }

  std::size_t vertex_count() const noexcept { return vertices_; }
  std::size_t degree() const noexcept { return degree_; }
  std::size_t dimension() const noexcept { return vertices_ * degree_; }
  std::span<const std::size_t> marked() const noexcept { return marked_; }

  StateVector uniform() const { return uniform_state(dimension()); }

  // Walker at one vertex with the uniform coin state.
  StateVector localized(std::size_t vertex) const {
    detail::require(vertex < vertices_, ErrorCode::kIndexOutOfRange, "vertex out of range");
    std::vector<Complex> amps(dimension(), Complex{0.0, 0.0});
    const double c = 1.0 / std::sqrt(static_cast<double>(degree_));
    for (std::size_t j = 0; j < degree_; ++j) amps[vertex * degree_ + j] = c;
    return StateVector(std::move(amps));
  }

  StateVector step(const StateVector& state) const {
    detail::require(state.dimension() == dimension(), ErrorCode::kDimensionMismatch,
                    "coined walk: state dimension mismatch");
    std::vector<Complex> coined(state.amplitudes().begin(), state.amplitudes().end());
    const double inv_d = 1.0 / static_cast<double>(degree_);
    for (std::size_t v = 0; v < vertices_; ++v) {
      Complex* c = coined.data() + v * degree_;
      if (marked_flag_[v]) {
        for (std::size_t j = 0; j < degree_; ++j) c[j] = -c[j];
        continue;
      }
      Complex mean{0.0, 0.0};
      for (std::size_t j = 0; j < degree_; ++j) mean += c[j];
      mean *= inv_d;
      for (std::size_t j = 0; j < degree_; ++j) c[j] = 2.0 * mean - c[j];
    }
    std::vector<Complex> shifted(dimension());
    for (std::size_t i = 0; i < coined.size(); ++i) shifted[shift_[i]] = coined[i];
    return StateVector(std::move(shifted));
  }

  double vertex_probability(const StateVector& state, std::size_t vertex) const {
    double p = 0.0;
    for (std::size_t j = 0; j < degree_; ++j) p += std::norm(state[vertex * degree_ + j]);
    return p;
  }

  std::vector<double> vertex_distribution(const StateVector& state) const {
    std::vector<double> p(vertices_);
    for (std::size_t v = 0; v < vertices_; ++v) p[v] = vertex_probability(state, v);
    return p;
  }

  double marked_probability(const StateVector& state) const {
    double p = 0.0;
    for (std::size_t v : marked_) p += vertex_probability(state, v);
    return p;
  }

 private:
  std::size_t vertices_;
  std::size_t degree_ = 0;
  std::vector<bool> marked_flag_;
  std::vector<std::size_t> marked_;
  std::vector<std::size_t> shift_;
};

// Coined-walk search from the uniform state; records the probability on the
// marked set after each step.
inline WalkTrajectory dtqw_search(const Graph& graph, std::vector<std::size_t> targets,
                                  std::size_t steps) {
  detail::require(graph.kind() == GraphKind::kTorus1d || graph.kind() == GraphKind::kTorus2d ||
                      graph.kind() == GraphKind::kCustom,
                  ErrorCode::kUnsupportedGraph, "dtqw_search expects a torus graph");
  const CoinedWalk walk(graph, std::move(targets));
  StateVector state = walk.uniform();
  WalkTrajectory out;
  out.points.push_back({0.0, walk.marked_probability(state)});
  for (std::size_t k = 1; k <= steps; ++k) {
    state = walk.step(state);
    out.max_norm_drift = std::max(out.max_norm_drift, std::abs(state.norm_squared() - 1.0));
    out.points.push_back({static_cast<double>(k), walk.marked_probability(state)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Grover iteration with M equally phased targets on the complete graph;
// locates the first two success maxima.

struct RevivalResult {
  grover::Trajectory trajectory;
  std::size_t first_peak_step;
  double first_peak;
  std::size_t second_peak_step;
  double second_peak;
  std::size_t period_estimate;    // second_peak_step - first_peak_step
  double predicted_period;        // pi / (2 asin sqrt(M/V))
  double revival_ratio;           // second_peak / first_peak
  bool revived;                   // revival_ratio >= 0.95
};

inline std::size_t revival_search_limit(std::size_t vertices, std::size_t m) {
  return static_cast<std::size_t>(
      std::ceil(10.0 * std::sqrt(static_cast<double>(vertices) / static_cast<double>(m))));
}

// Runs max(steps, ceil(10 sqrt(V/M))) iterations; the peaks must appear within
// the latter bound.
inline RevivalResult multi_target_revival(const Graph& graph, std::vector<std::size_t> targets,
                                          std::size_t steps = 0) {
  detail::require(graph.kind() == GraphKind::kComplete, ErrorCode::kUnsupportedGraph,
                  "multi_target_revival supports only the complete graph");
  const std::size_t v = graph.vertex_count();
  const std::size_t m = targets.size();
  detail::require(m >= 2 && 2 * m < v, ErrorCode::kInvalidArgument,
                  "multi_target_revival requires 2 <= M < V/2");
  const std::size_t limit = revival_search_limit(v, m);
  const grover::SearchSpec spec(v, std::move(targets));
  grover::Trajectory trajectory = grover::run(spec, std::max(steps, limit));

  const auto& pts = trajectory.points;
  std::vector<std::size_t> peaks;
  const std::size_t last = std::min(limit, pts.size() - 1);
  for (std::size_t k = 1; k < last && peaks.size() < 2; ++k) {
    if (pts[k].success_probability > pts[k - 1].success_probability &&
        pts[k].success_probability >= pts[k + 1].success_probability) {
      peaks.push_back(k);
    }
  }
  detail::require(peaks.size() == 2, ErrorCode::kPeaksNotFound,
                  "two success maxima not found within ceil(10 sqrt(V/M)) steps");

  RevivalResult r{std::move(trajectory), 0, 0.0, 0, 0.0, 0, 0.0, 0.0, false};
  r.first_peak_step = peaks[0];
  r.second_peak_step = peaks[1];
  r.first_peak = r.trajectory.points[peaks[0]].success_probability;
  r.second_peak = r.trajectory.points[peaks[1]].success_probability;
  r.period_estimate = peaks[1] - peaks[0];
  r.predicted_period =
      kPi / (2.0 * std::asin(std::sqrt(static_cast<double>(m) / static_cast<double>(v))));
  r.revival_ratio = r.second_peak / r.first_peak;
  r.revived = r.revival_ratio >= 0.95;
  return r;
}

}  // namespace wavesearch::spatial
