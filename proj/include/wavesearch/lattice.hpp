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
#include <cstdint>
#include <exception>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wavesearch/error.hpp"

namespace wavesearch::lattice {

enum class Boundary { kOpen, kPeriodic };

inline constexpr std::size_t kMaxDenseSites = 4096;

// One-particle tight-binding chain: diagonal E_i, hopping -t between nearest
// neighbours.
class TightBindingSpec {
 public:
  TightBindingSpec(std::size_t sites, double hopping, std::vector<double> on_site,
                   Boundary boundary)
      : hopping_(hopping), on_site_(std::move(on_site)), boundary_(boundary) {
    detail::require(sites >= 3, ErrorCode::kInvalidDimension, "chain needs L >= 3");
    detail::require(hopping > 0.0 && std::isfinite(hopping), ErrorCode::kInvalidArgument,
                    "hopping t must be positive");
    detail::require(on_site_.size() == sites, ErrorCode::kDimensionMismatch,
                    "on-site energy count differs from L");
    for (double e : on_site_) {
      detail::require(std::isfinite(e), ErrorCode::kInvalidArgument,
                      "on-site energies must be finite");
    }
  }

  std::size_t sites() const noexcept { return on_site_.size(); }
  double hopping() const noexcept { return hopping_; }
  std::span<const double> on_site() const noexcept { return on_site_; }
  Boundary boundary() const noexcept { return boundary_; }

  Eigen::MatrixXd hamiltonian() const {
    const auto l = static_cast<Eigen::Index>(sites());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(l, l);
    for (Eigen::Index i = 0; i < l; ++i) h(i, i) = on_site_[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 0; i + 1 < l; ++i) h(i, i + 1) = h(i + 1, i) = -hopping_;
    if (boundary_ == Boundary::kPeriodic) h(0, l - 1) = h(l - 1, 0) = -hopping_;
    return h;
  }

 private:
  double hopping_;
  std::vector<double> on_site_;
  Boundary boundary_;
};

inline TightBindingSpec build_chain(std::size_t sites, double hopping,
                                    std::vector<double> on_site, Boundary boundary) {
  return TightBindingSpec(sites, hopping, std::move(on_site), boundary);
}

struct SpectrumResult {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // column j pairs with eigenvalues(j)
  double band_min;
  double band_max;
  double max_residual;           // max_j ||H v_j - lambda_j v_j||
};

// Full eigendecomposition. Open chains go through the tridiagonal path.
inline SpectrumResult spectrum(const TightBindingSpec& spec) {
  detail::require(spec.sites() <= kMaxDenseSites, ErrorCode::kInvalidArgument,
                  "spectrum: L exceeds the dense solver budget of 4096 sites");
  const auto l = static_cast<Eigen::Index>(spec.sites());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  if (spec.boundary() == Boundary::kOpen) {
    Eigen::VectorXd diag(l);
    for (Eigen::Index i = 0; i < l; ++i) diag(i) = spec.on_site()[static_cast<std::size_t>(i)];
    Eigen::VectorXd sub = Eigen::VectorXd::Constant(l - 1, -spec.hopping());
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  } else {
    solver.compute(spec.hamiltonian(), Eigen::ComputeEigenvectors);
  }
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kSolverFailure,
                "spectrum: eigensolver did not converge (L=" + std::to_string(l) + ")");
  }

  SpectrumResult r{solver.eigenvalues(), solver.eigenvectors(), 0.0, 0.0, 0.0};
  r.band_min = r.eigenvalues(0);
  r.band_max = r.eigenvalues(l - 1);

  // H is nearest-neighbour, so H v costs O(L) per column.
  const double t = spec.hopping();
  const bool periodic = spec.boundary() == Boundary::kPeriodic;
  for (Eigen::Index j = 0; j < l; ++j) {
    const auto v = r.eigenvectors.col(j);
    double res2 = 0.0;
    for (Eigen::Index i = 0; i < l; ++i) {
      double hv = spec.on_site()[static_cast<std::size_t>(i)] * v(i);
      if (i > 0) hv -= t * v(i - 1);
      if (i + 1 < l) hv -= t * v(i + 1);
      if (periodic && i == 0) hv -= t * v(l - 1);
      if (periodic && i == l - 1) hv -= t * v(0);
      const double d = hv - r.eigenvalues(j) * v(i);
      res2 += d * d;
    }
    r.max_residual = std::max(r.max_residual, std::sqrt(res2));
  }
  double scale = 1.0;
  for (double e : spec.on_site()) scale = std::max(scale, std::abs(e) + 2.0 * t);
  if (r.max_residual > 1e-8 * scale) {
    throw Error(ErrorCode::kSolverFailure,
                "spectrum: eigenpair residual " + std::to_string(r.max_residual) +
                    " exceeds 1e-8 * ||H||");
  }
  return r;
}

// Eigenvalues of an open chain only, ascending.
inline Eigen::VectorXd open_chain_eigenvalues(const TightBindingSpec& spec) {
  detail::require(spec.boundary() == Boundary::kOpen, ErrorCode::kInvalidArgument,
                  "open_chain_eigenvalues needs an open chain");
  const auto l = static_cast<Eigen::Index>(spec.sites());
  Eigen::VectorXd diag(l);
  for (Eigen::Index i = 0; i < l; ++i) diag(i) = spec.on_site()[static_cast<std::size_t>(i)];
  const Eigen::VectorXd sub = Eigen::VectorXd::Constant(l - 1, -spec.hopping());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  detail::require(solver.info() == Eigen::Success, ErrorCode::kSolverFailure,
                  "open_chain_eigenvalues: eigensolver did not converge");
  return solver.eigenvalues();
}

// Unit eigenvector of an open chain for an accurate eigenvalue estimate, by
// inverse iteration on the shifted tridiagonal matrix (LU with partial
// pivoting). The largest-magnitude component is made positive.
inline Eigen::VectorXd open_chain_eigenvector(const TightBindingSpec& spec, double eigenvalue) {
  detail::require(spec.boundary() == Boundary::kOpen, ErrorCode::kInvalidArgument,
                  "open_chain_eigenvector needs an open chain");
  const std::size_t n = spec.sites();
  const double t = spec.hopping();
  double scale = 2.0 * t;
  for (double e : spec.on_site()) scale = std::max(scale, std::abs(e - eigenvalue) + 2.0 * t);
  const double tiny = scale * 1e-16;

  // Factor (H - lambda I) once.
  std::vector<double> dl(n - 1, -t), d(n), du(n - 1, -t), du2(n > 2 ? n - 2 : 0, 0.0);
  std::vector<bool> swapped(n - 1, false);
  for (std::size_t i = 0; i < n; ++i) d[i] = spec.on_site()[i] - eigenvalue;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = tiny;
      const double fact = dl[i] / d[i];
      dl[i] = fact;
      d[i + 1] -= fact * du[i];
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = fact;
      const double temp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = temp - fact * d[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du[i + 1];
      }
      swapped[i] = true;
    }
  }
  if (d[n - 1] == 0.0) d[n - 1] = tiny;

  Eigen::VectorXd x(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) x(static_cast<Eigen::Index>(i)) = 1.0 + 0.5 * std::sin(1.3 * static_cast<double>(i) + 0.7);
  std::vector<double> b(n);
  for (int iteration = 0; iteration < 3; ++iteration) {
    for (std::size_t i = 0; i < n; ++i) b[i] = x(static_cast<Eigen::Index>(i));
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!swapped[i]) {
        b[i + 1] -= dl[i] * b[i];
      } else {
        const double temp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = temp - dl[i] * b[i];
      }
    }
    b[n - 1] /= d[n - 1];
    b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for (std::size_t i = n - 2; i-- > 0;) {
      b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
    }
    for (std::size_t i = 0; i < n; ++i) x(static_cast<Eigen::Index>(i)) = b[i];
    x.normalize();
  }
  Eigen::Index peak = 0;
  x.cwiseAbs().maxCoeff(&peak);
  if (x(peak) < 0.0) x = -x;
  return x;
}

// Inverse participation ratio sum v_i^4 of a unit vector.
inline double ipr(std::span<const double> v) {
  double norm2 = 0.0;
  double sum4 = 0.0;
  for (double x : v) {
    const double x2 = x * x;
    norm2 += x2;
    sum4 += x2 * x2;
  }
  detail::require(std::abs(norm2 - 1.0) <= 1e-9, ErrorCode::kUnnormalized,
                  "ipr: vector is not normalized");
  return sum4;
}

inline double ipr(const Eigen::Ref<const Eigen::VectorXd>& v) {
  return ipr(std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
}

struct BoundState {
  double energy;
  double gap_outside_band;  // distance from the nearer clean band edge +-2t
  double ipr;
  double median_band_ipr;   // median IPR of the remaining (in-band) states
  std::size_t site;
};

// Single impurity of strength V on an open chain: on-site energy -V at site
// floor(L/2). V > 0 is attractive (level below -2t), V < 0 repulsive (above
// +2t).
inline BoundState bound_state(std::size_t sites, double hopping, double strength) {
  detail::require(strength != 0.0 && std::isfinite(strength), ErrorCode::kNoBoundState,
                  "bound_state: V = 0 leaves the clean band without an isolated level");
  std::vector<double> on_site(sites, 0.0);
  const std::size_t site = sites / 2;
  on_site.at(site) = -strength;
  const TightBindingSpec spec = build_chain(sites, hopping, std::move(on_site), Boundary::kOpen);
  detail::require(sites <= kMaxDenseSites, ErrorCode::kInvalidArgument,
                  "bound_state: L exceeds the 4096-site budget");
  const Eigen::VectorXd eigenvalues = open_chain_eigenvalues(spec);
  const auto l = static_cast<Eigen::Index>(sites);
  const bool attractive = strength > 0.0;
  const Eigen::Index idx = attractive ? 0 : l - 1;
  const double energy = eigenvalues(idx);
  const double edge = 2.0 * hopping;
  const double gap = attractive ? -edge - energy : energy - edge;

  // Decay rate kappa from E = -+2t cosh(kappa); the state has to fit well
  // inside the chain for the level to count as isolated.
  const double ratio = std::abs(energy) / edge;
  const double kappa = ratio > 1.0 ? std::acosh(ratio) : 0.0;
  if (gap <= 1e-12 || kappa * static_cast<double>(sites) < 20.0) {
    throw Error(ErrorCode::kNoBoundState,
                "bound_state: no isolated level resolved (V=" + std::to_string(strength) +
                    ", L=" + std::to_string(sites) + "); increase L or |V|");
  }

  std::vector<double> band_iprs;
  band_iprs.reserve(sites - 1);
  for (Eigen::Index j = 0; j < l; ++j) {
    if (j != idx) band_iprs.push_back(ipr(open_chain_eigenvector(spec, eigenvalues(j))));
  }
  const auto mid = band_iprs.begin() + static_cast<std::ptrdiff_t>(band_iprs.size() / 2);
  std::nth_element(band_iprs.begin(), mid, band_iprs.end());
  double median = *mid;
  if (band_iprs.size() % 2 == 0) {
    median = 0.5 * (median + *std::max_element(band_iprs.begin(), mid));
  }
  return BoundState{energy, gap, ipr(open_chain_eigenvector(spec, energy)), median, site};
}

// Counter-keyed disorder stream: a fresh engine per (seed, trial), so any
// trial can be regenerated without running the others.
inline std::vector<double> disorder_energies(std::size_t sites, double width,
                                             std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(trial >> 32)};
  std::mt19937_64 engine(key);
  std::vector<double> e(sites);
  for (double& x : e) {
    // 53 random bits -> [0, 1); avoids implementation-defined distributions.
    const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    x = width * (u - 0.5);
  }
  return e;
}

// Index of the eigenvalue closest to zero, lower index on ties.
inline Eigen::Index band_center_index(const Eigen::VectorXd& eigenvalues) {
  Eigen::Index best = 0;
  for (Eigen::Index j = 1; j < eigenvalues.size(); ++j) {
    if (std::abs(eigenvalues(j)) < std::abs(eigenvalues(best))) best = j;
  }
  return best;
}

struct DisorderStats {
  std::size_t sites;
  double hopping;
  double width;
  std::size_t trials;
  std::uint64_t seed;
  std::vector<double> trial_ipr;  // ordered by trial index
  double mean_ipr;
  double std_ipr;                 // sample standard deviation (0 for one trial)
};

inline DisorderStats disorder_ensemble(std::size_t sites, double hopping, double width,
                                       std::size_t trials, std::uint64_t seed,
                                       unsigned threads = 1) {
  detail::require(trials >= 1, ErrorCode::kInvalidArgument, "trials must be at least 1");
  detail::require(width >= 0.0 && std::isfinite(width), ErrorCode::kInvalidArgument,
                  "disorder width W must be non-negative");

  std::vector<double> values(trials);
  auto run_trial = [&](std::size_t k) {
    const TightBindingSpec spec = build_chain(
        sites, hopping, disorder_energies(sites, width, seed, k), Boundary::kOpen);
    const Eigen::VectorXd eigenvalues = open_chain_eigenvalues(spec);
    values[k] = ipr(open_chain_eigenvector(spec, eigenvalues(band_center_index(eigenvalues))));
  };

  // Build the first spec on the calling thread so argument errors surface
  // here rather than inside a worker.
  (void)build_chain(sites, hopping, std::vector<double>(sites, 0.0), Boundary::kOpen);
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
  if (workers == 1) {
    for (std::size_t k = 0; k < trials; ++k) run_trial(k);
  } else {
    std::vector<std::exception_ptr> failures(workers);
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t k = w; k < trials; k += workers) run_trial(k);
          } catch (...) {
            failures[w] = std::current_exception();
          }
        });
      }
    }
    for (const auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }

  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(trials);
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  const double sd = trials > 1 ? std::sqrt(var / static_cast<double>(trials - 1)) : 0.0;
  return DisorderStats{sites, hopping, width, trials, seed, std::move(values), mean, sd};
}

}  // namespace wavesearch::lattice
