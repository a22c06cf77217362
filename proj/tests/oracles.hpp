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

// Independent reference computations used only by the tests. None of these
// call into the library's algorithmic code paths.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracles {

using Complex = std::complex<double>;
inline constexpr double kPi = std::numbers::pi;

// Dense N x N matrix of -R_s R_t with R_x = I - 2 |x><x|, uniform |s>.
inline Eigen::MatrixXd dense_grover_operator(std::size_t n, const std::vector<std::size_t>& targets) {
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd rt = Eigen::MatrixXd::Identity(nn, nn);
  for (std::size_t t : targets) rt(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(t)) = -1.0;
  const Eigen::VectorXd s = Eigen::VectorXd::Constant(nn, 1.0 / std::sqrt(static_cast<double>(n)));
  const Eigen::MatrixXd rs = Eigen::MatrixXd::Identity(nn, nn) - 2.0 * s * s.transpose();
  return -rs * rt;
}

// Success probabilities from repeated dense matrix-vector products.
inline std::vector<double> dense_trajectory(std::size_t n, const std::vector<std::size_t>& targets,
                                            std::size_t steps) {
  const Eigen::MatrixXd u = dense_grover_operator(n, targets);
  Eigen::VectorXd psi = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n),
                                                  1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> out;
  for (std::size_t k = 0; k <= steps; ++k) {
    double p = 0.0;
    for (std::size_t t : targets) p += psi(static_cast<Eigen::Index>(t)) * psi(static_cast<Eigen::Index>(t));
    out.push_back(p);
    psi = u * psi;
  }
  return out;
}

inline double closed_form_success(std::size_t n, std::size_t m, std::size_t k) {
  const double a = std::asin(std::sqrt(static_cast<double>(m) / static_cast<double>(n)));
  const double s = std::sin((2.0 * static_cast<double>(k) + 1.0) * a);
  return s * s;
}

// First local maximum of sin^2((2k+1) asin(overlap)) scanning k = 0..limit;
// a flat step counts as the peak so ties keep the smaller k.
inline std::size_t brute_force_best_k(double overlap, std::size_t limit) {
  const double a = std::asin(overlap);
  auto p = [a](std::size_t k) {
    return std::pow(std::sin((2.0 * static_cast<double>(k) + 1.0) * a), 2);
  };
  for (std::size_t k = 0; k < limit; ++k) {
    if (p(k + 1) <= p(k) + 1e-13) return k;
  }
  return limit;
}

// First local maximum of a sampled series; ties keep the earlier index.
inline std::size_t first_peak(const std::vector<double>& series) {
  for (std::size_t k = 0; k + 1 < series.size(); ++k) {
    if (series[k + 1] <= series[k] + 1e-13) return k;
  }
  return series.size() - 1;
}

inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Root N of (2Q+1) asin(1/sqrt N) = pi/2 by bisection on N.
inline double query_equation_root(int q) {
  return bisect([q](double n) { return (2.0 * q + 1.0) * std::asin(1.0 / std::sqrt(n)) - kPi / 2.0; },
                1.0, 1e6);
}

// Bound state of a single site impurity -V on the infinite chain from the
// lattice Green function: 1 = V G(E), G(E) = 1/sqrt(E^2 - 4t^2) outside
// the band.
inline double green_function_bound_energy(double t, double v) {
  const double sign = v > 0 ? -1.0 : 1.0;
  auto f = [&](double x) {  // x = |E| > 2t
    return std::abs(v) / std::sqrt(x * x - 4.0 * t * t) - 1.0;
  };
  return sign * bisect(f, 2.0 * t * (1.0 + 1e-15), 2.0 * t + 10.0 * std::abs(v) + 10.0);
}

// exp(-i H t) |psi0> for a small Hermitian H via eigendecomposition.
inline Eigen::VectorXcd evolve_exact(const Eigen::MatrixXd& h, const Eigen::VectorXcd& psi0, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  const Eigen::MatrixXd& v = es.eigenvectors();
  Eigen::VectorXcd phases(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) phases(i) = std::polar(1.0, -es.eigenvalues()(i) * t);
  return v.cast<Complex>() * phases.asDiagonal() * (v.transpose().cast<Complex>() * psi0);
}

// Complete-graph CTQW H = -gamma (J - I) - P_marked reduced to
// {uniform over marked, uniform over unmarked}, evolved exactly.
inline double two_level_probability(std::size_t n, std::size_t m, double gamma, double t) {
  const double a = std::sqrt(static_cast<double>(m) / static_cast<double>(n));
  const double b = std::sqrt(1.0 - a * a);
  const double nn = static_cast<double>(n);
  Eigen::Matrix2d h;
  h << -gamma * nn * a * a + gamma - 1.0, -gamma * nn * a * b,
       -gamma * nn * a * b, -gamma * nn * b * b + gamma;
  const Eigen::VectorXcd out = evolve_exact(h, Eigen::Vector2cd(a, b), t);
  return std::norm(out(0));
}

// Full N-dimensional exact evolution of the same Hamiltonian (small N).
inline double full_ctqw_probability(std::size_t n, const std::vector<std::size_t>& targets,
                                    double gamma, double t) {
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd h = -gamma * (Eigen::MatrixXd::Ones(nn, nn) - Eigen::MatrixXd::Identity(nn, nn));
  for (std::size_t w : targets) h(static_cast<Eigen::Index>(w), static_cast<Eigen::Index>(w)) -= 1.0;
  const Eigen::VectorXcd psi0 = Eigen::VectorXcd::Constant(nn, 1.0 / std::sqrt(static_cast<double>(n)));
  const Eigen::VectorXcd out = evolve_exact(h, psi0, t);
  double p = 0.0;
  for (std::size_t w : targets) p += std::norm(out(static_cast<Eigen::Index>(w)));
  return p;
}

}  // namespace oracles
