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

#include "wavesearch/lattice.hpp"

#include <random>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "wavesearch/grover.hpp"

using namespace wavesearch;
using namespace wavesearch::lattice;

namespace {

TightBindingSpec clean(std::size_t l, double t = 1.0, Boundary b = Boundary::kOpen) {
  return build_chain(l, t, std::vector<double>(l, 0.0), b);
}

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(BuildChain, ThreeSiteOpenChain) {
  const SpectrumResult s = spectrum(clean(3));
  EXPECT_NEAR(s.eigenvalues(0), -std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(s.eigenvalues(1), 0.0, 1e-12);
  EXPECT_NEAR(s.eigenvalues(2), std::sqrt(2.0), 1e-12);
}

TEST(BuildChain, FourSiteRing) {
  const SpectrumResult s = spectrum(clean(4, 1.0, Boundary::kPeriodic));
  const std::vector<double> expected{-2.0, 0.0, 0.0, 2.0};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(s.eigenvalues(i), expected[static_cast<std::size_t>(i)], 1e-12);
}

TEST(BuildChain, AnalyticBandsForCleanChains) {
  for (std::size_t l : {5u, 8u, 13u, 40u}) {
    for (double t : {0.5, 1.0, 2.5}) {
      std::vector<double> ring, open;
      for (std::size_t k = 0; k < l; ++k) {
        ring.push_back(-2.0 * t * std::cos(2.0 * kPi * static_cast<double>(k) / static_cast<double>(l)));
        open.push_back(-2.0 * t * std::cos(kPi * static_cast<double>(k + 1) / static_cast<double>(l + 1)));
      }
      ring = sorted(ring);
      open = sorted(open);
      const SpectrumResult sr = spectrum(clean(l, t, Boundary::kPeriodic));
      const SpectrumResult so = spectrum(clean(l, t, Boundary::kOpen));
      for (std::size_t k = 0; k < l; ++k) {
        EXPECT_NEAR(sr.eigenvalues(static_cast<Eigen::Index>(k)), ring[k], 1e-10);
        EXPECT_NEAR(so.eigenvalues(static_cast<Eigen::Index>(k)), open[k], 1e-10);
      }
    }
  }
}

TEST(BuildChain, HamiltonianIsSymmetric) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (auto b : {Boundary::kOpen, Boundary::kPeriodic}) {
    std::vector<double> e(17);
    for (double& x : e) x = u(rng);
    const Eigen::MatrixXd h = build_chain(17, 0.7, e, b).hamiltonian();
    EXPECT_EQ(h, h.transpose());
    EXPECT_EQ(h(0, 1), -0.7);
    EXPECT_EQ(h(0, 16), b == Boundary::kPeriodic ? -0.7 : 0.0);
  }
}

TEST(BuildChain, Errors) {
  EXPECT_THROW(build_chain(4, 1.0, {0, 0, 0}, Boundary::kOpen), Error);
  EXPECT_THROW(build_chain(2, 1.0, {0, 0}, Boundary::kOpen), Error);
  EXPECT_THROW(build_chain(4, 0.0, {0, 0, 0, 0}, Boundary::kOpen), Error);
  EXPECT_THROW(build_chain(4, -1.0, {0, 0, 0, 0}, Boundary::kOpen), Error);
  EXPECT_THROW(spectrum(clean(4097)), Error);
}

TEST(Spectrum, UniformOnSiteShift) {
  const double c = 0.37;
  const SpectrumResult a = spectrum(clean(30));
  const SpectrumResult b = spectrum(build_chain(30, 1.0, std::vector<double>(30, c), Boundary::kOpen));
  for (Eigen::Index i = 0; i < 30; ++i) EXPECT_NEAR(b.eigenvalues(i), a.eigenvalues(i) + c, 1e-12);
}

TEST(Spectrum, CleanBandEdges) {
  const SpectrumResult s = spectrum(clean(200));
  EXPECT_GE(s.band_min, -2.0 - 1e-9);
  EXPECT_LE(s.band_max, 2.0 + 1e-9);
}

TEST(Spectrum, ResidualAndOrthonormality) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-3, 3);
  for (auto b : {Boundary::kOpen, Boundary::kPeriodic}) {
    std::vector<double> e(120);
    for (double& x : e) x = u(rng);
    const TightBindingSpec spec = build_chain(120, 1.0, e, b);
    const SpectrumResult s = spectrum(spec);
    const Eigen::MatrixXd h = spec.hamiltonian();
    const double hnorm = h.norm();
    for (Eigen::Index j = 0; j < 120; ++j) {
      EXPECT_LE((h * s.eigenvectors.col(j) - s.eigenvalues(j) * s.eigenvectors.col(j)).norm(),
                1e-8 * hnorm);
    }
    EXPECT_LE((s.eigenvectors.transpose() * s.eigenvectors - Eigen::MatrixXd::Identity(120, 120))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-9);
    for (Eigen::Index j = 1; j < 120; ++j) EXPECT_LE(s.eigenvalues(j - 1), s.eigenvalues(j));
  }
}

TEST(Spectrum, SingleAttractiveImpurityBindsOneLevel) {
  std::vector<double> e(300, 0.0);
  e[150] = -0.8;
  const SpectrumResult s = spectrum(build_chain(300, 1.0, e, Boundary::kOpen));
  int below = 0;
  for (Eigen::Index j = 0; j < 300; ++j) below += s.eigenvalues(j) < -2.0;
  EXPECT_EQ(below, 1);
}

TEST(OpenChainEigenvector, AgreesWithFullDecomposition) {
  const TightBindingSpec spec = build_chain(257, 1.0, disorder_energies(257, 3.0, 9, 4), Boundary::kOpen);
  const SpectrumResult full = spectrum(spec);
  const Eigen::VectorXd values = open_chain_eigenvalues(spec);
  for (Eigen::Index j = 0; j < 257; ++j) {
    EXPECT_NEAR(values(j), full.eigenvalues(j), 1e-12);
    const Eigen::VectorXd v = open_chain_eigenvector(spec, values(j));
    EXPECT_NEAR(std::abs(v.dot(full.eigenvectors.col(j))), 1.0, 1e-10);
  }
}

TEST(Ipr, Examples) {
  EXPECT_NEAR(ipr(std::vector<double>(16, 0.25)), 0.0625, 1e-15);
  EXPECT_EQ(ipr(std::vector<double>{0, 1, 0}), 1.0);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(ipr(std::vector<double>{r, 0, -r, 0}), 0.5, 1e-15);
  try {
    ipr(std::vector<double>{1.0, 1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnnormalized);
  }
}

TEST(BoundState, MatchesGreenFunction) {
  for (double v : {1.0, 2.0}) {
    const BoundState b = bound_state(2000, 1.0, v);
    const double oracle = oracles::green_function_bound_energy(1.0, v);
    EXPECT_NEAR(oracle, -std::sqrt(4.0 + v * v), 1e-12);
    EXPECT_NEAR(b.energy, oracle, 1e-6);
    EXPECT_NEAR(b.gap_outside_band, -2.0 - b.energy, 1e-15);
    EXPECT_GT(b.ipr, 10.0 * b.median_band_ipr);
    EXPECT_EQ(b.site, 1000u);
  }
  EXPECT_NEAR(bound_state(2000, 1.0, 1.0).energy, -2.2360680, 1e-6);
  EXPECT_NEAR(bound_state(2000, 1.0, 2.0).energy, -2.8284271, 1e-6);
}

TEST(BoundState, RepulsiveImpurityBindsAboveBand) {
  const BoundState b = bound_state(1000, 1.5, -2.0);
  EXPECT_NEAR(b.energy, oracles::green_function_bound_energy(1.5, -2.0), 1e-8);
  EXPECT_GT(b.energy, 3.0);
}

TEST(BoundState, DenseSpectrumAgrees) {
  std::vector<double> e(600, 0.0);
  e[300] = -0.5;
  const SpectrumResult s = spectrum(build_chain(600, 1.0, e, Boundary::kOpen));
  const BoundState b = bound_state(600, 1.0, 0.5);
  EXPECT_NEAR(b.energy, s.eigenvalues(0), 1e-12);
  EXPECT_NEAR(b.ipr, ipr(s.eigenvectors.col(0)), 1e-10);
}

TEST(BoundState, Errors) {
  try {
    bound_state(100, 1.0, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoBoundState);
  }
  // kappa * L = 0.125 * 50 is too small to resolve the level.
  EXPECT_THROW(bound_state(50, 1.0, 0.25), Error);
}

TEST(Disorder, StreamIsPinnedAndKeyed) {
  const std::vector<double> e = disorder_energies(4, 2.0, 0, 0);
  EXPECT_EQ(e[0], 0.065431250652346007);
  EXPECT_EQ(e[1], 0.088018307084446468);
  EXPECT_EQ(e[2], -0.031109367903712215);
  EXPECT_EQ(e[3], -0.93038630003534628);
  EXPECT_EQ(disorder_energies(50, 3.0, 42, 7), disorder_energies(50, 3.0, 42, 7));
  EXPECT_NE(disorder_energies(50, 3.0, 42, 7), disorder_energies(50, 3.0, 42, 8));
  EXPECT_NE(disorder_energies(50, 3.0, 42, 7), disorder_energies(50, 3.0, 43, 7));
  for (double x : disorder_energies(1000, 3.0, 5, 5)) {
    EXPECT_GE(x, -1.5);
    EXPECT_LT(x, 1.5);
  }
}

TEST(Disorder, ZeroWidthGivesCleanBandCenterState) {
  const DisorderStats d = disorder_ensemble(64, 1.0, 0.0, 3, 0);
  const SpectrumResult s = spectrum(clean(64));
  const double expected = ipr(s.eigenvectors.col(band_center_index(s.eigenvalues)));
  EXPECT_NEAR(d.mean_ipr, expected, 1e-10);
  EXPECT_NEAR(d.std_ipr, 0.0, 1e-12);
  EXPECT_LT(d.mean_ipr, 5.0 / 64.0);
}

TEST(Disorder, StrongerDisorderLocalizesMore) {
  const DisorderStats weak = disorder_ensemble(512, 1.0, 1.0, 50, 0);
  const DisorderStats strong = disorder_ensemble(512, 1.0, 4.0, 50, 0);
  EXPECT_GT(strong.mean_ipr, weak.mean_ipr);
  EXPECT_GE(weak.mean_ipr, 1.0 / 512);
  EXPECT_LE(strong.mean_ipr, 1.0);
}

TEST(Disorder, ThreadCountDoesNotChangeResults) {
  const DisorderStats one = disorder_ensemble(128, 1.0, 2.0, 13, 99, 1);
  const DisorderStats four = disorder_ensemble(128, 1.0, 2.0, 13, 99, 4);
  EXPECT_EQ(one.trial_ipr, four.trial_ipr);
  EXPECT_EQ(one.mean_ipr, four.mean_ipr);
  EXPECT_EQ(one.std_ipr, four.std_ipr);
}

TEST(Disorder, Errors) {
  EXPECT_THROW(disorder_ensemble(64, 1.0, 1.0, 0, 0), Error);
  EXPECT_THROW(disorder_ensemble(64, 1.0, -1.0, 1, 0), Error);
}

TEST(LatticeProperty, SpectralShiftCovariance) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t l = 10 + rng() % 90;
    std::vector<double> e(l);
    for (double& x : e) x = u(rng);
    const double c = u(rng);
    std::vector<double> shifted = e;
    for (double& x : shifted) x += c;
    const auto b = trial % 2 ? Boundary::kOpen : Boundary::kPeriodic;
    const SpectrumResult s0 = spectrum(build_chain(l, 1.0, e, b));
    const SpectrumResult s1 = spectrum(build_chain(l, 1.0, shifted, b));
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(l); ++j) {
      ASSERT_NEAR(s1.eigenvalues(j), s0.eigenvalues(j) + c, 1e-9);
      ASSERT_NEAR(std::abs(s1.eigenvectors.col(j).dot(s0.eigenvectors.col(j))), 1.0, 1e-8);
    }
  }
}

TEST(LatticeProperty, ExactlyOneLevelOutsideBand) {
  for (double v : {0.25, 0.5, 1.0, 2.0, -0.25, -0.5, -1.0, -2.0}) {
    const std::size_t l = std::abs(v) < 0.4 ? 800 : 300;
    std::vector<double> e(l, 0.0);
    e[l / 2] = -v;
    const SpectrumResult s = spectrum(build_chain(l, 1.0, e, Boundary::kOpen));
    int outside = 0;
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(l); ++j) {
      outside += std::abs(s.eigenvalues(j)) > 2.0 + 1e-9;
    }
    EXPECT_EQ(outside, 1) << "V=" << v;
    const BoundState b = bound_state(l, 1.0, v);
    EXPECT_GT(b.ipr, 10.0 * b.median_band_ipr) << "V=" << v;
  }
}

TEST(LatticeProperty, MonotoneLocalizationTrend) {
  double previous = 0.0;
  for (double w : {0.5, 1.0, 2.0, 4.0}) {
    const DisorderStats d = disorder_ensemble(512, 1.0, w, 50, 0);
    EXPECT_GT(d.mean_ipr, previous) << "W=" << w;
    previous = d.mean_ipr;
  }
}

TEST(LatticeProperty, GroverBoundStateHalfOnTarget) {
  // The two effective-Hamiltonian eigenvectors put weight 1/2 on |t>.
  for (double overlap : {0.03, 0.5, 0.9}) {
    for (const auto& p : grover::hg_spectrum(overlap)) {
      EXPECT_NEAR(std::norm(p.eigenvector[0]), 0.5, 1e-10);
    }
  }
}
