// Copyright 2026 The qpsp Authors
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

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "qpsp/circuit.hpp"
#include "qpsp/error.hpp"

namespace qpsp {
namespace {

std::vector<double> random_theta(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  std::vector<double> t(static_cast<std::size_t>(count));
  for (auto& x : t) x = u(rng);
  return t;
}

// Full-unitary reference: every gate lifted to 2^M x 2^M with Kronecker
// products (qubit 0 is the most significant tensor factor).
Eigen::VectorXd kron_reference(int m, int reps, const std::vector<double>& theta) {
  using Eigen::MatrixXd;
  auto lift = [m](const MatrixXd& one, int q) {
    MatrixXd out = MatrixXd::Identity(1, 1);
    for (int k = 0; k < m; ++k) {
      const MatrixXd f = k == q ? one : MatrixXd::Identity(2, 2);
      MatrixXd next(out.rows() * 2, out.cols() * 2);
      for (int r = 0; r < out.rows(); ++r)
        for (int c = 0; c < out.cols(); ++c) next.block(r * 2, c * 2, 2, 2) = out(r, c) * f;
      out = next;
    }
    return out;
  };
  auto ry = [](double t) {
    MatrixXd g(2, 2);
    g << std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2);
    return g;
  };
  const int dim = 1 << m;
  auto cnot = [&](int c, int t) {
    MatrixXd u = MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
      int j = i;
      if ((i >> (m - 1 - c)) & 1) j ^= 1 << (m - 1 - t);
      u(j, i) = 1.0;
    }
    return u;
  };
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(dim);
  psi(0) = 1.0;
  int p = 0;
  for (int q = 0; q < m; ++q) psi = lift(ry(theta[p++]), q) * psi;
  for (int r = 0; r < reps; ++r) {
    for (int i = m - 2; i >= 0; --i) psi = cnot(i, i + 1) * psi;
    for (int q = 0; q < m; ++q) psi = lift(ry(theta[p++]), q) * psi;
  }
  return psi;
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
  double tv = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) tv += std::abs(a[i] - b[i]);
  return 0.5 * tv;
}

TEST(Ansatz, Counts) {
  auto a = build_ansatz(2, 1);
  EXPECT_EQ(a.parameter_count(), 4);
  EXPECT_EQ(a.cnot_count(), 1);
  auto big = build_ansatz(46, 1);
  EXPECT_EQ(big.parameter_count(), 92);
  EXPECT_EQ(big.cnot_count(), 45);
  // logical gate totals for the 46- and 45-qubit circuits: 137 and 134
  EXPECT_EQ(big.gate_count(), 137);
  EXPECT_EQ(build_ansatz(45, 1).gate_count(), 134);
  auto mid = build_ansatz(13, 1);
  EXPECT_EQ(mid.parameter_count(), 26);
  EXPECT_EQ(mid.cnot_count(), 12);
  EXPECT_THROW(build_ansatz(0, 1), DomainError);
  EXPECT_THROW(build_ansatz(3, 0), DomainError);
}

TEST(Ansatz, GateOrderAndDepth) {
  auto gates = build_ansatz(4, 1).gates();
  ASSERT_EQ(gates.size(), 11u);
  EXPECT_EQ(gates[4].kind, Gate::Kind::kCnot);
  EXPECT_EQ(gates[4].qubit, 2);
  EXPECT_EQ(gates[4].target, 3);
  EXPECT_EQ(gates[6].qubit, 0);
  EXPECT_EQ(gates[10].param, 7);
  // Ry, three chained CNOTs, Ry on qubit 0
  EXPECT_EQ(build_ansatz(4, 1).logical_depth(), 5);
  EXPECT_EQ(build_ansatz(46, 1).logical_depth(), 47);
  EXPECT_EQ(build_ansatz(1, 1).logical_depth(), 2);
}

TEST(Simulate, BasisExamples) {
  auto spec = build_ansatz(2, 1);
  for (Backend b : {Backend::kDense, Backend::kMps}) {
    SimOptions opt{b};
    std::vector<double> zero{0, 0, 0, 0};
    auto s0 = simulate(spec, zero, opt);
    EXPECT_NEAR(s0.amplitude(0b00), 1.0, 1e-15);
    std::vector<double> flip{std::numbers::pi, 0, 0, 0};
    auto s1 = simulate(spec, flip, opt);
    EXPECT_NEAR(std::abs(s1.amplitude(0b11)), 1.0, 1e-15);
    std::vector<double> bell{std::numbers::pi / 2, 0, 0, 0};
    auto p = simulate(spec, bell, opt).exact_distribution();
    EXPECT_NEAR(p[0b00], 0.5, 1e-15);
    EXPECT_NEAR(p[0b11], 0.5, 1e-15);
    EXPECT_NEAR(p[0b01] + p[0b10], 0.0, 1e-15);
    auto map = simulate(spec, bell, opt).distribution_map(1e-12);
    EXPECT_EQ(map.size(), 2u);
    EXPECT_NEAR(map.at("11"), 0.5, 1e-15);
  }
}

TEST(Simulate, MatchesKroneckerReference) {
  for (int m = 1; m <= 5; ++m) {
    for (int reps = 1; reps <= 2; ++reps) {
      auto spec = build_ansatz(m, reps);
      auto theta = random_theta(spec.parameter_count(), 100 + m * 3 + reps);
      auto ref = kron_reference(m, reps, theta);
      auto dense = simulate(spec, theta);
      auto mps = simulate(spec, theta, {Backend::kMps});
      for (int i = 0; i < (1 << m); ++i) {
        ASSERT_NEAR(dense.amplitude(static_cast<Bits>(i)), ref(i), 1e-13);
        ASSERT_NEAR(mps.amplitude(static_cast<Bits>(i)), ref(i), 1e-12);
      }
    }
  }
}

TEST(Simulate, DenseAndMpsAgree) {
  for (int m : {3, 8, 12, 16}) {
    for (int reps = 1; reps <= 2; ++reps) {
      auto spec = build_ansatz(m, reps);
      auto theta = random_theta(spec.parameter_count(), 7 * m + reps);
      auto dense = simulate(spec, theta);
      auto mps = simulate(spec, theta, {Backend::kMps});
      EXPECT_NEAR(dense.norm(), 1.0, 1e-10);
      EXPECT_NEAR(mps.norm(), 1.0, 1e-10);
      if (reps == 1) EXPECT_LE(mps.mps()->max_bond(), 2);
      auto pd = dense.exact_distribution();
      auto pm = mps.exact_distribution();
      double max_diff = 0.0;
      for (std::size_t i = 0; i < pd.size(); ++i) max_diff = std::max(max_diff, std::abs(pd[i] - pm[i]));
      EXPECT_LT(max_diff, 1e-10) << "m=" << m << " reps=" << reps;
      EXPECT_LT(total_variation(pd, pm), 1e-9);
    }
  }
}

TEST(Simulate, MpsBondCapTwoIsExactForOneRep) {
  auto spec = build_ansatz(10, 1);
  auto theta = random_theta(spec.parameter_count(), 5);
  SimOptions capped{Backend::kMps, 2};
  auto pm = simulate(spec, theta, capped).exact_distribution();
  auto pd = simulate(spec, theta).exact_distribution();
  for (std::size_t i = 0; i < pd.size(); ++i) ASSERT_NEAR(pd[i], pm[i], 1e-12);
  EXPECT_LT(simulate(spec, theta, capped).mps()->discarded_weight, 1e-12);
}

TEST(Simulate, MpsTruncationTracksDiscardedWeight) {
  auto spec = build_ansatz(8, 3);
  auto theta = random_theta(spec.parameter_count(), 9);
  auto st = simulate(spec, theta, {Backend::kMps, 1});
  EXPECT_EQ(st.mps()->max_bond(), 1);
  EXPECT_GT(st.mps()->discarded_weight, 0.0);
  EXPECT_NEAR(st.norm(), 1.0, 1e-10);
}

TEST(Simulate, LargeMpsCircuit) {
  auto spec = build_ansatz(46, 1);
  auto theta = random_theta(spec.parameter_count(), 46);
  auto st = simulate(spec, theta, {Backend::kMps});
  EXPECT_NEAR(st.norm(), 1.0, 1e-10);
  auto samples = st.sample(2000, 3);
  EXPECT_EQ(samples.shots, 2000);
  EXPECT_EQ(samples.width, 46);
  std::int64_t total = 0;
  for (const auto& [bits, count] : samples.counts) {
    total += count;
    EXPECT_GT(std::abs(st.amplitude(bits)), 0.0);
  }
  EXPECT_EQ(total, 2000);
}

TEST(Simulate, Errors) {
  auto spec = build_ansatz(3, 1);
  std::vector<double> short_theta(5, 0.0);
  EXPECT_THROW(simulate(spec, short_theta), DomainError);
  auto wide = build_ansatz(30, 1);
  std::vector<double> theta(60, 0.0);
  EXPECT_THROW(simulate(wide, theta), ResourceError);
  EXPECT_THROW(simulate(wide, theta, {Backend::kMps}).exact_distribution(), ResourceError);
}

TEST(Sample, AllZerosState) {
  auto spec = build_ansatz(6, 1);
  std::vector<double> zero(12, 0.0);
  for (Backend b : {Backend::kDense, Backend::kMps}) {
    auto s = simulate(spec, zero, {b}).sample(1000, 1);
    ASSERT_EQ(s.counts.size(), 1u);
    EXPECT_EQ(s.counts.at(0), 1000);
  }
}

TEST(Sample, BellFrequencies) {
  auto spec = build_ansatz(2, 1);
  std::vector<double> bell{std::numbers::pi / 2, 0, 0, 0};
  for (Backend b : {Backend::kDense, Backend::kMps}) {
    auto s = simulate(spec, bell, {b}).sample(100000, 2024);
    EXPECT_LT(std::abs(static_cast<double>(s.counts[0b00]) / 100000.0 - 0.5), 0.01);
    EXPECT_EQ(s.counts[0b00] + s.counts[0b11], 100000);
  }
}

TEST(Sample, DeterministicPerSeed) {
  auto spec = build_ansatz(8, 1);
  auto theta = random_theta(16, 3);
  for (Backend b : {Backend::kDense, Backend::kMps}) {
    auto st = simulate(spec, theta, {b});
    EXPECT_EQ(st.sample(5000, 77).counts, st.sample(5000, 77).counts);
    EXPECT_NE(st.sample(5000, 77).counts, st.sample(5000, 78).counts);
  }
  EXPECT_THROW(simulate(spec, theta).sample(0, 1), DomainError);
}

// Expected TV of an S-shot empirical distribution, from the normal limit of
// each binomial count: E|X/S - p| ~ sqrt(2 p (1 - p) / (pi S)).
double expected_tv(const std::vector<double>& p, double shots) {
  double sum = 0.0;
  for (double q : p) sum += std::sqrt(2.0 * q * (1.0 - q) / (std::numbers::pi * shots));
  return 0.5 * sum;
}

TEST(Sample, ConvergesToExactDistribution) {
  auto spec = build_ansatz(10, 1);
  const double shots = 100000;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    for (double scale : {1.0, 0.1}) {
      auto theta = random_theta(20, seed);
      for (auto& t : theta) t *= scale;
      for (Backend b : {Backend::kDense, Backend::kMps}) {
        auto st = simulate(spec, theta, {b});
        auto exact = st.exact_distribution();
        auto s = st.sample(static_cast<std::int64_t>(shots), seed * 31);
        std::vector<double> freq(exact.size(), 0.0);
        for (const auto& [bits, count] : s.counts) freq[bits] = static_cast<double>(count) / shots;
        const double tv = total_variation(exact, freq);
        const double floor = expected_tv(exact, shots);
        EXPECT_LT(tv, 1.25 * floor + 1e-3) << "seed " << seed << " scale " << scale;
        EXPECT_GT(tv, 0.75 * floor - 1e-3) << "seed " << seed << " scale " << scale;
        if (scale < 1.0) EXPECT_LT(tv, 0.01);
      }
    }
  }
}

TEST(Sample, CsvRoundTrip) {
  auto spec = build_ansatz(5, 1);
  auto s = simulate(spec, random_theta(10, 4)).sample(300, 8);
  auto back = SampleSet::from_csv(s.to_csv(), 8);
  EXPECT_EQ(back.counts, s.counts);
  EXPECT_EQ(back.shots, 300);
  EXPECT_EQ(back.width, 5);
}

// Central differences against the two-term shift rule on 3 qubits.
TEST(Simulate, ParameterShiftAgreesWithFiniteDifference) {
  auto spec = build_ansatz(3, 1);
  auto theta = random_theta(6, 12);
  const double h = 1e-5;
  for (int k = 0; k < 6; ++k) {
    auto shifted = [&](double delta) {
      auto t = theta;
      t[static_cast<std::size_t>(k)] += delta;
      return simulate(spec, t).exact_distribution();
    };
    auto fp = shifted(h);
    auto fm = shifted(-h);
    auto sp = shifted(std::numbers::pi / 2);
    auto sm = shifted(-std::numbers::pi / 2);
    for (std::size_t s = 0; s < fp.size(); ++s) {
      const double fd = (fp[s] - fm[s]) / (2 * h);
      const double shift = 0.5 * (sp[s] - sm[s]);
      EXPECT_NEAR(fd, shift, 1e-6);
    }
  }
}

TEST(Simulate, AmplitudesStayReal) {
  auto spec = build_ansatz(4, 2);
  auto st = simulate(spec, random_theta(12, 1));
  double norm2 = 0;
  for (double a : st.dense()->amplitudes) norm2 += a * a;
  EXPECT_NEAR(norm2, 1.0, 1e-12);
}

}  // namespace
}  // namespace qpsp
