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

#include <algorithm>
#include <array>
#include <set>

#include "qpsp/error.hpp"
#include "qpsp/oracle.hpp"
#include "qpsp/registry.hpp"

using namespace qpsp;

namespace {

EnergyParams mj_params(int n, int k = 1, bool exclude_bonded = false) {
  return default_params(ContactMatrix::miyazawa_jernigan(), n, k, exclude_bonded);
}

void expect_same(const OracleResult& a, const OracleResult& b) {
  EXPECT_EQ(a.e_gs, b.e_gs);
  EXPECT_EQ(a.argmin, b.argmin);
  EXPECT_EQ(a.width, b.width);
}

// 48 signed permutations of the axes.
std::vector<std::array<int, 9>> cubic_group() {
  std::vector<std::array<int, 9>> out;
  std::array<int, 3> perm = {0, 1, 2};
  do {
    for (int signs = 0; signs < 8; ++signs) {
      std::array<int, 9> m{};
      for (int r = 0; r < 3; ++r) m[static_cast<std::size_t>(r * 3 + perm[static_cast<std::size_t>(r)])] = (signs >> r & 1) ? -1 : 1;
      out.push_back(m);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Vec3 apply(const std::array<int, 9>& m, Vec3 v) {
  return {m[0] * v.x + m[1] * v.y + m[2] * v.z, m[3] * v.x + m[4] * v.y + m[5] * v.z,
          m[6] * v.x + m[7] * v.y + m[8] * v.z};
}

}  // namespace

TEST(Oracle, TetraToyHasNoContacts) {
  auto params = default_params(ContactMatrix::uniform("A", -1.0), 4, 1, true);
  auto naive = naive_enumerate("AAAA", LatticeKind::kTetra, params);
  EXPECT_EQ(naive.states_enumerated, 2);
  EXPECT_EQ(naive.e_gs, 0.0);
  auto pruned = ground_state("AAAA", LatticeKind::kTetra, params);
  expect_same(pruned, naive);
  EXPECT_EQ(pruned.states_enumerated + pruned.states_pruned, 2);
}

TEST(Oracle, FccThreeResiduesHasFourStates) {
  auto naive = naive_enumerate("GNL", LatticeKind::kFcc, mj_params(3));
  EXPECT_EQ(naive.states_enumerated, 4);
  EXPECT_EQ(naive.width, 2);
}

TEST(Oracle, GnlvsMatchesNaive) {
  auto params = mj_params(5);
  auto naive = naive_enumerate("GNLVS", LatticeKind::kFcc, params);
  auto pruned = ground_state("GNLVS", LatticeKind::kFcc, params);
  expect_same(pruned, naive);
  EXPECT_LT(pruned.e_gs, 0.0);
  EXPECT_EQ(pruned.states_enumerated + pruned.states_pruned, 1 << 10);
}

TEST(Oracle, AbcpBccSecondShellMatchesNaive) {
  auto params = mj_params(7, 2);
  expect_same(ground_state("APRLRFY", LatticeKind::kBcc, params),
              naive_enumerate("APRLRFY", LatticeKind::kBcc, params));
}

TEST(Oracle, RegisteredSmallInstancesMatchNaive) {
  int checked = 0;
  for (const auto& inst : instances()) {
    for (LatticeKind kind : {LatticeKind::kTetra, LatticeKind::kBcc, LatticeKind::kFcc}) {
      if (!inst.supports(kind) || inst.listed_qubits(kind) > 14) continue;
      for (int k : {1, 2}) {
        for (bool excl : {false, true}) {
          auto params = mj_params(inst.n(), k, excl);
          auto pruned = ground_state(inst.sequence, kind, params);
          auto naive = naive_enumerate(inst.sequence, kind, params);
          expect_same(pruned, naive);
          EXPECT_EQ(pruned.states_enumerated + pruned.states_pruned, std::int64_t{1} << pruned.width);
          ++checked;
        }
      }
    }
  }
  EXPECT_EQ(checked, 6 * 4);
}

TEST(Oracle, ArgminStatesAreValidAndMinimal) {
  const std::string seq = "SNQNNF";
  auto params = mj_params(6, 2);
  auto res = ground_state(seq, LatticeKind::kFcc, params);
  for (Bits b : res.argmin) {
    auto e = total_energy(format_bits(b, res.width), seq, LatticeKind::kFcc, params);
    EXPECT_EQ(e.e_olap, 0.0);
    EXPECT_EQ(e.e_redun, 0.0);
  }
  for (Bits b = 0; b < (Bits{1} << res.width); ++b) {
    EXPECT_LE(res.e_gs, total_energy(format_bits(b, res.width), seq, LatticeKind::kFcc, params).e_total + 1e-9);
  }
}

TEST(Oracle, DegeneracyClosedUnderPrefixPreservingSymmetries) {
  struct Case {
    std::string seq;
    LatticeKind kind;
  };
  for (const Case& c : {Case{"APRLRFY", LatticeKind::kBcc}, Case{"GNLVS", LatticeKind::kFcc},
                        Case{"YYDPETGTWY", LatticeKind::kTetra}}) {
    const int n = static_cast<int>(c.seq.size());
    auto params = mj_params(n);
    auto res = ground_state(c.seq, c.kind, params);
    const std::set<Bits> argmin(res.argmin.begin(), res.argmin.end());
    const LatticeSpec& lat = lattice(c.kind);
    int images = 0;
    for (Bits b : res.argmin) {
      const auto turns = decode_bits(b, c.kind, n);
      for (const auto& m : cubic_group()) {
        std::vector<int> labels;
        for (int t = 0; t < n - 1; ++t) {
          const Vec3 s = apply(m, turns.turns[static_cast<std::size_t>(t)].step);
          for (const auto& e : lat.table_for_turn(t)) {
            if (e.step == s) labels.push_back(e.label);
          }
        }
        if (static_cast<int>(labels.size()) != n - 1) continue;
        std::string image;
        try {
          image = encode_turns(labels, c.kind, n);
        } catch (const CodecError&) {
          continue;
        }
        EXPECT_TRUE(argmin.count(parse_bits(image))) << c.seq;
        ++images;
      }
    }
    EXPECT_GE(images, static_cast<int>(res.argmin.size()));
  }
}

TEST(Oracle, DeterministicAcrossThreadCounts) {
  auto params = mj_params(10);
  OracleOptions one;
  one.threads = 1;
  OracleOptions many;
  many.threads = 4;
  auto a = ground_state("YYDPETGTWY", LatticeKind::kTetra, params, one);
  auto b = ground_state("YYDPETGTWY", LatticeKind::kTetra, params, many);
  expect_same(a, b);
  EXPECT_EQ(a.states_enumerated, b.states_enumerated);
  EXPECT_EQ(a.states_pruned, b.states_pruned);
}

TEST(Oracle, Budgets) {
  auto params = mj_params(10);
  OracleOptions narrow;
  narrow.max_qubits = 12;
  EXPECT_THROW(ground_state("YYDPETGTWY", LatticeKind::kTetra, params, narrow), ResourceError);
  OracleOptions few_nodes;
  few_nodes.node_limit = 1000;
  EXPECT_THROW(ground_state("YYDPETGTWY", LatticeKind::kBcc, params, few_nodes), ResourceError);
  EXPECT_THROW(naive_enumerate("YYDPETGTWY", LatticeKind::kBcc, params), ResourceError);
  EXPECT_THROW(ground_state("GNLVX", LatticeKind::kFcc, mj_params(5)), ParameterError);
}

TEST(Spectrum, HeadAndFullSet) {
  auto params = mj_params(5);
  auto gs = ground_state("GNLVS", LatticeKind::kFcc, params);
  auto head = low_energy_spectrum("GNLVS", LatticeKind::kFcc, params, 1);
  ASSERT_EQ(head.size(), 1u);
  EXPECT_EQ(head[0].energy, gs.e_gs);
  EXPECT_EQ(head[0].bits, gs.argmin.front());

  auto all = low_energy_spectrum("GNLVS", LatticeKind::kFcc, params, 1 << 12);
  EXPECT_EQ(static_cast<std::int64_t>(all.size()), gs.states_enumerated);

  std::vector<SpectrumEntry> naive;
  for (Bits b = 0; b < 1024; ++b) {
    auto e = total_energy(format_bits(b, 10), "GNLVS", LatticeKind::kFcc, params);
    if (e.e_olap == 0.0 && e.e_redun == 0.0) naive.push_back({e.e_total, b});
  }
  std::sort(naive.begin(), naive.end(), [](const auto& a, const auto& b) {
    return a.energy != b.energy ? a.energy < b.energy : a.bits < b.bits;
  });
  ASSERT_EQ(naive.size(), all.size());
  for (std::size_t i = 0; i < naive.size(); ++i) {
    EXPECT_EQ(all[i].energy, naive[i].energy);
    EXPECT_EQ(all[i].bits, naive[i].bits);
  }
  auto top20 = low_energy_spectrum("GNLVS", LatticeKind::kFcc, params, 20);
  ASSERT_EQ(top20.size(), 20u);
  for (std::size_t i = 0; i < 20; ++i) EXPECT_EQ(top20[i].bits, naive[i].bits);
  EXPECT_THROW(low_energy_spectrum("GNLVS", LatticeKind::kFcc, params, 0), ParameterError);
}

TEST(Oracle, JsonRoundTrip) {
  auto res = ground_state("GNLVS", LatticeKind::kFcc, mj_params(5));
  auto back = OracleResult::from_json(res.to_json());
  EXPECT_EQ(back.e_gs, res.e_gs);
  EXPECT_EQ(back.argmin, res.argmin);
  EXPECT_EQ(back.states_enumerated, res.states_enumerated);
  EXPECT_THROW(OracleResult::from_json("{}"), ParameterError);
}

TEST(Registry, TwentyInstances) {
  EXPECT_EQ(instances().size(), 20u);
  auto k = find_instance("1k43");
  ASSERT_TRUE(k.has_value());
  EXPECT_EQ(k->sequence, "RGKWTYNGITYEGR");
  EXPECT_EQ(k->listed_qubits(LatticeKind::kFcc), 46);
  EXPECT_FALSE(find_instance("XXXX").has_value());
  for (const auto& inst : instances()) {
    check_sequence(inst.sequence, ContactMatrix::miyazawa_jernigan());
    for (LatticeKind kind : {LatticeKind::kTetra, LatticeKind::kBcc, LatticeKind::kFcc}) {
      if (inst.supports(kind)) EXPECT_EQ(qubit_count(kind, inst.n()), inst.listed_qubits(kind)) << inst.pdb_id;
    }
  }
}
