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

#include "qpsp/registry.hpp"

#include <algorithm>
#include <cctype>

namespace qpsp {

namespace {

constexpr std::array<ProteinInstance, 20> kInstances = {{
    {"4QXX", "GNLVS", {0, 0, 10}},
    {"2OL9", "SNQNNF", {0, 0, 14}},
    {"ABCP", "APRLRFY", {0, 14, 0}},
    {"2M6C", "GCVLYPWC", {0, 17, 22}},
    {"1N9U", "DRVYIHPFHL", {0, 23, 0}},
    {"5AWL", "YYDPETGTWY", {13, 23, 30}},
    {"2K2R", "DLDALLADLE", {13, 0, 30}},
    {"2MZX", "QYQFWKNFQT", {13, 0, 30}},
    {"1IXU", "FATMRYPSDSDE", {17, 0, 38}},
    {"2N5R", "VRRFDLLKRILK", {17, 29, 38}},
    {"2L24", "IFGAIAGFIKNIW", {19, 32, 42}},
    {"6Q08", "INWLKLGKKIIASL", {21, 0, 0}},
    {"1K43", "RGKWTYNGITYEGR", {21, 35, 46}},
    {"8T61", "RHYYKFNSTGRHYHYY", {25, 41, 0}},
    {"8T63", "WHMWNTVPNAKQVIAA", {25, 0, 0}},
    {"2NDC", "GGLRSLGRKILRAWKKYG", {29, 0, 0}},
    {"2NDE", "IGLRGLGRKIALIHKKYG", {29, 0, 0}},
    {"2JOF", "DAYAQWLKDGGPSSGRPPPS", {33, 0, 0}},
    {"8B1X", "KKPGASLAALQALQALQAAQAAKKY", {43, 0, 0}},
    {"6A8Y", "YYHFWHRGVTKRSLSPHRPRHSRLQR", {45, 0, 0}},
}};

}  // namespace

std::span<const ProteinInstance> instances() { return kInstances; }

std::optional<ProteinInstance> find_instance(std::string_view pdb_id) {
  for (const auto& inst : kInstances) {
    if (std::equal(inst.pdb_id.begin(), inst.pdb_id.end(), pdb_id.begin(), pdb_id.end(),
                   [](char a, char b) { return std::toupper(static_cast<unsigned char>(a)) ==
                                               std::toupper(static_cast<unsigned char>(b)); })) {
      return inst;
    }
  }
  return std::nullopt;
}

}  // namespace qpsp
