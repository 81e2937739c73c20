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

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "qpsp/run_io.hpp"

namespace fs = std::filesystem;
using namespace qpsp;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result qpsp_run(std::vector<std::string> args) {
  args.insert(args.begin(), "qpsp");
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::random_device rd;
    root_ = fs::temp_directory_path() / ("qpsp_cli_" + std::to_string(rd()));
    fs::create_directories(root_);
    cache_ = (root_ / "cache").string();
  }
  void TearDown() override { fs::remove_all(root_); }

  std::string path(const std::string& rel) const { return (root_ / rel).string(); }

  fs::path root_;
  std::string cache_;
};

std::map<std::string, std::string> read_tree(const fs::path& dir, const std::string& ext) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ext) {
      files[fs::relative(e.path(), dir).string()] = read_file(e.path());
    }
  }
  return files;
}

}  // namespace

TEST_F(CliTest, InstancesListing) {
  auto r = qpsp_run({"instances", "--csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("1K43,RGKWTYNGITYEGR,14,21,35,46\n"), std::string::npos);
  EXPECT_NE(r.out.find("ABCP,APRLRFY,7,-,14,-\n"), std::string::npos);
  EXPECT_NE(r.out.find("4QXX,GNLVS,5,-,-,10\n"), std::string::npos);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 21);
  EXPECT_EQ(qpsp_run({"instances"}).code, 0);
}

TEST_F(CliTest, GroundStateCaching) {
  auto first = qpsp_run({"ground-state", "--pdb-id", "4QXX", "--cache-dir", cache_, "--out", path("gs")});
  ASSERT_EQ(first.code, 0) << first.err;
  EXPECT_EQ(first.err.find("cache hit"), std::string::npos);
  auto second = qpsp_run({"ground-state", "--pdb-id", "4QXX", "--cache-dir", cache_});
  ASSERT_EQ(second.code, 0);
  EXPECT_NE(second.err.find("cache hit"), std::string::npos);
  auto stored = parse_oracle_document(read_file(path("gs/oracle.json")));
  EXPECT_EQ(stored.result.e_gs, parse_oracle_document(second.out).result.e_gs);
  EXPECT_EQ(stored.result.argmin.size(), 4u);
}

TEST_F(CliTest, GroundStateArguments) {
  EXPECT_EQ(qpsp_run({"ground-state", "--pdb-id", "4QXX", "--lattice", "bcc", "--cache-dir", cache_}).code, 2);
  EXPECT_EQ(qpsp_run({"ground-state", "--pdb-id", "NOPE", "--cache-dir", cache_}).code, 2);
  EXPECT_EQ(qpsp_run({"ground-state", "--seq", "GNLVS", "--cache-dir", cache_}).code, 2);
  EXPECT_EQ(qpsp_run({"ground-state", "--seq", "GNLVZ", "--lattice", "fcc", "--cache-dir", cache_}).code, 2);
  EXPECT_EQ(qpsp_run({"ground-state", "--seq", "GNLVS", "--lattice", "cubic"}).code, 2);
  EXPECT_EQ(qpsp_run({"ground-state", "--seq", "GNLVS", "--lattice", "fcc", "--knn", "9", "--cache-dir", cache_}).code,
            2);
  auto raw = qpsp_run({"ground-state", "--seq", "QQQQQ", "--lattice", "fcc", "--cache-dir", cache_});
  EXPECT_EQ(raw.code, 0) << raw.err;
  auto budget = qpsp_run({"ground-state", "--pdb-id", "2M6C", "--lattice", "fcc", "--max-qubits", "20",
                          "--cache-dir", cache_});
  EXPECT_EQ(budget.code, 3);
  EXPECT_NE(budget.err.find("budget"), std::string::npos);
  EXPECT_EQ(qpsp_run({"frobnicate"}).code, 2);
  EXPECT_EQ(qpsp_run({}).code, 2);
}

TEST_F(CliTest, SpectrumFile) {
  auto r = qpsp_run({"ground-state", "--pdb-id", "4QXX", "--cache-dir", cache_, "--out", path("gs"), "--top-m", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto csv = read_file(path("gs/spectrum.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
}

TEST_F(CliTest, TrainIsReproducible) {
  const std::vector<std::string> common = {"train", "--pdb-id", "4QXX", "--seed", "7", "--restarts", "10", "-q"};
  auto a_args = common;
  a_args.insert(a_args.end(), {"--out", path("a")});
  auto b_args = common;
  b_args.insert(b_args.end(), {"--out", path("b"), "--threads", "1"});
  ASSERT_EQ(qpsp_run(a_args).code, 0);
  ASSERT_EQ(qpsp_run(b_args).code, 0);
  const auto ca = read_tree(path("a"), ".csv");
  const auto cb = read_tree(path("b"), ".csv");
  EXPECT_EQ(ca, cb);
  EXPECT_EQ(ca.size(), 21u);
  EXPECT_EQ(read_tree(path("a"), ".json"), read_tree(path("b"), ".json"));
  int params = 0;
  for (const auto& [name, text] : read_tree(path("a"), ".json")) params += name.find("params.json") != std::string::npos;
  EXPECT_EQ(params, 10);
  for (auto f : {"manifest.json", "summary.json", "matrix.csv"}) EXPECT_TRUE(fs::exists(path(std::string("a/") + f)));
  EXPECT_EQ(read_file(path("a/restart_00/trace.csv")).rfind("iter,cvar\n", 0), 0u);
  EXPECT_EQ(read_file(path("a/restart_00/ledger.csv")).rfind("bitstring,energy,first_seen_iter\n", 0), 0u);
}

TEST_F(CliTest, TrainArguments) {
  EXPECT_EQ(qpsp_run({"train", "--pdb-id", "4QXX", "--max-iter", "0", "--out", path("x")}).code, 2);
  EXPECT_EQ(qpsp_run({"train", "--pdb-id", "4QXX", "--alpha", "0", "--out", path("x")}).code, 2);
  EXPECT_EQ(qpsp_run({"train", "--pdb-id", "4QXX", "--backend", "gpu", "--out", path("x")}).code, 2);
  EXPECT_EQ(qpsp_run({"train", "--pdb-id", "4QXX"}).code, 2);
}

TEST_F(CliTest, ConfigFileWithFlagOverride) {
  {
    std::ofstream ini(path("run.ini"));
    ini << "[train]\npdb-id = 4QXX\nrestarts = 3\nmax-iter = 40\nseed = 5\n";
  }
  auto r = qpsp_run({"--config", path("run.ini"), "train", "--restarts", "2", "-q", "--out", path("cfg")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto summary = read_file(path("cfg/summary.json"));
  EXPECT_NE(summary.find("\"restarts\": 2"), std::string::npos);
  const auto manifest = read_file(path("cfg/manifest.json"));
  EXPECT_NE(manifest.find("\"max_iter\": 40"), std::string::npos);
  EXPECT_NE(manifest.find("\"master_seed\": 5"), std::string::npos);
}

TEST_F(CliTest, EvaluateAndBaseline) {
  ASSERT_EQ(qpsp_run({"train", "--pdb-id", "4QXX", "--seed", "7", "-q", "--out", path("run")}).code, 0);

  auto missing = qpsp_run({"evaluate", path("run"), "--cache-dir", cache_});
  EXPECT_EQ(missing.code, 3);
  EXPECT_NE(missing.err.find("ground-state"), std::string::npos);

  ASSERT_EQ(qpsp_run({"ground-state", "--pdb-id", "4QXX", "--knn", "2", "--out", path("k2"), "--cache-dir", cache_})
                .code,
            0);
  auto stale = qpsp_run({"evaluate", path("run"), "--cache-dir", cache_, "--oracle", path("k2/oracle.json")});
  EXPECT_EQ(stale.code, 2);
  EXPECT_NE(stale.err.find("hash mismatch"), std::string::npos);

  ASSERT_EQ(qpsp_run({"ground-state", "--pdb-id", "4QXX", "--cache-dir", cache_, "-q"}).code, 0);
  auto ev = qpsp_run({"evaluate", path("run"), "--cache-dir", cache_});
  ASSERT_EQ(ev.code, 0) << ev.err;
  const auto pooled = nlohmann::json::parse(read_file(path("run/metrics.json")));
  EXPECT_EQ(pooled["bcre"].get<double>(), 0.0);
  const auto hist1 = read_file(path("run/hist.csv"));
  const auto m1 = read_file(path("run/restart_03/metrics.json"));
  ASSERT_EQ(qpsp_run({"evaluate", path("run"), "--cache-dir", cache_}).code, 0);
  EXPECT_EQ(read_file(path("run/hist.csv")), hist1);
  EXPECT_EQ(read_file(path("run/restart_03/metrics.json")), m1);

  // Histogram recomputed from samples.csv with independent arithmetic.
  {
    const double e_gs = pooled["e_gs"].get<double>();
    std::istringstream in(read_file(path("run/restart_03/samples.csv")));
    std::string line;
    std::getline(in, line);
    std::map<long, long> bins;
    long shots = 0;
    while (std::getline(in, line)) {
      const auto c1 = line.find(',');
      const auto c2 = line.find(',', c1 + 1);
      const long count = std::stol(line.substr(c1 + 1, c2 - c1 - 1));
      const double e = std::stod(line.substr(c2 + 1));
      shots += count;
      if (e < 0.0) bins[static_cast<long>(std::floor((e / std::abs(e_gs) + 1.0) / 0.05 + 1e-9))] += count;
    }
    EXPECT_EQ(shots, 100000);
    std::istringstream h(read_file(path("run/restart_03/hist.csv")));
    std::getline(h, line);
    while (std::getline(h, line)) {
      const auto c1 = line.find(',');
      const auto c2 = line.find(',', c1 + 1);
      const long j = std::lround((std::stod(line.substr(0, c1)) + 1.0) / 0.05);
      const double p = std::stod(line.substr(c2 + 1));
      EXPECT_EQ(p, bins.count(j) ? static_cast<double>(bins[j]) / 100000.0 : 0.0);
    }
  }

  auto bl = qpsp_run({"baseline", "--run", path("run"), "--cache-dir", cache_, "--seed", "3"});
  ASSERT_EQ(bl.code, 0) << bl.err;
  const auto base = nlohmann::json::parse(read_file(path("run/baseline/baseline.json")));
  EXPECT_EQ(base["shots"].get<long>(), 100000);
  const auto bhist = read_file(path("run/baseline/hist.csv"));
  ASSERT_EQ(qpsp_run({"baseline", "--pdb-id", "4QXX", "--cache-dir", cache_, "--seed", "3", "--out", path("b2")}).code,
            0);
  EXPECT_EQ(read_file(path("b2/hist.csv")), bhist);
  EXPECT_EQ(read_file(path("b2/samples.csv")), read_file(path("run/baseline/samples.csv")));
  // Same bin grid as the circuit histogram.
  auto edges = [](const std::string& csv) {
    std::vector<std::string> left;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) left.push_back(line.substr(0, line.find(',')));
    return left;
  };
  EXPECT_EQ(edges(bhist), edges(hist1));
}
