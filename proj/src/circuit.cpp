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

#include "qpsp/circuit.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "qpsp/error.hpp"

namespace qpsp {

int AnsatzSpec::logical_depth() const {
  std::vector<int> level(static_cast<std::size_t>(m_qubits), 0);
  for (const Gate& g : gates()) {
    auto& a = level[static_cast<std::size_t>(g.qubit)];
    if (g.kind == Gate::Kind::kRy) {
      ++a;
    } else {
      auto& b = level[static_cast<std::size_t>(g.target)];
      a = b = std::max(a, b) + 1;
    }
  }
  return *std::max_element(level.begin(), level.end());
}

std::vector<Gate> AnsatzSpec::gates() const {
  std::vector<Gate> out;
  out.reserve(static_cast<std::size_t>(gate_count()));
  int param = 0;
  for (int q = 0; q < m_qubits; ++q) out.push_back({Gate::Kind::kRy, q, -1, param++});
  for (int r = 0; r < reps; ++r) {
    for (int i = m_qubits - 2; i >= 0; --i) out.push_back({Gate::Kind::kCnot, i, i + 1, -1});
    for (int q = 0; q < m_qubits; ++q) out.push_back({Gate::Kind::kRy, q, -1, param++});
  }
  return out;
}

AnsatzSpec build_ansatz(int m, int reps) {
  if (m < 1 || m > kMaxPackedWidth) throw DomainError("ansatz needs 1..64 qubits, got " + std::to_string(m));
  if (reps < 1) throw DomainError("ansatz needs at least one repetition");
  return AnsatzSpec{m, reps};
}

std::string_view backend_name(Backend backend) { return backend == Backend::kDense ? "dense" : "mps"; }

Backend parse_backend(std::string_view name) {
  if (name == "dense") return Backend::kDense;
  if (name == "mps") return Backend::kMps;
  throw DomainError("unknown backend '" + std::string(name) + "'");
}

std::string SampleSet::to_csv() const {
  std::string out = "bitstring,count\n";
  for (const auto& [bits, count] : counts) {
    out += format_bits(bits, width);
    out += ',';
    out += std::to_string(count);
    out += '\n';
  }
  return out;
}

SampleSet SampleSet::from_csv(std::string_view text, std::uint64_t seed) {
  SampleSet set;
  set.seed = seed;
  std::istringstream in{std::string(text)};
  std::string line;
  std::getline(in, line);
  if (line.rfind("bitstring,count", 0) != 0) throw CodecError("sample CSV header missing");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw CodecError("sample CSV row malformed: " + line);
    const auto bits = line.substr(0, comma);
    set.width = static_cast<int>(bits.size());
    const auto count = std::stoll(line.substr(comma + 1));
    set.counts[parse_bits(bits)] += count;
    set.shots += count;
  }
  return set;
}

int MpsState::max_bond() const {
  int d = 1;
  for (const auto& s : sites) d = std::max(d, s.right);
  return d;
}

namespace {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void dense_ry(DenseState& s, int q, double theta) {
  const double c = std::cos(0.5 * theta);
  const double sn = std::sin(0.5 * theta);
  const std::size_t stride = std::size_t{1} << (s.qubits - 1 - q);
  const std::size_t size = s.amplitudes.size();
  double* amp = s.amplitudes.data();
  for (std::size_t hi = 0; hi < size; hi += 2 * stride) {
    for (std::size_t i = hi; i < hi + stride; ++i) {
      const double a0 = amp[i];
      const double a1 = amp[i + stride];
      amp[i] = c * a0 - sn * a1;
      amp[i + stride] = sn * a0 + c * a1;
    }
  }
}

void dense_cnot(DenseState& s, int control, int target) {
  const std::size_t cmask = std::size_t{1} << (s.qubits - 1 - control);
  const std::size_t tmask = std::size_t{1} << (s.qubits - 1 - target);
  for (std::size_t i = 0; i < s.amplitudes.size(); ++i) {
    if ((i & cmask) && !(i & tmask)) std::swap(s.amplitudes[i], s.amplitudes[i | tmask]);
  }
}

void mps_ry(MpsSite& site, double theta) {
  const double c = std::cos(0.5 * theta);
  const double sn = std::sin(0.5 * theta);
  for (int a = 0; a < site.left; ++a) {
    for (int b = 0; b < site.right; ++b) {
      const double v0 = site.at(a, 0, b);
      const double v1 = site.at(a, 1, b);
      site.at(a, 0, b) = c * v0 - sn * v1;
      site.at(a, 1, b) = sn * v0 + c * v1;
    }
  }
}

Matrix as_left_matrix(const MpsSite& s) {  // (left*2) x right
  return Eigen::Map<const Matrix>(s.data.data(), 2 * s.left, s.right);
}

Matrix as_right_matrix(const MpsSite& s) {  // left x (2*right)
  return Eigen::Map<const Matrix>(s.data.data(), s.left, 2 * s.right);
}

MpsSite from_matrix(const Matrix& m, int left, int right) {
  MpsSite s{left, right, std::vector<double>(m.data(), m.data() + m.size())};
  return s;
}

void move_right(MpsState& st) {
  const auto c = static_cast<std::size_t>(st.center);
  const MpsSite& site = st.sites[c];
  Matrix m = as_left_matrix(site);
  Eigen::HouseholderQR<Matrix> qr(m);
  const int k = static_cast<int>(std::min(m.rows(), m.cols()));
  Matrix q = qr.householderQ() * Matrix::Identity(m.rows(), k);
  Matrix r = qr.matrixQR().topRows(k).template triangularView<Eigen::Upper>();
  const int left = site.left;
  st.sites[c] = from_matrix(q, left, k);
  MpsSite& next = st.sites[c + 1];
  Matrix merged = r * as_right_matrix(next);
  next = from_matrix(merged, k, next.right);
  ++st.center;
}

void move_left(MpsState& st) {
  const auto c = static_cast<std::size_t>(st.center);
  const MpsSite& site = st.sites[c];
  Matrix mt = as_right_matrix(site).transpose();
  Eigen::HouseholderQR<Matrix> qr(mt);
  const int k = static_cast<int>(std::min(mt.rows(), mt.cols()));
  Matrix q = qr.householderQ() * Matrix::Identity(mt.rows(), k);
  Matrix r = qr.matrixQR().topRows(k).template triangularView<Eigen::Upper>();
  const int right = site.right;
  st.sites[c] = from_matrix(q.transpose(), k, right);
  MpsSite& prev = st.sites[c - 1];
  Matrix merged = as_left_matrix(prev) * r.transpose();
  prev = from_matrix(merged, prev.left, k);
  --st.center;
}

void move_center(MpsState& st, int target) {
  while (st.center < target) move_right(st);
  while (st.center > target) move_left(st);
}

// CNOT with control on site i and target on site i+1, followed by a
// truncated SVD that leaves the orthogonality centre on site i.
void mps_cnot(MpsState& st, int i, const SimOptions& options) {
  if (st.center != i && st.center != i + 1) move_center(st, i);
  const MpsSite& a = st.sites[static_cast<std::size_t>(i)];
  const MpsSite& b = st.sites[static_cast<std::size_t>(i + 1)];
  const int dl = a.left;
  const int dr = b.right;
  Matrix theta = Matrix::Zero(2 * dl, 2 * dr);
  for (int l = 0; l < dl; ++l) {
    for (int s1 = 0; s1 < 2; ++s1) {
      for (int s2 = 0; s2 < 2; ++s2) {
        const int src = s2 ^ s1;
        for (int r = 0; r < dr; ++r) {
          double v = 0.0;
          for (int m = 0; m < a.right; ++m) v += a.at(l, s1, m) * b.at(m, src, r);
          theta(l * 2 + s1, s2 * dr + r) = v;
        }
      }
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(theta, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double total = sv.squaredNorm();
  int keep = static_cast<int>(sv.size());
  double tail = 0.0;
  while (keep > 1) {
    const double w = sv(keep - 1) * sv(keep - 1);
    if (keep <= options.bond_cap && (tail + w) > options.truncation * total) break;
    tail += w;
    --keep;
  }
  st.discarded_weight += total > 0.0 ? tail / total : 0.0;
  const double rescale = std::sqrt(total / (total - tail));
  Matrix left = svd.matrixU().leftCols(keep) * (sv.head(keep) * rescale).asDiagonal();
  Matrix right = svd.matrixV().leftCols(keep).transpose();
  st.sites[static_cast<std::size_t>(i)] = from_matrix(left, dl, keep);
  st.sites[static_cast<std::size_t>(i + 1)] = from_matrix(right, keep, dr);
  st.center = i;
}

}  // namespace

QuantumState simulate(const AnsatzSpec& spec, std::span<const double> theta, const SimOptions& options) {
  if (static_cast<int>(theta.size()) != spec.parameter_count()) {
    throw DomainError("theta has " + std::to_string(theta.size()) + " entries, ansatz needs " +
                      std::to_string(spec.parameter_count()));
  }
  const int m = spec.m_qubits;
  if (options.backend == Backend::kDense) {
    if (m > options.dense_qubit_limit) {
      throw ResourceError("dense backend limited to " + std::to_string(options.dense_qubit_limit) + " qubits, circuit has " +
                          std::to_string(m));
    }
    DenseState s{m, std::vector<double>(std::size_t{1} << m, 0.0)};
    s.amplitudes[0] = 1.0;
    for (const Gate& g : spec.gates()) {
      if (g.kind == Gate::Kind::kRy) {
        dense_ry(s, g.qubit, theta[static_cast<std::size_t>(g.param)]);
      } else {
        dense_cnot(s, g.qubit, g.target);
      }
    }
    return QuantumState(std::move(s));
  }
  if (options.bond_cap < 1) throw DomainError("bond cap must be positive");
  MpsState st;
  st.sites.assign(static_cast<std::size_t>(m), MpsSite{1, 1, {1.0, 0.0}});
  for (const Gate& g : spec.gates()) {
    if (g.kind == Gate::Kind::kRy) {
      mps_ry(st.sites[static_cast<std::size_t>(g.qubit)], theta[static_cast<std::size_t>(g.param)]);
    } else {
      mps_cnot(st, g.qubit, options);
    }
  }
  move_center(st, 0);
  return QuantumState(std::move(st));
}

int QuantumState::qubits() const {
  if (const auto* d = dense()) return d->qubits;
  return static_cast<int>(mps()->sites.size());
}

double QuantumState::norm() const {
  if (const auto* d = dense()) {
    double sum = 0.0;
    for (double a : d->amplitudes) sum += a * a;
    return std::sqrt(sum);
  }
  Matrix env = Matrix::Ones(1, 1);
  for (const auto& site : mps()->sites) {
    Matrix next = Matrix::Zero(site.right, site.right);
    for (int s = 0; s < 2; ++s) {
      Matrix slice(site.left, site.right);
      for (int a = 0; a < site.left; ++a) {
        for (int b = 0; b < site.right; ++b) slice(a, b) = site.at(a, s, b);
      }
      next += slice.transpose() * env * slice;
    }
    env = std::move(next);
  }
  return std::sqrt(env(0, 0));
}

double QuantumState::amplitude(Bits bits) const {
  const int m = qubits();
  if (const auto* d = dense()) return d->amplitudes.at(static_cast<std::size_t>(bits));
  std::vector<double> v{1.0};
  for (int q = 0; q < m; ++q) {
    const auto& site = mps()->sites[static_cast<std::size_t>(q)];
    const int s = bit_at(bits, m, q);
    std::vector<double> w(static_cast<std::size_t>(site.right), 0.0);
    for (int a = 0; a < site.left; ++a) {
      for (int b = 0; b < site.right; ++b) w[static_cast<std::size_t>(b)] += v[static_cast<std::size_t>(a)] * site.at(a, s, b);
    }
    v = std::move(w);
  }
  return v[0];
}

namespace {

void mps_probabilities(const MpsState& st, int q, Bits prefix, const std::vector<double>& v, std::vector<double>& out) {
  const int m = static_cast<int>(st.sites.size());
  if (q == m) {
    out[static_cast<std::size_t>(prefix)] = v[0] * v[0];
    return;
  }
  const auto& site = st.sites[static_cast<std::size_t>(q)];
  for (int s = 0; s < 2; ++s) {
    std::vector<double> w(static_cast<std::size_t>(site.right), 0.0);
    for (int a = 0; a < site.left; ++a) {
      if (v[static_cast<std::size_t>(a)] == 0.0) continue;
      for (int b = 0; b < site.right; ++b) w[static_cast<std::size_t>(b)] += v[static_cast<std::size_t>(a)] * site.at(a, s, b);
    }
    mps_probabilities(st, q + 1, (prefix << 1) | static_cast<Bits>(s), w, out);
  }
}

}  // namespace

std::vector<double> QuantumState::exact_distribution(int max_qubits) const {
  const int m = qubits();
  if (m > max_qubits) {
    throw ResourceError("exact distribution limited to " + std::to_string(max_qubits) + " qubits");
  }
  if (const auto* d = dense()) {
    std::vector<double> p(d->amplitudes.size());
    std::transform(d->amplitudes.begin(), d->amplitudes.end(), p.begin(), [](double a) { return a * a; });
    return p;
  }
  std::vector<double> p(std::size_t{1} << m, 0.0);
  mps_probabilities(*mps(), 0, 0, {1.0}, p);
  return p;
}

std::map<std::string, double> QuantumState::distribution_map(double min_probability, int max_qubits) const {
  const auto p = exact_distribution(max_qubits);
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > min_probability) out.emplace(format_bits(static_cast<Bits>(i), qubits()), p[i]);
  }
  return out;
}

SampleSet QuantumState::sample(std::int64_t shots, std::uint64_t seed) const {
  if (shots < 1) throw DomainError("shots must be positive");
  SampleSet set;
  set.width = qubits();
  set.shots = shots;
  set.seed = seed;
  std::mt19937_64 rng(seed);
  if (const auto* d = dense()) {
    std::vector<double> cdf(d->amplitudes.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < cdf.size(); ++i) {
      acc += d->amplitudes[i] * d->amplitudes[i];
      cdf[i] = acc;
    }
    for (std::int64_t shot = 0; shot < shots; ++shot) {
      const double u = uniform01(rng) * acc;
      auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      if (it == cdf.end()) --it;
      ++set.counts[static_cast<Bits>(it - cdf.begin())];
    }
    return set;
  }
  // Sequential conditional sampling; simulate() leaves the centre on site 0
  // with every other site right-orthonormal.
  const MpsState& st = *mps();
  const int m = qubits();
  std::vector<double> v;
  std::vector<double> w0;
  std::vector<double> w1;
  for (std::int64_t shot = 0; shot < shots; ++shot) {
    v.assign(1, 1.0);
    Bits bits = 0;
    for (int q = 0; q < m; ++q) {
      const auto& site = st.sites[static_cast<std::size_t>(q)];
      w0.assign(static_cast<std::size_t>(site.right), 0.0);
      w1.assign(static_cast<std::size_t>(site.right), 0.0);
      for (int a = 0; a < site.left; ++a) {
        const double va = v[static_cast<std::size_t>(a)];
        for (int b = 0; b < site.right; ++b) {
          w0[static_cast<std::size_t>(b)] += va * site.at(a, 0, b);
          w1[static_cast<std::size_t>(b)] += va * site.at(a, 1, b);
        }
      }
      double p0 = 0.0;
      double p1 = 0.0;
      for (double x : w0) p0 += x * x;
      for (double x : w1) p1 += x * x;
      const int s = uniform01(rng) * (p0 + p1) < p0 ? 0 : 1;
      bits = (bits << 1) | static_cast<Bits>(s);
      v = s == 0 ? w0 : w1;
      const double inv = 1.0 / std::sqrt(s == 0 ? p0 : p1);
      for (double& x : v) x *= inv;
    }
    ++set.counts[bits];
  }
  return set;
}

}  // namespace qpsp
