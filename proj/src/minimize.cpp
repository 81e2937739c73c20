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

#include "qpsp/minimize.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qpsp/error.hpp"

namespace qpsp {

std::string_view termination_name(Termination t) {
  return t == Termination::kConverged ? "CONVERGED" : "MAX_ITER";
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct BudgetExhausted {};

// Counts evaluations, remembers the best point and rejects non-finite values.
class Counter {
 public:
  Counter(const Objective& f, int budget) : f_(f), budget_(budget) {}

  double operator()(const VectorXd& x) {
    if (count_ >= budget_) throw BudgetExhausted{};
    const double v = f_(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
    ++count_;
    if (!std::isfinite(v)) {
      throw Error("objective returned a non-finite value at evaluation " + std::to_string(count_));
    }
    if (count_ == 1 || v < best_f_) {
      best_f_ = v;
      best_x_ = x;
    }
    return v;
  }

  int count() const { return count_; }

  MinimizeResult result(Termination t) const {
    MinimizeResult r;
    r.x.assign(best_x_.data(), best_x_.data() + best_x_.size());
    r.f = best_f_;
    r.evaluations = count_;
    r.termination = t;
    return r;
  }

 private:
  const Objective& f_;
  int budget_;
  int count_ = 0;
  double best_f_ = 0.0;
  VectorXd best_x_;
};

void check_options(const MinimizeOptions& o) {
  if (o.max_evaluations < 1) throw ParameterError("max_evaluations must be >= 1");
  if (!(o.initial_step > 0.0)) throw ParameterError("initial step must be positive");
  if (!(o.tolerance > 0.0)) throw ParameterError("tolerance must be positive");
}

VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

class Cobyla {
 public:
  Cobyla(Counter& eval, VectorXd x0, double rhobeg, double rhoend)
      : eval_(eval), n_(x0.size()), rho_(rhobeg), rhoend_(std::min(rhoend, rhobeg)), xb_(std::move(x0)) {}

  Termination run() {
    initial_simplex();
    bool geometry_pending = false;
    for (;;) {
      shift_to_best();
      if (eval_.count() % std::max<Eigen::Index>(n_, 1) == 0) refresh_inverse();
      const VectorXd g = sinv_.transpose() * (fv_.array() - fb_).matrix();
      measure_simplex();

      if (geometry_pending) {
        geometry_step(g);
        geometry_pending = false;
        continue;
      }

      const bool acceptable = simplex_acceptable();
      const double gn = g.norm();
      if (gn > 0.0 && std::isfinite(gn)) {
        const VectorXd d = -rho_ * g / gn;
        const double fn = eval_(xb_ + d);
        const double prered = rho_ * gn;
        const double actred = fb_ - fn;
        const auto jdrop = choose_drop(d, actred);
        if (jdrop >= 0) replace_vertex(jdrop, d, fn);
        if (actred > 0.0 && actred >= 0.1 * prered) continue;
      }
      if (!acceptable) {
        geometry_pending = true;
        continue;
      }
      if (rho_ <= rhoend_) return Termination::kConverged;
      rho_ *= 0.5;
      if (rho_ <= 1.5 * rhoend_) rho_ = rhoend_;
    }
  }

 private:
  void initial_simplex() {
    fb_ = eval_(xb_);
    s_ = MatrixXd::Identity(n_, n_) * rho_;
    sinv_ = MatrixXd::Identity(n_, n_) / rho_;
    fv_ = VectorXd::Constant(n_, std::numeric_limits<double>::infinity());
    veta_.resize(n_);
    vsig_.resize(n_);
    for (Eigen::Index j = 0; j < n_; ++j) {
      VectorXd x = xb_;
      x[j] += rho_;
      fv_[j] = eval_(x);
    }
  }

  void shift_to_best() {
    Eigen::Index l = 0;
    const double fmin = fv_.minCoeff(&l);
    if (!(fmin < fb_)) return;
    const VectorXd dl = s_.col(l);
    xb_ += dl;
    std::swap(fb_, fv_[l]);
    for (Eigen::Index j = 0; j < n_; ++j) {
      if (j != l) s_.col(j) -= dl;
    }
    s_.col(l) = -dl;
    const Eigen::RowVectorXd sum = sinv_.colwise().sum();
    sinv_.row(l) = -sum;
  }

  void refresh_inverse() {
    const double err = (sinv_ * s_ - MatrixXd::Identity(n_, n_)).cwiseAbs().maxCoeff();
    if (err > 1e-8) sinv_ = s_.fullPivLu().inverse();
  }

  void measure_simplex() {
    for (Eigen::Index j = 0; j < n_; ++j) {
      veta_[j] = s_.col(j).norm();
      vsig_[j] = 1.0 / sinv_.row(j).norm();
    }
  }

  bool simplex_acceptable() const {
    for (Eigen::Index j = 0; j < n_; ++j) {
      if (vsig_[j] < kAlpha * rho_ || veta_[j] > kBeta * rho_) return false;
    }
    return true;
  }

  Eigen::Index choose_drop(const VectorXd& d, double actred) const {
    double ratio = actred <= 0.0 ? 1.0 : 0.0;
    Eigen::Index jdrop = -1;
    VectorXd sigbar(n_);
    for (Eigen::Index j = 0; j < n_; ++j) {
      const double t = std::abs(sinv_.row(j).dot(d));
      if (t > ratio) {
        jdrop = j;
        ratio = t;
      }
      sigbar[j] = t * vsig_[j];
    }
    double edgmax = kDelta * rho_;
    Eigen::Index l = -1;
    for (Eigen::Index j = 0; j < n_; ++j) {
      if (sigbar[j] >= kAlpha * rho_ || sigbar[j] >= vsig_[j]) {
        const double t = actred > 0.0 ? (d - s_.col(j)).norm() : veta_[j];
        if (t > edgmax) {
          l = j;
          edgmax = t;
        }
      }
    }
    return l >= 0 ? l : jdrop;
  }

  void replace_vertex(Eigen::Index j, const VectorXd& d, double f) {
    s_.col(j) = d;
    fv_[j] = f;
    const double denom = sinv_.row(j).dot(d);
    sinv_.row(j) /= denom;
    for (Eigen::Index k = 0; k < n_; ++k) {
      if (k == j) continue;
      const double t = sinv_.row(k).dot(d);
      sinv_.row(k) -= t * sinv_.row(j);
    }
  }

  void geometry_step(const VectorXd& g) {
    Eigen::Index l = -1;
    double t = kBeta * rho_;
    for (Eigen::Index j = 0; j < n_; ++j) {
      if (veta_[j] > t) {
        l = j;
        t = veta_[j];
      }
    }
    if (l < 0) {
      t = kAlpha * rho_;
      for (Eigen::Index j = 0; j < n_; ++j) {
        if (vsig_[j] < t) {
          l = j;
          t = vsig_[j];
        }
      }
    }
    if (l < 0) return;
    VectorXd d = (kGamma * rho_ * vsig_[l]) * sinv_.row(l).transpose();
    if (g.dot(d) > 0.0) d = -d;
    const double f = eval_(xb_ + d);
    replace_vertex(l, d, f);
  }

  static constexpr double kAlpha = 0.25;
  static constexpr double kBeta = 2.1;
  static constexpr double kGamma = 0.5;
  static constexpr double kDelta = 1.1;

  Counter& eval_;
  Eigen::Index n_;
  double rho_;
  double rhoend_;
  VectorXd xb_;
  double fb_ = 0.0;
  MatrixXd s_;
  MatrixXd sinv_;
  VectorXd fv_;
  VectorXd veta_;
  VectorXd vsig_;
};

Termination nelder_mead(Counter& eval, const VectorXd& x0, double step, double tol) {
  const auto n = x0.size();
  std::vector<VectorXd> x(static_cast<std::size_t>(n + 1), x0);
  std::vector<double> fx(static_cast<std::size_t>(n + 1));
  fx[0] = eval(x0);
  for (Eigen::Index j = 0; j < n; ++j) {
    auto& v = x[static_cast<std::size_t>(j + 1)];
    v[j] += step;
    fx[static_cast<std::size_t>(j + 1)] = eval(v);
  }
  std::vector<std::size_t> order(x.size());
  for (;;) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return fx[a] < fx[b]; });
    std::vector<VectorXd> xs;
    std::vector<double> fs;
    for (auto i : order) {
      xs.push_back(x[i]);
      fs.push_back(fx[i]);
    }
    x = std::move(xs);
    fx = std::move(fs);

    double fspread = 0.0;
    double xspread = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
      fspread = std::max(fspread, std::abs(fx[i] - fx[0]));
      xspread = std::max(xspread, (x[i] - x[0]).cwiseAbs().maxCoeff());
    }
    if (fspread <= tol && xspread <= tol) return Termination::kConverged;

    const auto w = static_cast<std::size_t>(n);
    VectorXd centroid = VectorXd::Zero(n);
    for (std::size_t i = 0; i < w; ++i) centroid += x[i];
    centroid /= static_cast<double>(n);

    const VectorXd xr = centroid + (centroid - x[w]);
    const double fr = eval(xr);
    if (fr < fx[0]) {
      const VectorXd xe = centroid + 2.0 * (centroid - x[w]);
      const double fe = eval(xe);
      if (fe < fr) {
        x[w] = xe;
        fx[w] = fe;
      } else {
        x[w] = xr;
        fx[w] = fr;
      }
      continue;
    }
    if (fr < fx[w - 1]) {
      x[w] = xr;
      fx[w] = fr;
      continue;
    }
    bool shrink = false;
    if (fr < fx[w]) {
      const VectorXd xc = centroid + 0.5 * (xr - centroid);
      const double fc = eval(xc);
      if (fc <= fr) {
        x[w] = xc;
        fx[w] = fc;
      } else {
        shrink = true;
      }
    } else {
      const VectorXd xc = centroid + 0.5 * (x[w] - centroid);
      const double fc = eval(xc);
      if (fc < fx[w]) {
        x[w] = xc;
        fx[w] = fc;
      } else {
        shrink = true;
      }
    }
    if (shrink) {
      for (std::size_t i = 1; i < x.size(); ++i) {
        x[i] = x[0] + 0.5 * (x[i] - x[0]);
        fx[i] = eval(x[i]);
      }
    }
  }
}

}  // namespace

MinimizeResult minimize_cobyla(const Objective& f, std::vector<double> x0,
                               const MinimizeOptions& options) {
  check_options(options);
  Counter eval(f, options.max_evaluations);
  Termination t = Termination::kMaxIter;
  try {
    if (x0.empty()) {
      eval(VectorXd());
      t = Termination::kConverged;
    } else {
      Cobyla solver(eval, to_eigen(x0), options.initial_step, options.tolerance);
      t = solver.run();
    }
  } catch (const BudgetExhausted&) {
    t = Termination::kMaxIter;
  }
  return eval.result(t);
}

MinimizeResult minimize_nelder_mead(const Objective& f, std::vector<double> x0,
                                    const MinimizeOptions& options) {
  check_options(options);
  Counter eval(f, options.max_evaluations);
  Termination t = Termination::kMaxIter;
  try {
    if (x0.empty()) {
      eval(VectorXd());
      t = Termination::kConverged;
    } else {
      t = nelder_mead(eval, to_eigen(x0), options.initial_step, options.tolerance);
    }
  } catch (const BudgetExhausted&) {
    t = Termination::kMaxIter;
  }
  return eval.result(t);
}

}  // namespace qpsp
