// Copyright 2026 The Frame Lab Authors. All Rights Reserved.
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

#include "frame_lab/dual_search.hpp"

namespace frame_lab {

const char* to_string(SearchMethod method) {
  return method == SearchMethod::kBarrier ? "barrier" : "subgradient";
}

SearchMethod search_method_from_string(const std::string& s) {
  if (s == "barrier") return SearchMethod::kBarrier;
  if (s == "subgradient") return SearchMethod::kSubgradient;
  throw Error(ErrorCode::kInvalidArgument, "unknown search method '" + s + "'");
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kOptimal: return "optimal";
    case Verdict::kNotOptimal: return "not_optimal";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace detail {
namespace {

// Minimize s * t - sum_i log(t^2 - ||w_i||^2), w_i = c_i + B_i y, over z = (y, t).
class CentralPath {
 public:
  CentralPath(const ReducedMinimax& p) : p_(p), r_(p.dim()) {}

  bool feasible(const Eigen::VectorXd& z) const {
    const double t = z(r_);
    if (!(t > 0)) return false;
    for (std::size_t i = 0; i < p_.c.size(); ++i)
      if (!(t * t - residual(i, z).squaredNorm() > 0)) return false;
    return true;
  }

  double energy(const Eigen::VectorXd& z, double s) const {
    const double t = z(r_);
    double e = s * t;
    for (std::size_t i = 0; i < p_.c.size(); ++i) e -= std::log(t * t - residual(i, z).squaredNorm());
    return e;
  }

  void derivatives(const Eigen::VectorXd& z, double s, Eigen::VectorXd& grad, Eigen::MatrixXd& hess) const {
    const double t = z(r_);
    grad = Eigen::VectorXd::Zero(r_ + 1);
    hess = Eigen::MatrixXd::Zero(r_ + 1, r_ + 1);
    grad(r_) = s;
    Eigen::VectorXd du(r_ + 1);
    for (std::size_t i = 0; i < p_.c.size(); ++i) {
      const Eigen::VectorXd w = residual(i, z);
      const double u = t * t - w.squaredNorm();
      du.head(r_) = -2.0 * (p_.b[i].transpose() * w);
      du(r_) = 2.0 * t;
      grad -= du / u;
      hess.noalias() += du * du.transpose() / (u * u);
      hess.topLeftCorner(r_, r_).noalias() += (2.0 / u) * (p_.b[i].transpose() * p_.b[i]);
      hess(r_, r_) -= 2.0 / u;
    }
  }

 private:
  Eigen::VectorXd residual(std::size_t i, const Eigen::VectorXd& z) const {
    return p_.c[i] + p_.b[i] * z.head(r_);
  }

  const ReducedMinimax& p_;
  Index r_;
};

}  // namespace

RunOutcome barrier_minimize(const ReducedMinimax& problem, const Eigen::VectorXd& y0, const SearchOptions& options) {
  const Index r = problem.dim();
  RunOutcome out;
  out.y = y0;
  out.value = problem.value(y0);
  if (r == 0) return out;

  CentralPath path(problem);
  Eigen::VectorXd z(r + 1);
  z.head(r) = y0;
  z(r) = 1.2 * out.value + 1e-3 * std::max(1.0, out.value);

  // each second-order cone barrier contributes 2 to the self-concordance parameter
  const double nu = 2.0 * double(problem.c.size());
  double s = nu / std::max(z(r), 1e-3);
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
  int steps = 0;
  bool stuck = false;
  while (!stuck && steps < options.max_iterations) {
    for (int inner = 0; inner < 200 && steps < options.max_iterations; ++inner) {
      path.derivatives(z, s, grad, hess);
      Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
      Eigen::VectorXd step = -ldlt.solve(grad);
      if (ldlt.info() != Eigen::Success || !step.allFinite()) {
        const double ridge = 1e-12 * std::max(1.0, hess.diagonal().cwiseAbs().maxCoeff());
        hess.diagonal().array() += ridge;
        step = -hess.llt().solve(grad);
      }
      const double decrement = -grad.dot(step);
      ++steps;
      if (!std::isfinite(decrement) || decrement < 0) {
        stuck = true;
        break;
      }
      if (decrement / 2 <= 1e-12) break;
      double alpha = 1.0;
      int halvings = 0;
      while (!path.feasible(z + alpha * step) && halvings < 80) {
        alpha *= 0.5;
        ++halvings;
      }
      const double e0 = path.energy(z, s);
      while (halvings < 80 && !(path.energy(z + alpha * step, s) <= e0 - 0.25 * alpha * decrement)) {
        alpha *= 0.5;
        ++halvings;
      }
      if (halvings >= 80) {
        stuck = true;
        break;
      }
      z += alpha * step;
    }
    const double value = problem.value(z.head(r));
    if (value < out.value) {
      out.value = value;
      out.y = z.head(r);
    }
    if (nu / s <= options.barrier_gap * std::max(1.0, z(r))) break;
    s *= 8.0;
  }
  out.iterations = steps;
  return out;
}

RunOutcome subgradient_minimize(const ReducedMinimax& problem, const Eigen::VectorXd& y0,
                                const SearchOptions& options) {
  RunOutcome out;
  out.y = y0;
  out.value = problem.value(y0);
  if (problem.dim() == 0) return out;
  Eigen::VectorXd y = y0;
  double window_start_best = out.value;
  int k = 0;
  for (k = 1; k <= options.max_iterations; ++k) {
    std::size_t active = 0;
    double v = -1;
    for (std::size_t i = 0; i < problem.c.size(); ++i) {
      const double vi = (problem.c[i] + problem.b[i] * y).norm();
      if (vi > v) {
        v = vi;
        active = i;
      }
    }
    if (v < out.value) {
      out.value = v;
      out.y = y;
    }
    if (k % options.stall_window == 0) {
      if (window_start_best - out.value < options.stall_improvement) break;
      window_start_best = out.value;
    }
    if (v <= 0) break;
    const Eigen::VectorXd w = problem.c[active] + problem.b[active] * y;
    const Eigen::VectorXd g = problem.b[active].transpose() * w / v;
    const double gn = g.norm();
    if (gn == 0) break;
    y -= (options.step_scale / std::sqrt(double(k))) * g / gn;
  }
  const double last = problem.value(y);
  if (last < out.value) {
    out.value = last;
    out.y = y;
  }
  out.iterations = std::min(k, options.max_iterations);
  return out;
}

}  // namespace detail
}  // namespace frame_lab
