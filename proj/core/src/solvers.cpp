#include "uconvex/solvers.hpp"

#include <algorithm>
#include <cmath>

namespace uconvex {

CgResult cg_project(const SupportFn& support, const Vec& start, const Vec& x,
                    const SolveCfg& cfg) {
  Vec y = start;
  CgResult res;
  for (int k = 0; k < cfg.max_iters; ++k) {
    Vec grad = sub(y, x);
    double d = norm2(grad);
    if (d < 1e-15) {
      res = {y, d, 0.0, k, true};
      return res;
    }
    Vec v = support(negated(grad));
    Vec dir = sub(v, y);
    double gap = -dot(grad, dir);  // <grad, y - v>
    if (gap <= cfg.tol) {
      res = {y, d, std::max(gap, 0.0), k, true};
      return res;
    }
    double denom = dot(dir, dir);
    double gamma = denom > 0.0 ? std::clamp(gap / denom, 0.0, 1.0) : 0.0;
    if (gamma == 0.0) {
      res = {y, d, gap, k, false};
      return res;
    }
    axpy(gamma, dir, y);
  }
  Vec grad = sub(y, x);
  res = {y, norm2(grad), cfg.tol * 2, cfg.max_iters, false};
  return res;
}

bool cg_contains(const SupportFn& support, const Vec& start, const Vec& x,
                 double tol, const SolveCfg& cfg) {
  Vec y = start;
  for (int k = 0; k < cfg.max_iters; ++k) {
    Vec grad = sub(y, x);
    double d = norm2(grad);
    if (d <= tol) return true;
    Vec v = support(negated(grad));
    Vec dir = sub(v, y);
    double gap = -dot(grad, dir);
    // f - f* <= gap with f = d²/2, so d* >= sqrt(d² - 2 gap).
    if (d * d - 2.0 * gap > tol * tol) return false;
    double denom = dot(dir, dir);
    double gamma = denom > 0.0 ? std::clamp(gap / denom, 0.0, 1.0) : 0.0;
    if (gamma <= 0.0) return d <= tol;
    axpy(gamma, dir, y);
  }
  return norm2(sub(y, x)) <= tol;
}

DykstraResult dykstra_project(const std::vector<ProjectFn>& projectors,
                              const std::vector<DistanceFn>& distances,
                              const Vec& x, const SolveCfg& cfg) {
  const std::size_t m = projectors.size();
  Vec cur = x;
  std::vector<Vec> corrections(m, zeros(x.size()));
  DykstraResult res;
  double prev_window_defect = -1.0;
  const int window = 400;
  int cycles = std::max(1, cfg.max_iters / static_cast<int>(m));
  for (int k = 0; k < cycles; ++k) {
    double move = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      Vec arg = add(cur, corrections[j]);
      Vec proj = projectors[j](arg);
      corrections[j] = sub(arg, proj);
      move = std::max(move, norm2(sub(proj, cur)));
      cur = std::move(proj);
    }
    if ((k + 1) % 25 == 0 || move < cfg.tol * 0.1) {
      double defect = 0.0;
      for (const auto& d : distances) defect = std::max(defect, d(cur));
      res.max_defect = defect;
      if (defect <= cfg.tol && move <= cfg.tol) {
        res.point = cur;
        res.iterations = (k + 1) * static_cast<int>(m);
        res.converged = true;
        return res;
      }
      if ((k + 1) % window == 0) {
        if (prev_window_defect >= 0.0 && defect > 0.5 * prev_window_defect &&
            defect > cfg.tol) {
          res.point = cur;
          res.iterations = (k + 1) * static_cast<int>(m);
          res.stalled = true;
          return res;
        }
        prev_window_defect = defect;
      }
    }
  }
  res.point = cur;
  res.iterations = cfg.max_iters;
  double defect = 0.0;
  for (const auto& d : distances) defect = std::max(defect, d(cur));
  res.max_defect = defect;
  res.stalled = defect > cfg.tol;
  return res;
}

namespace {

Vec affine_project(const Vec& x, const Vec& base, const std::vector<Vec>& basis) {
  Vec r = base;
  Vec d = sub(x, base);
  for (const auto& b : basis) axpy(dot(b, d), b, r);
  return r;
}

}  // namespace

PenaltyResult penalty_project(const Vec& q, const std::vector<ProjectFn>& projectors,
                              const std::vector<DistanceFn>& distances,
                              const Vec& affine_base, const std::vector<Vec>& affine_basis,
                              bool constrain_affine, const SolveCfg& cfg,
                              double lambda_max) {
  const std::size_t m = projectors.size();
  auto restrict_affine = [&](Vec x) {
    return constrain_affine ? affine_project(x, affine_base, affine_basis)
                            : std::move(x);
  };
  Vec x = restrict_affine(q);
  PenaltyResult res;
  long long total_iters = 0;
  const long long budget = 4000000;
  const double scale = 1.0 + norm2(q);
  for (double lambda = 100.0; lambda <= lambda_max * 1.001; lambda *= 10.0) {
    const double L = 1.0 + lambda * static_cast<double>(m);
    const double sqrt_kappa = std::sqrt(L);  // strong convexity 1
    const double beta = (sqrt_kappa - 1.0) / (sqrt_kappa + 1.0);
    Vec y = x;
    Vec x_prev = x;
    const long long inner_cap =
        200 + static_cast<long long>(60.0 * sqrt_kappa);
    for (long long it = 0; it < inner_cap && total_iters < budget; ++it, ++total_iters) {
      Vec grad = sub(y, q);
      for (std::size_t j = 0; j < m; ++j) {
        Vec p = projectors[j](y);
        axpy(lambda, sub(y, p), grad);
      }
      if (constrain_affine) {
        Vec g = zeros(grad.size());
        for (const auto& b : affine_basis) axpy(dot(b, grad), b, g);
        grad = std::move(g);
      }
      Vec x_next = y;
      axpy(-1.0 / L, grad, x_next);
      x_next = restrict_affine(std::move(x_next));
      double stationarity = L * norm2(sub(y, x_next));  // gradient-mapping norm
      Vec momentum = sub(x_next, x_prev);
      x_prev = x_next;
      y = std::move(x_next);
      axpy(beta, momentum, y);
      y = restrict_affine(std::move(y));
      if (stationarity <= 1e-11 * scale) break;
    }
    x = x_prev;
  }
  res.point = x;
  res.iterations = static_cast<int>(std::min<long long>(total_iters, 1 << 30));
  double defect = 0.0;
  for (const auto& d : distances) defect = std::max(defect, d(x));
  res.max_defect = defect;
  res.converged = defect <= std::max(cfg.tol, 1e-7);
  return res;
}

}  // namespace uconvex
