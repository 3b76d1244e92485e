#pragma once

#include <functional>
#include <vector>

#include "uconvex/common.hpp"

namespace uconvex {

// Euclidean-metric building blocks working on oracles only; the module-level
// projection API wraps these behind the module contracts.

struct SolveCfg {
  double tol = 1e-8;       // Frank-Wolfe gap / feasibility certificate
  int max_iters = 100000;  // per solve
};

using SupportFn = std::function<Vec(const Vec&)>;    // argmax <u,.>
using ProjectFn = std::function<Vec(const Vec&)>;    // metric projection
using DistanceFn = std::function<double(const Vec&)>;

struct CgResult {
  Vec point;
  double distance = 0.0;
  double gap = 0.0;
  int iterations = 0;
  bool converged = false;
};

// min ||x - y|| over the convex set described by `support`, conditional
// gradient with exact line search on the quadratic, FW gap certificate.
CgResult cg_project(const SupportFn& support, const Vec& start, const Vec& x,
                    const SolveCfg& cfg);

// Membership decision dist(x, C) <= tol with early certificates both ways.
bool cg_contains(const SupportFn& support, const Vec& start, const Vec& x,
                 double tol, const SolveCfg& cfg);

struct DykstraResult {
  Vec point;
  int iterations = 0;
  bool converged = false;
  double max_defect = 0.0;  // max_j dist(point, C_j) at exit
  bool stalled = false;
};

// Dykstra's alternating projections onto the intersection of the given sets;
// defects measured by the supplied distance functions.
DykstraResult dykstra_project(const std::vector<ProjectFn>& projectors,
                              const std::vector<DistanceFn>& distances,
                              const Vec& x, const SolveCfg& cfg);

struct PenaltyResult {
  Vec point;
  int iterations = 0;
  double max_defect = 0.0;
  bool converged = false;
};

// min ½||x-q||² + (λ/2) Σ dist²(x, C_j) over x in the affine set
// {base + span(basis)}, λ driven up a geometric schedule with warm starts
// (FISTA inner loop). Handles tangential intersections where alternating
// projections stall. Empty basis + empty base = whole space.
PenaltyResult penalty_project(const Vec& q, const std::vector<ProjectFn>& projectors,
                              const std::vector<DistanceFn>& distances,
                              const Vec& affine_base, const std::vector<Vec>& affine_basis,
                              bool constrain_affine, const SolveCfg& cfg,
                              double lambda_max = 1e9);

}  // namespace uconvex
