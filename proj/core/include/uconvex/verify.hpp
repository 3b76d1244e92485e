#pragma once

#include <cstdint>

#include "uconvex/modulus.hpp"
#include "uconvex/report.hpp"

namespace uconvex {

struct VerifyCfg {
  std::vector<double> eps_grid;  // absolute chord lengths; empty = 12 points
                                 // spread over (0.1, 0.9) x diameter
  int samples = 1000;            // dual pairs for supporting continuity
  std::uint64_t seed = 42;
  double tol_analytic = 1e-6;
  double tol_table = 2e-3;
  double tol_support = 1e-3;
  bool expect_not_uniformly_convex = false;
  double strongly_convex_R = 0.0;  // > 0 enables the lower-bound check
  ModulusCfg modulus;
  SamplingCfg sampling;
};

// Lemma on scaling: delta(lambda eps) <= lambda delta(eps).
Report verify_scaling(const Modulus& m, const std::vector<double>& lambdas,
                      const std::vector<double>& eps_grid, double tol);

// delta nondecreasing and delta/eps nondecreasing; strictness is only
// demanded when the body is claimed uniformly convex.
Report verify_monotonicity(const Modulus& m, const std::vector<double>& eps_grid,
                           double tol, bool expect_strict);

// diam A <= (floor(eps/delta(eps)) + 1) * eps at grid points with delta > 0.
Report verify_diameter_bound(const ModulusTable& table);

// delta(eps) <= eps² / (diam - eps).
Report verify_quadratic_cap(const ModulusTable& table, double tol);

// Rescaled Day-Nordlander bound delta(2 r0 eps) <= (1 - sqrt(1-eps²))/2 with
// equality margins reported; eps_unit in (0,1).
struct DayNordlanderResult {
  Report report;
  double r0 = 0.0;
  double diameter = 0.0;
  std::vector<double> estimates;  // delta-hat at the checked chords
};
DayNordlanderResult verify_day_nordlander(const BodyPtr& body,
                                          const std::vector<double>& eps_unit,
                                          const VerifyCfg& cfg);

// phi(||x1-x2||) <= ||p1-p2||_* over seeded random dual pairs.
Report verify_supporting_continuity(const ConvexBody& body, const Modulus& m,
                                    int trials, std::uint64_t seed, double tol);

// delta-hat(eps) >= R delta_E(eps/R) for ball-intersection bodies.
Report verify_strongly_convex_lower(const ModulusTable& table, double R, double tol);

struct BatteryResult {
  std::vector<Report> reports;
  ModulusTable table;
  bool pass = true;
};

// The full section-2 battery: estimate, scaling, monotonicity, diameter
// bound, quadratic cap, Day-Nordlander, supporting continuity, optional
// strong-convexity lower bound, plus the integral diagnostic.
BatteryResult verify_battery(const BodyPtr& body, const VerifyCfg& cfg);

}  // namespace uconvex
