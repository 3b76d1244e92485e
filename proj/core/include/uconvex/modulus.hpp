#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "uconvex/geometry.hpp"

namespace uconvex {

struct ModulusCfg {
  int boundary_points = 1024;  // 2D boundary grid resolution
  int depth_dirs = 256;        // ray directions per depth evaluation
  bool refine = true;          // golden-refine depth direction minima
  double chord_tol_rel = 1e-2; // acceptance window (pairs realized far tighter)
  double bisect_tol = 1e-11;   // boundary bisection tolerance
  int nd_boundary = 4096;      // n>=3: sampled boundary points
  int nd_pairs = 4096;         // n>=3: sampled chord pairs
  int threads = 1;
};

// Tabulated eps -> delta estimate. `delta` carries the isotonic-cleaned
// values (PAVA on delta/eps, which keeps both delta and delta/eps monotone);
// `raw` keeps the untouched minima.
struct ModulusTable {
  std::vector<double> eps;
  std::vector<double> delta;
  std::vector<double> raw;
  std::vector<std::uint8_t> realizable;

  std::string body_id;
  int boundary_points = 0;
  int depth_dirs = 0;
  double chord_tol_rel = 0.0;
  bool upper_bias = false;  // sampled estimate in dimension >= 3
  double diameter = 0.0;

  double max_eps() const;
  double max_value() const;
  // Piecewise-linear evaluation on [0, max_eps], 0 at 0.
  double eval(double e) const;
  // delta/eps by interpolation of the node ratios; 0 below the first node
  // (the sound lower bound there).
  double ratio_eval(double e) const;
  bool all_zero() const;
};

// Unified modulus handle: analytic kinds or a custom table, with the
// (r0, Delta0, M) attachments the bound function f needs.
class Modulus {
 public:
  enum class Kind { EuclidBall, Power, MinPower, ScaledAmbient, Table };

  static Modulus euclid_ball(double r);
  static Modulus power(double p);
  // min((eps/2)^p, c eps^2): power law capped by a curvature-driven
  // quadratic lower bound (flattest boundary point away from the apex).
  static Modulus min_power(double p, double quad_coeff);
  static Modulus strongly_convex_lower(double R, Modulus ambient);
  static Modulus table(ModulusTable t);

  Kind kind() const { return kind_; }
  double eval(double eps) const;
  double inverse(double y) const;  // generalized (sandwich) inverse
  double domain_max() const;       // +inf when unconstrained
  double sup_value() const;

  Modulus& with_r0(double r0);     // also sets delta0 = eval(2 r0)
  Modulus& with_delta0(double d0);
  Modulus& with_M(double M);
  std::optional<double> r0() const { return r0_; }
  std::optional<double> delta0() const { return delta0_; }
  std::optional<double> M() const { return big_m_; }

  double param() const { return param_; }  // r or p or R
  const ModulusTable* table_data() const;

 private:
  Kind kind_ = Kind::EuclidBall;
  double param_ = 1.0;
  double quad_coeff_ = 0.0;
  std::shared_ptr<Modulus> ambient_;  // ScaledAmbient inner modulus
  std::shared_ptr<ModulusTable> table_;
  std::optional<double> r0_, delta0_, big_m_;
};

// sup{ d : B_d(x) inside the body }, by ray sampling from x (exact in the
// dense-direction limit for convex bodies). `cutoff` lets pair enumeration
// abandon early: once the running minimum certifiably exceeds it, the coarse
// value is returned unrefined.
double depth(const ConvexBody& body, const Vec& x, const ModulusCfg& cfg = {});
double depth_below(const ConvexBody& body, const Vec& x, double cutoff,
                   const ModulusCfg& cfg);

// delta estimate at a single chord length; ChordNotRealizable if no boundary
// pair attains eps within the chord window.
double estimate_modulus_at(const ConvexBody& body, double eps,
                           const ModulusCfg& cfg = {});

// Tabulated estimate over the grid. With strict=true any unrealizable eps
// throws; otherwise the row is flagged and skipped.
ModulusTable estimate_modulus(const ConvexBody& body,
                              const std::vector<double>& eps_grid,
                              const ModulusCfg& cfg = {}, bool strict = true);

double inverse_modulus(const Modulus& m, double y);
double phi(const Modulus& m, double eps);        // 4 delta(eps) / eps
double f_bound(const Modulus& m, double x);      // needs delta0 and M
double strongly_convex_lower_value(double R, const Modulus& ambient, double eps);

// Measured inner radius about the interior point (depth there).
double inner_radius(const ConvexBody& body, const ModulusCfg& cfg = {});

}  // namespace uconvex
