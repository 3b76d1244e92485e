#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "uconvex/common.hpp"

namespace uconvex {

constexpr double kInfExponent = std::numeric_limits<double>::infinity();

// Holder-conjugate exponent: 1/p + 1/q = 1.
double dual_exponent(double p);

double lp_norm(std::span<const double> x, double p);

// ||a - b||_p without forming the difference.
double lp_dist(std::span<const double> a, std::span<const double> b, double p);

// Norming functional of the lp norm: for x != 0 returns u with
// dual_norm(u) = 1 and <u, x> = ||x||_p.
Vec lp_norming_functional(std::span<const double> x, double p);

// Maximizer of <u, .> over the unit lp ball; `unique` is false on degenerate
// faces (p in {1, inf} with ties / zero components).
struct LpFacePoint {
  Vec point;
  bool unique;
};
LpFacePoint lp_unit_ball_argmax(std::span<const double> u, double p);

// Ambient space: a finite-dimensional lp space, or a max-norm product of lp
// factors (the E1 (+) E2 of the splitting construction).
class Space {
 public:
  struct Factor {
    int dim;
    double p;
  };

  static Space lp(int dim, double p);
  static Space product(const Space& a, const Space& b);

  int dim() const { return dim_; }
  double p() const { return p_; }
  bool is_product() const { return factors_.size() > 1; }
  const std::vector<Factor>& factors() const { return factors_; }

  double norm(std::span<const double> x) const;       // primal norm
  double dual_norm(std::span<const double> u) const;  // norm on E*
  double dist(std::span<const double> a, std::span<const double> b) const;

  // The metric used by the projection solvers: plain Euclidean coordinates.
  // Valid when p == 2 everywhere (||.||_uc on products).
  bool solver_euclidean() const;

  // Dual unit vector norming x: <u,x> = norm(x), dual_norm(u) = 1.
  Vec norming_functional(std::span<const double> x) const;

  bool operator==(const Space& o) const;

 private:
  int dim_ = 0;
  double p_ = 2.0;
  std::vector<Factor> factors_;  // always at least one
};

}  // namespace uconvex
