#pragma once

#include "uconvex/projection.hpp"
#include "uconvex/report.hpp"

namespace uconvex {

// Continuous linear surjection L : E1 (+) E2 -> E with its kernel basis.
struct LinearSurjection {
  Matrix matrix;            // n_out x (n1 + n2)
  int split = 0;            // n1
  std::vector<Vec> kernel;  // orthonormal basis of ker L

  LinearSurjection(Matrix m, int n1);  // NotSurjective if rank < rows
  int domain_dim() const { return matrix.cols; }
  int range_dim() const { return matrix.rows; }
  Vec apply(const Vec& w) const { return mat_vec(matrix, w); }
  // Affine preimage L^{-1}(f), based at the minimum-norm solution.
  AffineSubspace preimage(const Vec& f) const;
};

struct SplitSelection {
  Vec a;  // or f1
  Vec b;  // or f2
  double membership_defect_a = 0.0;
  double membership_defect_b = 0.0;
  double reconstruction_defect = 0.0;
  bool unique = true;
  int iterations = 0;
  std::string method;
};

// Lemma-style Minkowski split: a(c) = argmin_{x in (c-B) ∩ A} ||x||,
// b(c) = c - a(c). InfeasiblePoint when c is outside A+B beyond tolerance.
SplitSelection split_sum(const BodyPtr& A, const BodyPtr& B, const Vec& c,
                         const ProjectionCfg& cfg = {});

// Steiner point by spherical quadrature of the support function, normalized
// through the empirical second-moment matrix of the direction set (the
// singleton calibration).
Vec steiner_point(const ConvexBody& k, const SamplingCfg& cfg = {});

// L_n = (2/sqrt(pi)) Gamma(n/2+1) / Gamma((n+1)/2).
double steiner_lipschitz_constant(int n);

// Largest C with ||u|| >= C ||w|| and ||v|| >= C ||w|| for unit w = (u,v) in
// the kernel (max product norm). 0 signals a kernel parallel to a factor;
// +infinity for the trivial kernel.
double parallelism_constant(const std::vector<Vec>& kernel, int split,
                            double p1 = 2.0, double p2 = 2.0);
double parallelism_constant(const LinearSurjection& l);

// Selection with its certificates as JSON.
Json split_selection_to_json(const SplitSelection& s);

// One evaluation of the kernel-subspace splitting pipeline:
// w = min-norm preimage of f, H = (F1 x F2) ∩ (w + ker L), (f1,f2) = the
// projection of 0 onto H. KernelParallel when C = 0.
SplitSelection split_kernel(const BodyPtr& f1_body, const BodyPtr& f2_body,
                            const LinearSurjection& l, const Vec& f,
                            const ProjectionCfg& cfg = {});

}  // namespace uconvex
