#pragma once

#include "uconvex/bodies.hpp"
#include "uconvex/solvers.hpp"

namespace uconvex {

struct ProjectionCfg {
  double tol = 1e-8;             // FW gap / Dykstra feasibility certificate
  int max_iters = 100000;
  double membership_tol = 1e-6;  // defect threshold quoted in certificates
  double penalty_lambda_max = 1e8;
};

// Affine subspace with an orthonormal direction basis (Euclidean).
struct AffineSubspace {
  Vec basepoint;
  std::vector<Vec> basis;

  AffineSubspace(Vec base, std::vector<Vec> raw_basis);
  int ambient_dim() const { return static_cast<int>(basepoint.size()); }
  Vec project(const Vec& x) const;
  double distance(const Vec& x) const;
};

struct ProjectionResult {
  Vec point;
  double distance = 0.0;  // Euclidean (the solver metric)
  int iterations = 0;
  bool converged = true;
  double feasibility_defect = 0.0;
  std::string method;
};

// Closed-form orthogonal projection; residual orthogonal to the basis.
ProjectionResult project_affine(const AffineSubspace& s, const Vec& x);

// Metric projection onto a body: closed forms where available, otherwise
// conditional gradient with the support oracle and the FW gap certificate.
// NonEuclideanNorm unless the ambient solver metric is Euclidean.
ProjectionResult project_body(const ConvexBody& a, const Vec& x,
                              const ProjectionCfg& cfg = {});

double body_distance(const ConvexBody& a, const Vec& x,
                     const ProjectionCfg& cfg = {});

// Projection onto intersections: Dykstra first, penalty continuation when
// the alternating scheme stalls (tangential intersections).
ProjectionResult project_intersection(const ConvexBody& a, const AffineSubspace& s,
                                      const Vec& x, const ProjectionCfg& cfg = {});
ProjectionResult project_intersection(const ConvexBody& a, const ConvexBody& b,
                                      const Vec& x, const ProjectionCfg& cfg = {});
ProjectionResult project_intersection_multi(const std::vector<const ConvexBody*>& bodies,
                                            const AffineSubspace* s, const Vec& x,
                                            const ProjectionCfg& cfg);

// rho_A(c, B) = inf{ t > 0 : c in B + tA }; requires 0 interior to A.
double gauge_distance(const ConvexBody& a, const ConvexBody& b, const Vec& c,
                      const ProjectionCfg& cfg = {});

// The A-relative projection of c onto B: the point b(c) of (c - rho A) ∩ B,
// with a(c) = c - b(c). `unique` is false when A is not strictly convex.
struct RelativeProjection {
  Vec b;
  Vec a;
  double rho = 0.0;
  bool unique = true;
};
RelativeProjection a_relative_projection(const ConvexBody& a, const ConvexBody& b,
                                         const Vec& c, const ProjectionCfg& cfg = {});

}  // namespace uconvex
