#pragma once

#include "uconvex/bodies.hpp"

namespace uconvex {

// Largest t with from + t*dir in the body (membership bisection); `from` must
// be inside.
double ray_distance(const ConvexBody& body, const Vec& from, const Vec& dir,
                    double tol = 1e-11);

// Point of the boundary hit by the ray from `interior_point()` (or `from`)
// along `direction`.
Vec boundary_point(const ConvexBody& body, const Vec& direction, double tol = 1e-11);
Vec boundary_point_from(const ConvexBody& body, const Vec& from,
                        const Vec& direction, double tol = 1e-11);

// Hausdorff distance via support sampling over the dual sphere, golden-
// refined around the grid maxima in the plane. Exact for segment pairs.
double hausdorff_distance(const ConvexBody& a, const ConvexBody& b,
                          const SamplingCfg& cfg = {});

// Exact Hausdorff distance between two Euclidean segments.
double hausdorff_segments(const Segment& a, const Segment& b);

// Conservative bound on the sampling error of hausdorff_distance for the
// given configuration (reported alongside experiment margins).
double hausdorff_sampling_tolerance(const ConvexBody& a, const ConvexBody& b,
                                    const SamplingCfg& cfg = {});

// sup of s(u,A)+s(-u,A) over the dual sphere; vertex-exact for polytopes and
// segments.
double diameter(const ConvexBody& body, const SamplingCfg& cfg = {});

}  // namespace uconvex
