#pragma once

#include <vector>

#include "uconvex/norm.hpp"

namespace uconvex {

// Reproducible direction sets. 2D uses uniform angular grids; higher
// dimensions use a deterministic Halton-Gaussian set.
struct SamplingCfg {
  int directions_2d = 4096;
  int directions_nd = 1 << 14;
  int boundary_points = 1024;  // boundary grid resolution for scans
  int depth_dirs = 256;        // ray directions for depth()
  bool refine = true;          // golden-section polish of grid extrema
  double bisect_tol = 1e-10;   // spatial tolerance of boundary bisection
  int threads = 1;
};

// Unit vectors of the lp sphere (p = infinity allowed), angle-ordered in 2D.
std::vector<Vec> sphere_grid(int dim, double p, int count);

// Unit vectors of the dual sphere of `space` (the directions over which
// support functions are compared).
std::vector<Vec> dual_sphere_grid(const Space& space, int count);

// Unit vectors of the primal sphere of `space` (ray directions).
std::vector<Vec> primal_sphere_grid(const Space& space, int count);

// Halton sequence point (bases 2,3,5,...) for deterministic nD sampling.
double halton(std::size_t index, int base);

}  // namespace uconvex
