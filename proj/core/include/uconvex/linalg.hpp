#pragma once

#include <vector>

#include "uconvex/common.hpp"

namespace uconvex {

// Row-major dense matrix, desk scale (n <= 64).
struct Matrix {
  int rows = 0, cols = 0;
  std::vector<double> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}
  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

Vec mat_vec(const Matrix& m, std::span<const double> x);
Vec mat_t_vec(const Matrix& m, std::span<const double> x);  // m^T x

// Modified Gram-Schmidt; drops vectors below `tol`. Returns an orthonormal
// basis of span(rows).
std::vector<Vec> orthonormalize(const std::vector<Vec>& rows, double tol = 1e-12);

// Orthonormal basis of the null space of m, and the numerical rank.
struct NullSpace {
  std::vector<Vec> basis;
  int rank;
};
NullSpace null_space(const Matrix& m, double tol = 1e-10);

// Minimum-norm solution of m x = b for full-row-rank m (m m^T solve by
// Gaussian elimination with partial pivoting).
Vec min_norm_solution(const Matrix& m, std::span<const double> b);

// Solve the square system a x = b in place; throws on singularity.
Vec solve_square(Matrix a, Vec b);

}  // namespace uconvex
