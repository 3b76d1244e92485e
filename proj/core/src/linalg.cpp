#include "uconvex/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "uconvex/errors.hpp"

namespace uconvex {

Vec mat_vec(const Matrix& m, std::span<const double> x) {
  Vec y(m.rows, 0.0);
  for (int i = 0; i < m.rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < m.cols; ++j) s += m.at(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Vec mat_t_vec(const Matrix& m, std::span<const double> x) {
  Vec y(m.cols, 0.0);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) y[j] += m.at(i, j) * x[i];
  return y;
}

std::vector<Vec> orthonormalize(const std::vector<Vec>& rows, double tol) {
  std::vector<Vec> basis;
  for (const auto& r : rows) {
    Vec v = r;
    for (int pass = 0; pass < 2; ++pass)  // two MGS passes for accuracy
      for (const auto& b : basis) axpy(-dot(b, v), b, v);
    double n = norm2(v);
    if (n > tol) {
      for (double& x : v) x /= n;
      basis.push_back(std::move(v));
    }
  }
  return basis;
}

NullSpace null_space(const Matrix& m, double tol) {
  // Orthonormalize the row space, then complete to a full basis; the
  // complement is the null space.
  std::vector<Vec> rows;
  rows.reserve(m.rows);
  for (int i = 0; i < m.rows; ++i) {
    Vec r(m.cols);
    for (int j = 0; j < m.cols; ++j) r[j] = m.at(i, j);
    rows.push_back(std::move(r));
  }
  // Scale tolerance by the largest row norm.
  double scale = 0.0;
  for (const auto& r : rows) scale = std::max(scale, norm2(r));
  std::vector<Vec> row_basis = orthonormalize(rows, tol * std::max(1.0, scale));
  int rank = static_cast<int>(row_basis.size());

  std::vector<Vec> kernel;
  for (int j = 0; j < m.cols; ++j) {
    Vec e(m.cols, 0.0);
    e[j] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : row_basis) axpy(-dot(b, e), b, e);
      for (const auto& b : kernel) axpy(-dot(b, e), b, e);
    }
    double n = norm2(e);
    if (n > 1e-9) {
      for (double& x : e) x /= n;
      kernel.push_back(std::move(e));
    }
  }
  return {kernel, rank};
}

Vec solve_square(Matrix a, Vec b) {
  const int n = a.rows;
  if (a.cols != n || static_cast<int>(b.size()) != n)
    throw DimensionMismatch("solve_square: shape mismatch");
  std::vector<int> piv(n);
  for (int i = 0; i < n; ++i) piv[i] = i;
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a.at(i, k)) > std::abs(a.at(p, k))) p = i;
    if (std::abs(a.at(p, k)) < 1e-14) throw NumericError("singular system");
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(a.at(p, j), a.at(k, j));
      std::swap(b[p], b[k]);
    }
    for (int i = k + 1; i < n; ++i) {
      double f = a.at(i, k) / a.at(k, k);
      a.at(i, k) = 0.0;
      for (int j = k + 1; j < n; ++j) a.at(i, j) -= f * a.at(k, j);
      b[i] -= f * b[k];
    }
  }
  Vec x(n, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a.at(i, j) * x[j];
    x[i] = s / a.at(i, i);
  }
  return x;
}

Vec min_norm_solution(const Matrix& m, std::span<const double> b) {
  // x = m^T (m m^T)^{-1} b
  Matrix g(m.rows, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.rows; ++j) {
      double s = 0.0;
      for (int k = 0; k < m.cols; ++k) s += m.at(i, k) * m.at(j, k);
      g.at(i, j) = s;
    }
  Vec lambda = solve_square(g, Vec(b.begin(), b.end()));
  return mat_t_vec(m, lambda);
}

}  // namespace uconvex
