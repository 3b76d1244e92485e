#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace uconvex {

// Root of a monotone predicate: f(lo)=false, f(hi)=true; returns the crossing
// parameter within tol.
template <class Pred>
double bisect_first_true(Pred&& f, double lo, double hi, double tol,
                         int max_iters = 200) {
  for (int i = 0; i < max_iters && hi - lo > tol; ++i) {
    double mid = 0.5 * (lo + hi);
    if (f(mid))
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

// Golden-section minimum of a unimodal f on [a, b].
template <class F>
double golden_min(F&& f, double a, double b, int iters = 60) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 < f2 ? x1 : x2;
}

template <class F>
double golden_max(F&& f, double a, double b, int iters = 60) {
  return golden_min([&](double x) { return -f(x); }, a, b, iters);
}

// Pool-adjacent-violators: least-squares nondecreasing fit.
inline std::vector<double> pava_nondecreasing(const std::vector<double>& y) {
  const std::size_t n = y.size();
  std::vector<double> level(n), weight(n);
  std::vector<std::size_t> count(n);
  std::size_t m = 0;
  for (std::size_t i = 0; i < n; ++i) {
    level[m] = y[i];
    weight[m] = 1.0;
    count[m] = 1;
    ++m;
    while (m > 1 && level[m - 2] > level[m - 1]) {
      double w = weight[m - 2] + weight[m - 1];
      level[m - 2] = (weight[m - 2] * level[m - 2] + weight[m - 1] * level[m - 1]) / w;
      weight[m - 2] = w;
      count[m - 2] += count[m - 1];
      --m;
    }
  }
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t b = 0; b < m; ++b)
    out.insert(out.end(), count[b], level[b]);
  return out;
}

// Chunked index-parallel loop; results must be written to disjoint slots so
// the outcome is independent of the thread count.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

// Least-squares line fit y = a + b x; returns {a, b}.
inline std::pair<double, double> line_fit(const std::vector<double>& x,
                                          const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double denom = n * sxx - sx * sx;
  double b = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
  double a = (sy - b * sx) / static_cast<double>(n);
  return {a, b};
}

}  // namespace uconvex
