#include "uconvex/sampling.hpp"

#include <cmath>
#include <numbers>

#include "uconvex/errors.hpp"

namespace uconvex {

double halton(std::size_t index, int base) {
  double f = 1.0, r = 0.0;
  std::size_t i = index;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

namespace {

constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31,
                           37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79};

// Acklam's inverse normal CDF approximation; deterministic and portable.
double inv_normal_cdf(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1 - plow;
  double q, r;
  if (p < plow) {
    q = std::sqrt(-2 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  if (p > phigh) {
    q = std::sqrt(-2 * std::log(1 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  q = p - 0.5;
  r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

std::vector<Vec> halton_gauss_sphere(int dim, double p, int count) {
  std::vector<Vec> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    Vec v(dim);
    bool ok = true;
    for (int j = 0; j < dim; ++j) {
      double u = halton(static_cast<std::size_t>(k) + 1, kPrimes[j % 22]);
      u = std::min(std::max(u, 1e-12), 1.0 - 1e-12);
      v[j] = inv_normal_cdf(u);
      if (!std::isfinite(v[j])) ok = false;
    }
    double n = lp_norm(v, p);
    if (!ok || n < 1e-12) continue;
    for (double& x : v) x /= n;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

std::vector<Vec> sphere_grid(int dim, double p, int count) {
  if (dim == 1) return {{1.0}, {-1.0}};
  if (dim == 2) {
    std::vector<Vec> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k) {
      double a = 2.0 * std::numbers::pi * k / count;
      Vec v{std::cos(a), std::sin(a)};
      double n = lp_norm(v, p);
      out.push_back({v[0] / n, v[1] / n});
    }
    return out;
  }
  return halton_gauss_sphere(dim, p, count);
}

std::vector<Vec> dual_sphere_grid(const Space& space, int count) {
  if (!space.is_product())
    return sphere_grid(space.dim(), dual_exponent(space.p()), count);
  // Dual of a max-product is the sum-norm: sample convex weights over the
  // factor dual spheres.
  const auto& fs = space.factors();
  int per = std::max(8, static_cast<int>(std::sqrt(static_cast<double>(count))));
  int weights = std::max(3, count / (per * per));
  std::vector<std::vector<Vec>> factor_dirs;
  for (const auto& f : fs)
    factor_dirs.push_back(sphere_grid(f.dim, dual_exponent(f.p), per));
  if (fs.size() != 2)
    throw NumericError("dual sampling implemented for two-factor products");
  const std::size_t n1 = fs[0].dim, n2 = fs[1].dim;
  std::vector<Vec> out;
  for (int w = 0; w <= weights; ++w) {
    double lam = static_cast<double>(w) / weights;
    if (lam == 0.0) {
      for (const auto& u2 : factor_dirs[1]) out.push_back(concat(zeros(n1), u2));
    } else if (lam == 1.0) {
      for (const auto& u1 : factor_dirs[0]) out.push_back(concat(u1, zeros(n2)));
    } else {
      for (const auto& u1 : factor_dirs[0])
        for (const auto& u2 : factor_dirs[1])
          out.push_back(concat(scaled(u1, lam), scaled(u2, 1.0 - lam)));
    }
  }
  return out;
}

std::vector<Vec> primal_sphere_grid(const Space& space, int count) {
  if (!space.is_product()) return sphere_grid(space.dim(), space.p(), count);
  // Max-norm sphere: normalize Euclidean-ish rays by the product norm.
  auto raw = space.dim() <= 2 ? sphere_grid(space.dim(), 2.0, count)
                              : halton_gauss_sphere(space.dim(), 2.0, count);
  for (auto& v : raw) {
    double n = space.norm(v);
    for (double& x : v) x /= n;
  }
  return raw;
}

}  // namespace uconvex
