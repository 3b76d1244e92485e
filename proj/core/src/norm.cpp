#include "uconvex/norm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "uconvex/errors.hpp"

namespace uconvex {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double dual_exponent(double p) {
  if (p <= 1.0) return kInfExponent;
  if (p == kInfExponent) return 1.0;
  return p / (p - 1.0);
}

double lp_norm(std::span<const double> x, double p) {
  if (p == kInfExponent) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
  }
  if (p == 2.0) return norm2(x);
  if (p == 1.0) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
  }
  // Scale out the max for stability.
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v) / m, p);
  return m * std::pow(s, 1.0 / p);
}

double lp_dist(std::span<const double> a, std::span<const double> b, double p) {
  const std::size_t n = a.size();
  if (p == 2.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double d = a[i] - b[i];
      s += d * d;
    }
    return std::sqrt(s);
  }
  if (p == kInfExponent) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
  }
  if (p == 1.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::abs(a[i] - b[i]);
    return s;
  }
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::pow(std::abs(a[i] - b[i]) / m, p);
  return m * std::pow(s, 1.0 / p);
}

Vec lp_norming_functional(std::span<const double> x, double p) {
  const std::size_t n = x.size();
  Vec u(n, 0.0);
  double nx = lp_norm(x, p);
  if (nx == 0.0) throw NumericError("norming functional of zero vector");
  if (p == kInfExponent) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(x[i]) > std::abs(x[best])) best = i;
    u[best] = x[best] >= 0 ? 1.0 : -1.0;
    return u;
  }
  if (p == 1.0) {
    for (std::size_t i = 0; i < n; ++i) u[i] = x[i] > 0 ? 1.0 : (x[i] < 0 ? -1.0 : 0.0);
    return u;
  }
  // u_i = sign(x_i) |x_i/||x||]^{p-1}; dual norm is then exactly 1.
  for (std::size_t i = 0; i < n; ++i) {
    double t = std::abs(x[i]) / nx;
    double mag = (p == 2.0) ? t : std::pow(t, p - 1.0);
    u[i] = x[i] >= 0 ? mag : -mag;
  }
  return u;
}

LpFacePoint lp_unit_ball_argmax(std::span<const double> u, double p) {
  const std::size_t n = u.size();
  if (p == kInfExponent) {
    // Box: corner sign(u); flat when some u_i == 0 (tie broken toward -1,
    // the lexicographically smallest corner).
    bool unique = true;
    Vec x(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (u[i] == 0.0) {
        unique = false;
        x[i] = -1.0;
      } else {
        x[i] = u[i] > 0 ? 1.0 : -1.0;
      }
    }
    return {x, unique};
  }
  if (p == 1.0) {
    // Cross-polytope: vertex at the largest |u_i|; ties are flat edges.
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(u[i]) > std::abs(u[best])) best = i;
    bool unique = true;
    for (std::size_t i = 0; i < n; ++i)
      if (i != best && std::abs(u[i]) == std::abs(u[best])) unique = false;
    Vec x(n, 0.0);
    // Lexicographic canonical vertex among ties: smallest index with -1
    // preferred on ties of opposite sign never occurs (sign fixed by u).
    std::size_t canon = best;
    for (std::size_t i = 0; i < n; ++i)
      if (std::abs(u[i]) == std::abs(u[best])) {
        canon = i;
        break;
      }
    x[canon] = u[canon] >= 0 ? 1.0 : -1.0;
    return {x, unique};
  }
  double q = dual_exponent(p);
  double nu = lp_norm(u, q);
  if (nu == 0.0) throw NumericError("support direction is zero");
  Vec x(n);
  for (std::size_t i = 0; i < n; ++i) {
    double t = std::abs(u[i]) / nu;
    double mag = (q == 2.0) ? t : std::pow(t, q - 1.0);
    x[i] = u[i] >= 0 ? mag : -mag;
  }
  // ||x||_p = 1 by conjugacy; <u,x> = ||u||_q.
  return {x, true};
}

Space Space::lp(int dim, double p) {
  if (dim < 1) throw LoadError("space dim must be >= 1");
  if (!(p >= 1.0))
    throw LoadError("lp exponent must satisfy p >= 1");
  Space s;
  s.dim_ = dim;
  s.p_ = p;
  s.factors_ = {{dim, p}};
  return s;
}

Space Space::product(const Space& a, const Space& b) {
  Space s;
  s.dim_ = a.dim_ + b.dim_;
  s.p_ = kInfExponent;  // max-combination of factors
  s.factors_ = a.factors_;
  s.factors_.insert(s.factors_.end(), b.factors_.begin(), b.factors_.end());
  return s;
}

double Space::norm(std::span<const double> x) const {
  if (!is_product()) return lp_norm(x, p_);
  double m = 0.0;
  std::size_t off = 0;
  for (const auto& f : factors_) {
    m = std::max(m, lp_norm(x.subspan(off, f.dim), f.p));
    off += f.dim;
  }
  return m;
}

double Space::dual_norm(std::span<const double> u) const {
  if (!is_product()) return lp_norm(u, dual_exponent(p_));
  double s = 0.0;
  std::size_t off = 0;
  for (const auto& f : factors_) {
    s += lp_norm(u.subspan(off, f.dim), dual_exponent(f.p));
    off += f.dim;
  }
  return s;
}

double Space::dist(std::span<const double> a, std::span<const double> b) const {
  return norm(sub(a, b));
}

bool Space::solver_euclidean() const {
  for (const auto& f : factors_)
    if (f.p != 2.0) return false;
  return true;
}

Vec Space::norming_functional(std::span<const double> x) const {
  if (!is_product()) return lp_norming_functional(x, p_);
  // Max-norm product: the norming functional is supported on a factor
  // attaining the max.
  double nx = norm(x);
  if (nx == 0.0) throw NumericError("norming functional of zero vector");
  Vec u(dim(), 0.0);
  std::size_t off = 0;
  for (const auto& f : factors_) {
    auto piece = x.subspan(off, f.dim);
    if (lp_norm(piece, f.p) == nx) {
      Vec fu = lp_norming_functional(piece, f.p);
      std::copy(fu.begin(), fu.end(), u.begin() + off);
      return u;
    }
    off += f.dim;
  }
  throw NumericError("norming functional: no factor attains the max");
}

bool Space::operator==(const Space& o) const {
  if (dim_ != o.dim_ || factors_.size() != o.factors_.size()) return false;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (factors_[i].dim != o.factors_[i].dim || factors_[i].p != o.factors_[i].p)
      return false;
  return true;
}

}  // namespace uconvex
