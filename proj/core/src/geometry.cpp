#include "uconvex/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "uconvex/errors.hpp"
#include "uconvex/numerics.hpp"

namespace uconvex {

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  int t = std::min<std::size_t>(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (int w = 0; w < t; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += t) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

double ray_distance(const ConvexBody& body, const Vec& from, const Vec& dir,
                    double tol) {
  if (!body.contains(from, 1e-12))
    throw OutsidePoint("ray start is not inside the body");
  double dn = body.space().norm(dir);
  if (dn == 0.0) throw NonFiniteInput("ray direction is zero");
  double hi = (body.outer_radius() +
               body.space().dist(from, body.interior_point()) + 1e-9) / dn;
  Vec y(from.size());
  auto outside = [&](double t) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = from[i] + t * dir[i];
    return !body.contains(y, 0.0);
  };
  int guard = 0;
  while (!outside(hi)) {
    hi *= 2.0;
    if (++guard > 60) throw NoBoundary("body appears unbounded along the ray");
  }
  double lo = 0.0;
  const double step = tol / dn;
  for (int i = 0; i < 200 && hi - lo > step; ++i) {
    double mid = 0.5 * (lo + hi);
    if (outside(mid))
      hi = mid;
    else
      lo = mid;
  }
  return lo;  // certified inside end of the bracket
}

Vec boundary_point_from(const ConvexBody& body, const Vec& from,
                        const Vec& direction, double tol) {
  double t = ray_distance(body, from, direction, tol);
  Vec y = from;
  axpy(t, direction, y);
  return y;
}

Vec boundary_point(const ConvexBody& body, const Vec& direction, double tol) {
  return boundary_point_from(body, body.interior_point(), direction, tol);
}

double hausdorff_segments(const Segment& a, const Segment& b) {
  auto dist_to = [](const Vec& x, const Segment& s) {
    Vec d = sub(s.b(), s.a());
    double dd = dot(d, d);
    double t = dd > 0 ? std::clamp(dot(sub(x, s.a()), d) / dd, 0.0, 1.0) : 0.0;
    Vec p = s.a();
    axpy(t, d, p);
    return norm2(sub(x, p));
  };
  // sup over a convex set of a convex function sits at the endpoints
  double h = dist_to(a.a(), b);
  h = std::max(h, dist_to(a.b(), b));
  h = std::max(h, dist_to(b.a(), a));
  h = std::max(h, dist_to(b.b(), a));
  return h;
}

namespace {

constexpr double kPi = std::numbers::pi;

// Indices of local maxima (plus the global one) of a cyclic sequence.
std::vector<int> top_local_maxima(const std::vector<double>& v, int keep) {
  const int n = static_cast<int>(v.size());
  std::vector<int> locals;
  for (int i = 0; i < n; ++i) {
    double prev = v[(i + n - 1) % n], next = v[(i + 1) % n];
    if (v[i] >= prev && v[i] >= next) locals.push_back(i);
  }
  std::sort(locals.begin(), locals.end(),
            [&](int i, int j) { return v[i] > v[j]; });
  if (static_cast<int>(locals.size()) > keep) locals.resize(keep);
  return locals;
}

const Segment* as_segment(const ConvexBody& b) {
  if (auto* s = dynamic_cast<const Segment*>(&b)) return s;
  if (auto* ib = dynamic_cast<const IntersectionBody*>(&b))
    if (ib->degenerate_segment()) return ib->clipped();
  return nullptr;
}

}  // namespace

double hausdorff_distance(const ConvexBody& a, const ConvexBody& b,
                          const SamplingCfg& cfg) {
  if (a.dim() != b.dim() || !(a.space() == b.space()))
    throw DimensionMismatch("hausdorff: bodies live in different spaces");
  const Space& sp = a.space();
  if (sp.solver_euclidean() && !sp.is_product()) {
    const Segment* sa = as_segment(a);
    const Segment* sb = as_segment(b);
    if (sa && sb) return hausdorff_segments(*sa, *sb);
  }
  int count = a.dim() == 2 && !sp.is_product() ? cfg.directions_2d : cfg.directions_nd;
  auto dirs = dual_sphere_grid(sp, count);
  std::vector<double> va(dirs.size()), vb(dirs.size());
  a.support_batch(dirs, va);
  b.support_batch(dirs, vb);
  std::vector<double> diff(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) diff[i] = std::abs(va[i] - vb[i]);
  double best = *std::max_element(diff.begin(), diff.end());
  if (a.dim() == 2 && !sp.is_product() && cfg.refine) {
    double q = dual_exponent(sp.p());
    auto val = [&](double theta) {
      Vec u{std::cos(theta), std::sin(theta)};
      double n = lp_norm(u, q);
      u[0] /= n;
      u[1] /= n;
      return std::abs(a.support_value(u) - b.support_value(u));
    };
    double step = 2.0 * kPi / count;
    for (int idx : top_local_maxima(diff, 6)) {
      double t = golden_max(val, step * (idx - 1), step * (idx + 1), 40);
      best = std::max(best, val(t));
    }
  }
  return best;
}

double hausdorff_sampling_tolerance(const ConvexBody& a, const ConvexBody& b,
                                    const SamplingCfg& cfg) {
  int count = a.dim() == 2 && !a.space().is_product() ? cfg.directions_2d
                                                      : cfg.directions_nd;
  double r = a.outer_radius() + b.outer_radius();
  double step = 2.0 * kPi / count;
  double grid_err = r * step * step / 8.0;
  // scan-backed supports carry the boundary polyline resolution as well
  double scan_err = 0.0;
  auto scan_like = [](const ConvexBody& x) {
    return dynamic_cast<const IntersectionBody*>(&x) != nullptr ||
           dynamic_cast<const AffineSliceBody*>(&x) != nullptr;
  };
  if (scan_like(a) || scan_like(b)) {
    double bstep = 2.0 * kPi / 1024.0;
    scan_err = r * bstep * bstep / 8.0;
  }
  return std::max(1e-6, 10.0 * (grid_err + scan_err) + 1e-9);
}

double diameter(const ConvexBody& body, const SamplingCfg& cfg) {
  if (auto* p = dynamic_cast<const Polytope*>(&body)) return p->exact_diameter();
  if (auto* s = dynamic_cast<const Segment*>(&body))
    return body.space().dist(s->a(), s->b());
  const Space& sp = body.space();
  int count = body.dim() == 2 && !sp.is_product() ? cfg.directions_2d
                                                  : cfg.directions_nd;
  auto dirs = dual_sphere_grid(sp, count);
  std::vector<double> v(dirs.size());
  body.support_batch(dirs, v);
  std::vector<Vec> neg(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) neg[i] = negated(dirs[i]);
  std::vector<double> vneg(dirs.size());
  body.support_batch(neg, vneg);
  std::vector<double> width(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) width[i] = v[i] + vneg[i];
  double best = *std::max_element(width.begin(), width.end());
  if (body.dim() == 2 && !sp.is_product() && cfg.refine) {
    double q = dual_exponent(sp.p());
    auto val = [&](double theta) {
      Vec u{std::cos(theta), std::sin(theta)};
      double n = lp_norm(u, q);
      u[0] /= n;
      u[1] /= n;
      return body.support_value(u) + body.support_value(negated(u));
    };
    double step = 2.0 * kPi / count;
    for (int idx : top_local_maxima(width, 6)) {
      double t = golden_max(val, step * (idx - 1), step * (idx + 1), 40);
      best = std::max(best, val(t));
    }
  }
  return best;
}

}  // namespace uconvex
