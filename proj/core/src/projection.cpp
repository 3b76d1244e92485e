#include "uconvex/projection.hpp"

#include <algorithm>
#include <cmath>

#include "uconvex/errors.hpp"
#include "uconvex/linalg.hpp"

namespace uconvex {

AffineSubspace::AffineSubspace(Vec base, std::vector<Vec> raw_basis)
    : basepoint(std::move(base)) {
  for (const auto& v : raw_basis)
    if (v.size() != basepoint.size())
      throw DimensionMismatch("affine basis dimension");
  basis = orthonormalize(raw_basis);
}

Vec AffineSubspace::project(const Vec& x) const {
  Vec r = basepoint;
  Vec d = sub(x, basepoint);
  for (const auto& b : basis) axpy(dot(b, d), b, r);
  return r;
}

double AffineSubspace::distance(const Vec& x) const {
  return norm2(sub(x, project(x)));
}

ProjectionResult project_affine(const AffineSubspace& s, const Vec& x) {
  if (static_cast<int>(x.size()) != s.ambient_dim())
    throw DimensionMismatch("project_affine: dimension");
  ProjectionResult r;
  r.point = s.project(x);
  r.distance = norm2(sub(x, r.point));
  r.method = "closed_form";
  return r;
}

namespace {

void require_euclidean_solver(const ConvexBody& a) {
  if (!a.space().solver_euclidean())
    throw NonEuclideanNorm("projection solvers require Euclidean factors");
}

SupportFn body_support(const ConvexBody& a) {
  return [&a](const Vec& u) { return a.support_point(u).point; };
}

Vec cg_start(const ConvexBody& a, const Vec& x) {
  Vec ip = a.interior_point();
  Vec d = sub(x, ip);
  if (norm2(d) > 1e-12) return a.support_point(d).point;
  return ip;
}

}  // namespace

ProjectionResult project_body(const ConvexBody& a, const Vec& x,
                              const ProjectionCfg& cfg) {
  require_euclidean_solver(a);
  if (static_cast<int>(x.size()) != a.dim())
    throw DimensionMismatch("project_body: dimension");
  ProjectionResult r;
  if (auto cf = a.project_closed_form(x)) {
    r.point = std::move(*cf);
    r.distance = norm2(sub(x, r.point));
    r.method = "closed_form";
    return r;
  }
  if (auto* prod = dynamic_cast<const ProductBody*>(&a)) {
    // separable in the Euclidean product metric
    ProjectionResult out;
    out.method = "product";
    Vec point;
    std::size_t off = 0;
    for (const auto& part : prod->parts()) {
      Vec xi = slice(x, off, part->dim());
      ProjectionResult pr = project_body(*part, xi, cfg);
      point.insert(point.end(), pr.point.begin(), pr.point.end());
      out.iterations += pr.iterations;
      out.converged = out.converged && pr.converged;
      off += part->dim();
    }
    out.point = std::move(point);
    out.distance = norm2(sub(x, out.point));
    return out;
  }
  if (auto* inter = dynamic_cast<const IntersectionBody*>(&a)) {
    if (!inter->degenerate_segment()) {
      std::vector<const ConvexBody*> parts;
      for (const auto& p : inter->parts()) parts.push_back(p.get());
      return project_intersection_multi(parts, nullptr, x, cfg);
    }
  }
  if (a.contains(x, 0.0)) {
    r.point = x;
    r.distance = 0.0;
    r.method = "inside";
    return r;
  }
  SolveCfg scfg{cfg.tol, cfg.max_iters};
  CgResult cg = cg_project(body_support(a), cg_start(a, x), x, scfg);
  r.point = std::move(cg.point);
  r.distance = cg.distance;
  r.iterations = cg.iterations;
  r.converged = cg.converged;
  r.method = "cg";
  return r;
}

double body_distance(const ConvexBody& a, const Vec& x, const ProjectionCfg& cfg) {
  return project_body(a, x, cfg).distance;
}

ProjectionResult project_intersection_multi(const std::vector<const ConvexBody*>& bodies,
                                            const AffineSubspace* s, const Vec& x,
                                            const ProjectionCfg& cfg) {
  for (auto* b : bodies) require_euclidean_solver(*b);
  ProjectionCfg inner = cfg;
  inner.tol = std::min(cfg.tol * 1e-2, 1e-10);

  std::vector<ProjectFn> projectors;
  std::vector<DistanceFn> distances;
  for (auto* b : bodies) {
    projectors.push_back(
        [b, inner](const Vec& y) { return project_body(*b, y, inner).point; });
    distances.push_back(
        [b, inner](const Vec& y) { return project_body(*b, y, inner).distance; });
  }
  if (s) {
    projectors.push_back([s](const Vec& y) { return s->project(y); });
    distances.push_back([s](const Vec& y) { return s->distance(y); });
  }

  SolveCfg scfg{cfg.tol, cfg.max_iters};
  DykstraResult dy = dykstra_project(projectors, distances, x, scfg);
  ProjectionResult r;
  if (dy.converged) {
    r.point = std::move(dy.point);
    r.distance = norm2(sub(x, r.point));
    r.iterations = dy.iterations;
    r.converged = true;
    r.feasibility_defect = dy.max_defect;
    r.method = "dykstra";
    return r;
  }

  // Tangential geometry: switch to strongly convex penalty continuation.
  std::vector<ProjectFn> body_projectors(projectors.begin(),
                                         projectors.end() - (s ? 1 : 0));
  std::vector<DistanceFn> body_distances(distances.begin(),
                                         distances.end() - (s ? 1 : 0));
  PenaltyResult pen = penalty_project(
      x, body_projectors, body_distances, s ? s->basepoint : Vec{},
      s ? s->basis : std::vector<Vec>{}, s != nullptr, scfg, cfg.penalty_lambda_max);
  if (!pen.converged)
    throw EmptyIntersectionSuspected(
        "intersection projection: feasibility defect stalled at " +
        format_double(std::max(pen.max_defect, dy.max_defect)));
  r.point = std::move(pen.point);
  r.distance = norm2(sub(x, r.point));
  r.iterations = dy.iterations + pen.iterations;
  r.converged = true;
  r.feasibility_defect = pen.max_defect;
  r.method = "dykstra+penalty";
  return r;
}

ProjectionResult project_intersection(const ConvexBody& a, const AffineSubspace& s,
                                      const Vec& x, const ProjectionCfg& cfg) {
  return project_intersection_multi({&a}, &s, x, cfg);
}

ProjectionResult project_intersection(const ConvexBody& a, const ConvexBody& b,
                                      const Vec& x, const ProjectionCfg& cfg) {
  return project_intersection_multi({&a, &b}, nullptr, x, cfg);
}

// ---------------------------------------------------------------------------
// gauge distance and the A-relative projection
// ---------------------------------------------------------------------------

namespace {

// distance from c to B + tA via conditional gradient on the summed oracle
double sum_distance(const ConvexBody& a, const ConvexBody& b, double t,
                    const Vec& c, const ProjectionCfg& cfg) {
  SupportFn oracle = [&a, &b, t](const Vec& u) {
    Vec pa = a.support_point(u).point;
    Vec pb = b.support_point(u).point;
    Vec y = pb;
    axpy(t, pa, y);
    return y;
  };
  Vec start = add(b.interior_point(), scaled(a.interior_point(), t));
  SolveCfg scfg{1e-14, std::max(40000, cfg.max_iters)};
  return cg_project(oracle, start, c, scfg).distance;
}

}  // namespace

double gauge_distance(const ConvexBody& a, const ConvexBody& b, const Vec& c,
                      const ProjectionCfg& cfg) {
  require_euclidean_solver(a);
  Vec origin = zeros(a.dim());
  if (!a.contains(origin, 0.0))
    throw OriginNotInterior("gauge distance requires 0 in the interior of A");
  const double feas_tol = 1e-9;
  auto feasible = [&](double t) { return sum_distance(a, b, t, c, cfg) <= feas_tol; };
  if (feasible(0.0)) return 0.0;
  double hi = 1.0;
  int guard = 0;
  while (!feasible(hi)) {
    hi *= 2.0;
    if (++guard > 24) throw GaugeUnbounded("c not reachable: B + tA misses c");
  }
  double lo = hi > 1.0 ? hi / 2.0 : 0.0;
  for (int i = 0; i < 64 && hi - lo > cfg.tol * 0.5; ++i) {
    double mid = 0.5 * (lo + hi);
    if (feasible(mid))
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

RelativeProjection a_relative_projection(const ConvexBody& a, const ConvexBody& b,
                                         const Vec& c, const ProjectionCfg& cfg) {
  require_euclidean_solver(a);
  RelativeProjection out;
  out.unique = a.strictly_convex();
  out.rho = gauge_distance(a, b, c, cfg);
  if (out.rho <= cfg.tol) {
    out.b = project_body(b, c, cfg).point;
    out.a = sub(c, out.b);
    out.rho = 0.0;
    return out;
  }
  // Back off the gauge slightly: c is then strictly outside B + tA and the
  // nearest boundary point decomposes as b* + t a* with a* the (unique for
  // strictly convex A) support point at the outward normal.
  double t = out.rho * (1.0 - 1e-7) - 1e-12;
  SupportFn oracle = [&a, &b, t](const Vec& u) {
    Vec pa = a.support_point(u).point;
    Vec pb = b.support_point(u).point;
    Vec y = pb;
    axpy(t, pa, y);
    return y;
  };
  Vec start = add(b.interior_point(), scaled(a.interior_point(), t));
  SolveCfg scfg{1e-16, 200000};
  CgResult z = cg_project(oracle, start, c, scfg);
  Vec normal = sub(c, z.point);
  if (norm2(normal) < 1e-13) {
    // numerically on the boundary already; fall back to the sum support
    normal = sub(c, b.interior_point());
  }
  SupportPoint pa = a.support_point(normal);
  out.unique = out.unique && pa.unique;
  Vec bstar = z.point;
  axpy(-t, pa.point, bstar);
  // polish into B
  out.b = project_body(b, bstar, cfg).point;
  out.a = sub(c, out.b);
  return out;
}

}  // namespace uconvex
