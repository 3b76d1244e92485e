#include "uconvex/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "uconvex/errors.hpp"
#include "uconvex/numerics.hpp"

namespace uconvex {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

LinearSurjection::LinearSurjection(Matrix m, int n1) : matrix(std::move(m)), split(n1) {
  if (split <= 0 || split >= matrix.cols)
    throw LoadError("split must cut the domain into two nonempty factors");
  NullSpace ns = null_space(matrix);
  if (ns.rank < matrix.rows)
    throw NotSurjective("matrix rank below the target dimension");
  kernel = std::move(ns.basis);
}

AffineSubspace LinearSurjection::preimage(const Vec& f) const {
  if (static_cast<int>(f.size()) != matrix.rows)
    throw DimensionMismatch("preimage: target dimension");
  Vec w0 = min_norm_solution(matrix, f);
  return AffineSubspace(std::move(w0), kernel);
}

SplitSelection split_sum(const BodyPtr& A, const BodyPtr& B, const Vec& c,
                         const ProjectionCfg& cfg) {
  if (!(A->space() == B->space()))
    throw DimensionMismatch("split_sum: bodies in different spaces");
  if (!A->space().solver_euclidean())
    throw NonEuclideanNorm("split_sum solver needs Euclidean ambient");
  if (!all_finite(c)) throw NonFiniteInput("split_sum: c");

  // feasibility: c in A + B within tolerance
  SupportFn sum_oracle = [&](const Vec& u) {
    return add(A->support_point(u).point, B->support_point(u).point);
  };
  Vec sum_start = add(A->interior_point(), B->interior_point());
  SolveCfg feas_cfg{1e-16, 60000};
  if (!cg_contains(sum_oracle, sum_start, c, cfg.membership_tol, feas_cfg))
    throw InfeasiblePoint("c lies outside A + B beyond tolerance");

  // H(c) = (c - B) ∩ A; a(c) = nearest point of H(c) to the origin
  BodyPtr reflected = translate(scale_body(B, -1.0), c);
  Vec origin = zeros(A->dim());
  ProjectionResult pr =
      project_intersection_multi({A.get(), reflected.get()}, nullptr, origin, cfg);

  SplitSelection s;
  s.a = pr.point;
  s.b = sub(c, s.a);
  s.method = pr.method;
  s.iterations = pr.iterations;
  s.membership_defect_a = body_distance(*A, s.a, cfg);
  s.membership_defect_b = body_distance(*B, s.b, cfg);
  s.reconstruction_defect = 0.0;  // b := c - a
  s.unique = A->strictly_convex();
  return s;
}

Json split_selection_to_json(const SplitSelection& s) {
  Json j;
  j["a"] = s.a;
  j["b"] = s.b;
  j["certificates"] = Json{{"membership_defect_a", s.membership_defect_a},
                           {"membership_defect_b", s.membership_defect_b},
                           {"reconstruction_defect", s.reconstruction_defect}};
  j["unique"] = s.unique;
  j["iterations"] = s.iterations;
  j["method"] = s.method;
  return j;
}

Vec steiner_point(const ConvexBody& k, const SamplingCfg& cfg) {
  if (!k.space().solver_euclidean() || k.space().is_product())
    throw NonEuclideanNorm("steiner point requires a Euclidean ambient");
  const int n = k.dim();
  int count = n == 2 ? cfg.directions_2d : cfg.directions_nd;
  auto dirs = sphere_grid(n, 2.0, count);
  std::vector<double> vals(dirs.size());
  k.support_batch(dirs, vals);
  // s(K) = Q^{-1} mean(u h(u)) with Q = mean(u u^T): exact on singletons for
  // any direction set.
  Matrix q(n, n);
  Vec rhs = zeros(n);
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const Vec& u = dirs[i];
    for (int r = 0; r < n; ++r) {
      rhs[r] += u[r] * vals[i];
      for (int col = 0; col < n; ++col) q.at(r, col) += u[r] * u[col];
    }
  }
  double inv_m = 1.0 / static_cast<double>(dirs.size());
  for (auto& v : q.a) v *= inv_m;
  for (auto& v : rhs) v *= inv_m;
  return solve_square(std::move(q), std::move(rhs));
}

double steiner_lipschitz_constant(int n) {
  if (n < 1) throw OutOfRange("dimension must be >= 1");
  return 2.0 / std::sqrt(kPi) *
         std::exp(std::lgamma(n / 2.0 + 1.0) - std::lgamma((n + 1) / 2.0));
}

namespace {

double component_ratio(const std::vector<Vec>& kernel, int split, double p1,
                       double p2, std::span<const double> alpha) {
  const int dim = static_cast<int>(kernel[0].size());
  Vec w(dim, 0.0);
  for (std::size_t i = 0; i < kernel.size(); ++i) axpy(alpha[i], kernel[i], w);
  Vec u = slice(w, 0, split);
  Vec v = slice(w, split, dim - split);
  double nu = lp_norm(u, p1), nv = lp_norm(v, p2);
  double mx = std::max(nu, nv);
  if (mx < 1e-15) return kInf;  // zero direction, skip
  return std::min(nu, nv) / mx;
}

}  // namespace

double parallelism_constant(const std::vector<Vec>& kernel, int split,
                            double p1, double p2) {
  const std::size_t k = kernel.size();
  if (k == 0) return kInf;  // trivial kernel: condition vacuous
  if (k == 1) {
    double a[1] = {1.0};
    return component_ratio(kernel, split, p1, p2, a);
  }
  if (k == 2) {
    auto ratio = [&](double t) {
      double a[2] = {std::cos(t), std::sin(t)};
      return component_ratio(kernel, split, p1, p2, a);
    };
    const int grid = 1440;
    double best = kInf;
    int best_i = 0;
    for (int i = 0; i < grid; ++i) {
      double r = ratio(kPi * i / grid);
      if (r < best) {
        best = r;
        best_i = i;
      }
    }
    double step = kPi / grid;
    double t = golden_min(ratio, step * (best_i - 1), step * (best_i + 1), 60);
    return std::min(best, ratio(t));
  }
  // multistart pattern search on the alpha sphere
  auto ratio = [&](const Vec& a) {
    return component_ratio(kernel, split, p1, p2, a);
  };
  auto starts = sphere_grid(static_cast<int>(k), 2.0, 4096);
  double best = kInf;
  Vec best_a;
  for (const auto& a : starts) {
    double r = ratio(a);
    if (r < best) {
      best = r;
      best_a = a;
    }
  }
  double step = 0.2;
  while (step > 1e-9 && !best_a.empty()) {
    bool improved = false;
    for (std::size_t i = 0; i < k; ++i) {
      for (double sgn : {1.0, -1.0}) {
        Vec a = best_a;
        a[i] += sgn * step;
        double n = norm2(a);
        for (double& x : a) x /= n;
        double r = ratio(a);
        if (r < best) {
          best = r;
          best_a = a;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

double parallelism_constant(const LinearSurjection& l) {
  double p1 = 2.0, p2 = 2.0;
  return parallelism_constant(l.kernel, l.split, p1, p2);
}

SplitSelection split_kernel(const BodyPtr& f1_body, const BodyPtr& f2_body,
                            const LinearSurjection& l, const Vec& f,
                            const ProjectionCfg& cfg) {
  if (f1_body->dim() != l.split || f2_body->dim() != l.domain_dim() - l.split)
    throw DimensionMismatch("split_kernel: factor dimensions disagree with L");
  double c_const = parallelism_constant(l);
  if (!(c_const > 1e-12))
    throw KernelParallel("kernel is parallel to a factor (C = 0)");

  AffineSubspace pre = l.preimage(f);
  Vec origin = zeros(l.domain_dim());
  // w(t): metric projection of zero onto L^{-1}(f) -- the basepoint of `pre`
  // is already the minimum-norm solution; kept explicit for clarity.
  ProjectionResult w = project_affine(pre, origin);

  BodyPtr product = make_product(f1_body, f2_body);
  AffineSubspace h_plane(w.point, l.kernel);
  ProjectionResult pr = project_intersection_multi({product.get()}, &h_plane,
                                                   origin, cfg);

  SplitSelection s;
  s.a = slice(pr.point, 0, l.split);
  s.b = slice(pr.point, l.split, l.domain_dim() - l.split);
  s.membership_defect_a = body_distance(*f1_body, s.a, cfg);
  s.membership_defect_b = body_distance(*f2_body, s.b, cfg);
  Vec lf = l.apply(pr.point);
  s.reconstruction_defect = lp_dist(lf, f, 2.0);
  s.unique = f1_body->strictly_convex() && f2_body->strictly_convex();
  s.iterations = pr.iterations;
  s.method = pr.method;
  return s;
}

}  // namespace uconvex
