#include <doctest.h>

#include <cmath>
#include <numbers>

#include "uconvex/errors.hpp"
#include "uconvex/rng.hpp"
#include "uconvex/geometry.hpp"
#include "uconvex/splitting.hpp"

using namespace uconvex;

namespace {

// exterior-angle Steiner oracle for convex polygons: sum of (theta_ext/2pi) v_i
Vec steiner_exterior_angle_oracle(const std::vector<Vec>& ccw) {
  const std::size_t n = ccw.size();
  Vec s{0.0, 0.0};
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec& prev = ccw[(i + n - 1) % n];
    const Vec& cur = ccw[i];
    const Vec& next = ccw[(i + 1) % n];
    double a_in = std::atan2(cur[1] - prev[1], cur[0] - prev[0]);
    double a_out = std::atan2(next[1] - cur[1], next[0] - cur[0]);
    double ext = a_out - a_in;
    while (ext < 0) ext += 2.0 * std::numbers::pi;
    while (ext >= 2.0 * std::numbers::pi) ext -= 2.0 * std::numbers::pi;
    total += ext;
    axpy(ext / (2.0 * std::numbers::pi), cur, s);
  }
  REQUIRE(total == doctest::Approx(2.0 * std::numbers::pi));
  return s;
}

}  // namespace

TEST_SUITE("splitting") {

TEST_CASE("linear surjection kernels") {
  Matrix l(2, 4);
  l.at(0, 0) = 1.0;
  l.at(0, 2) = -1.0;
  l.at(1, 1) = 1.0;
  l.at(1, 3) = -1.0;
  LinearSurjection surj(l, 2);
  CHECK(surj.kernel.size() == 2);
  for (const auto& k : surj.kernel) {
    CHECK(norm2(k) == doctest::Approx(1.0));
    CHECK(norm2(surj.apply(k)) <= 1e-10);
  }
  CHECK(std::abs(dot(surj.kernel[0], surj.kernel[1])) <= 1e-12);

  Matrix bad(2, 4);
  bad.at(0, 0) = 1.0;
  bad.at(1, 0) = 2.0;  // rank 1
  CHECK_THROWS_AS(LinearSurjection(bad, 2), NotSurjective);

  Matrix row(1, 2);
  row.at(0, 0) = 1.0;
  row.at(0, 1) = 1.0;
  LinearSurjection sum_map(row, 1);
  AffineSubspace pre = sum_map.preimage({2.0});
  CHECK(pre.basepoint[0] == doctest::Approx(1.0));  // min-norm solution
  CHECK(pre.basepoint[1] == doctest::Approx(1.0));
}

TEST_CASE("split_sum: tangent balls, origin case, grid oracle") {
  ProjectionCfg cfg;
  auto unit = make_pball({0.0, 0.0}, 1.0, 2.0);

  SplitSelection tangent = split_sum(unit, unit, {2.0, 0.0}, cfg);
  CHECK(norm2(sub(tangent.a, Vec{1.0, 0.0})) <= 1e-5);
  CHECK(norm2(sub(tangent.b, Vec{1.0, 0.0})) <= 1e-5);

  SplitSelection zero = split_sum(unit, unit, {0.0, 0.0}, cfg);
  CHECK(norm2(zero.a) <= 1e-8);
  CHECK(norm2(zero.b) <= 1e-8);

  auto a = make_pball({3.0, 0.0}, 1.0, 2.0);
  auto b = make_polygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
  Vec c{3.5, 0.5};
  SplitSelection s = split_sum(a, b, c, cfg);
  // grid oracle over H(c) = (c - B) ∩ A: minimize ||x||
  Vec best;
  double best_norm = 1e300;
  for (int i = 0; i <= 2400; ++i) {
    for (int j = 0; j <= 2400; ++j) {
      Vec x{2.0 + 2.0 * i / 2400.0, -1.0 + 2.0 * j / 2400.0};
      if (!a->contains(x, 0.0)) continue;
      Vec bx = sub(c, x);
      if (!b->contains(bx, 0.0)) continue;
      if (norm2(x) < best_norm) {
        best_norm = norm2(x);
        best = x;
      }
    }
  }
  CHECK(norm2(sub(s.a, best)) <= 5e-3);
  CHECK_THROWS_AS(split_sum(unit, unit, {5.0, 0.0}, cfg), InfeasiblePoint);
}

TEST_CASE("split_sum invariants over seeded feasible points") {
  ProjectionCfg cfg;
  auto a = make_pball({3.0, 0.0}, 1.0, 2.0);
  auto b = make_polygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
  Rng rng(91);
  for (int k = 0; k < 200; ++k) {
    Vec pa{3.0 + rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7)};
    if (!a->contains(pa, 0.0)) continue;
    Vec pb{rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)};
    Vec c = add(pa, pb);
    SplitSelection s = split_sum(a, b, c, cfg);
    CHECK(s.membership_defect_a <= 1e-6);
    CHECK(s.membership_defect_b <= 1e-6);
    CHECK(norm2(sub(add(s.a, s.b), c)) <= 1e-9);
  }
}

TEST_CASE("split selection serializes with its certificates") {
  ProjectionCfg cfg;
  auto unit = make_pball({0.0, 0.0}, 1.0, 2.0);
  SplitSelection s = split_sum(unit, unit, {1.0, 0.5}, cfg);
  Json j = split_selection_to_json(s);
  CHECK(j.at("a").size() == 2);
  CHECK(j.at("certificates").contains("reconstruction_defect"));
  CHECK(j.at("unique").get<bool>() == true);  // the unit ball is strictly convex
}

TEST_CASE("steiner point: calibration, symmetry, triangle oracle") {
  SamplingCfg cfg;
  auto singleton = make_polytope(Space::lp(2, 2.0), {{0.7, -0.4}});
  Vec s0 = steiner_point(*singleton, cfg);
  CHECK(s0[0] == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(s0[1] == doctest::Approx(-0.4).epsilon(1e-12));

  auto ball = make_pball({1.0, 2.0}, 0.7, 2.0);
  Vec sb = steiner_point(*ball, cfg);
  CHECK(sb[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sb[1] == doctest::Approx(2.0).epsilon(1e-9));

  std::vector<Vec> tri{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  Vec oracle = steiner_exterior_angle_oracle(convex_hull_2d(tri));
  CHECK(oracle[0] == doctest::Approx(0.375).epsilon(1e-12));
  CHECK(oracle[1] == doctest::Approx(0.375).epsilon(1e-12));
  Vec st = steiner_point(*make_polygon(tri), cfg);
  CHECK(norm2(sub(st, oracle)) <= 1e-3);
}

TEST_CASE("steiner additivity and lipschitz bound") {
  SamplingCfg cfg;
  Rng rng(93);
  double lip = steiner_lipschitz_constant(2);
  for (int k = 0; k < 100; ++k) {
    std::vector<Vec> p1, p2;
    for (int i = 0; i < 6; ++i) {
      p1.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
      p2.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
    }
    auto k1 = make_polygon(p1);
    auto k2 = make_polygon(p2);
    Vec s1 = steiner_point(*k1, cfg);
    Vec s2 = steiner_point(*k2, cfg);
    Vec ssum = steiner_point(*minkowski_sum(k1, k2), cfg);
    CHECK(norm2(sub(ssum, add(s1, s2))) <= 1e-6);
    double h = hausdorff_distance(*k1, *k2, cfg);
    CHECK(norm2(sub(s1, s2)) <= lip * h + 5e-3);
  }
}

TEST_CASE("steiner lipschitz constant formula") {
  CHECK(steiner_lipschitz_constant(1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(steiner_lipschitz_constant(2) ==
        doctest::Approx(4.0 / std::numbers::pi).epsilon(1e-12));
  for (int n = 1; n < 10; ++n)
    CHECK(steiner_lipschitz_constant(n + 1) > steiner_lipschitz_constant(n));
}

TEST_CASE("parallelism constants") {
  // diagonal kernel {(y, y)}
  Matrix l(2, 4);
  l.at(0, 0) = 1.0;
  l.at(0, 2) = -1.0;
  l.at(1, 1) = 1.0;
  l.at(1, 3) = -1.0;
  CHECK(parallelism_constant(LinearSurjection(l, 2)) == doctest::Approx(1.0).epsilon(1e-9));

  // kernel {(y, 0)}: parallel to a factor
  std::vector<Vec> flat{{1.0, 0.0}};
  CHECK(parallelism_constant(flat, 1) == doctest::Approx(0.0));

  // kernel {(y, 2y)}: max-norm unit vector has ||u|| = 1/2
  Matrix skew(2, 4);
  skew.at(0, 0) = 2.0;
  skew.at(0, 2) = -1.0;
  skew.at(1, 1) = 2.0;
  skew.at(1, 3) = -1.0;
  CHECK(parallelism_constant(LinearSurjection(skew, 2)) ==
        doctest::Approx(0.5).epsilon(1e-9));

  // a kernel wider than a factor always contains factor-parallel vectors
  Matrix wide(1, 4);
  wide.at(0, 0) = 1.0;
  wide.at(0, 1) = 0.3;
  wide.at(0, 2) = -0.8;
  wide.at(0, 3) = 0.2;
  LinearSurjection ws(wide, 2);
  REQUIRE(ws.kernel.size() == 3);
  CHECK(parallelism_constant(ws) <= 1e-9);

  // dim-3 kernel {(y, Ay)} in R^3 (+) R^3: C = min(sigma_min, 1/sigma_max)
  // for the singular values of A
  Matrix graph(3, 6);
  // A = R diag(0.5, 1, 3) with R a rotation in the (0,1) plane
  double ca = std::cos(0.7), sa = std::sin(0.7);
  double a_mat[3][3] = {{0.5 * ca, -1.0 * sa, 0.0},
                        {0.5 * sa, 1.0 * ca, 0.0},
                        {0.0, 0.0, 3.0}};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) graph.at(i, j) = a_mat[i][j];
    graph.at(i, 3 + i) = -1.0;
  }
  LinearSurjection gs(graph, 3);
  REQUIRE(gs.kernel.size() == 3);
  CHECK(parallelism_constant(gs) == doctest::Approx(1.0 / 3.0).epsilon(1e-4));
}

TEST_CASE("split_kernel: trivial, grid oracle, projection singleton, parallel kernel") {
  ProjectionCfg cfg;
  Matrix l(2, 4);
  l.at(0, 0) = 1.0;
  l.at(0, 2) = -1.0;
  l.at(1, 1) = 1.0;
  l.at(1, 3) = -1.0;
  LinearSurjection diff(l, 2);

  auto unit = make_pball({0.0, 0.0}, 1.0, 2.0);
  SplitSelection triv = split_kernel(unit, unit, diff, {0.0, 0.0}, cfg);
  CHECK(norm2(triv.a) <= 1e-7);
  CHECK(norm2(triv.b) <= 1e-7);
  CHECK(triv.reconstruction_defect <= 1e-9);

  // moving feasible point, cross-checked against a grid oracle over the
  // kernel coordinates
  auto f1 = make_pball({0.2, 0.0}, 1.0, 2.0);
  auto f2 = make_pball({-0.2, 0.1}, 1.0, 2.0);
  Vec f{0.3, -0.05};
  SplitSelection s = split_kernel(f1, f2, diff, f, cfg);
  CHECK(s.reconstruction_defect <= 1e-9);
  CHECK(s.membership_defect_a <= 1e-6);
  CHECK(s.membership_defect_b <= 1e-6);
  // oracle: w = w0 + (y, y), minimize ||w|| subject to memberships
  Vec w0 = diff.preimage(f).basepoint;
  Vec best;
  double best_norm = 1e300;
  for (int i = 0; i <= 1600; ++i) {
    for (int j = 0; j <= 1600; ++j) {
      Vec y{-1.0 + 2.0 * i / 1600.0, -1.0 + 2.0 * j / 1600.0};
      Vec cand{w0[0] + y[0], w0[1] + y[1], w0[2] + y[0], w0[3] + y[1]};
      if (!f1->contains(slice(cand, 0, 2), 0.0)) continue;
      if (!f2->contains(slice(cand, 2, 2), 0.0)) continue;
      if (norm2(cand) < best_norm) {
        best_norm = norm2(cand);
        best = cand;
      }
    }
  }
  CHECK(norm2(sub(concat(s.a, s.b), best)) <= 5e-3);

  // difference kernel with the gauge-radius ball: the only solution is the
  // metric projection of zero
  auto a = make_pball({2.0, 0.5}, 1.0, 2.0);
  double rho = project_body(*a, {0.0, 0.0}, cfg).distance;
  auto f2ball = make_pball({0.0, 0.0}, rho, 2.0);
  SplitSelection r34 = split_kernel(a, f2ball, diff, {0.0, 0.0}, cfg);
  Vec pa = project_body(*a, {0.0, 0.0}, cfg).point;
  CHECK(norm2(sub(r34.a, pa)) <= 1e-6);
  CHECK(norm2(sub(r34.b, pa)) <= 1e-6);

  // kernel parallel to a factor: C = 0
  Matrix par(2, 4);
  par.at(0, 2) = 1.0;  // L(y1, y2) = y2: kernel {(y, 0)}
  par.at(1, 3) = 1.0;
  LinearSurjection lpar(par, 2);
  CHECK_THROWS_AS(split_kernel(unit, unit, lpar, {0.0, 0.0}, cfg), KernelParallel);
}

}  // TEST_SUITE
