#include <doctest.h>

#include <cmath>
#include <numbers>

#include "uconvex/errors.hpp"
#include "uconvex/modulus.hpp"
#include "uconvex/rng.hpp"

using namespace uconvex;

namespace {

// test-side oracle: distance from a point to a segment
double point_segment_dist(const Vec& x, const Vec& a, const Vec& b) {
  Vec d = sub(b, a);
  double t = std::clamp(dot(sub(x, a), d) / dot(d, d), 0.0, 1.0);
  Vec p = a;
  axpy(t, d, p);
  return norm2(sub(x, p));
}

// dense boundary-pair scan of the power cap diameter (analytic parametrization)
double cap_diameter_oracle(double p) {
  double corner = 0.0;
  {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
      double mid = 0.5 * (lo + hi);
      (mid * mid + std::pow(mid, 2.0 * p) >= 1.0 ? hi : lo) = mid;
    }
    corner = 0.5 * (lo + hi);
  }
  std::vector<Vec> pts;
  const int n = 1 << 13;
  for (int i = 0; i <= n; ++i) {
    double x = -corner + 2.0 * corner * i / n;
    pts.push_back({x, std::pow(std::abs(x), p)});
  }
  double a0 = std::atan2(std::pow(corner, p), corner);
  for (int i = 0; i <= n; ++i) {
    double a = a0 + (std::numbers::pi - 2.0 * a0) * i / n;
    pts.push_back({std::cos(a), std::sin(a)});
  }
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); j += 7)  // strided pairs
      best = std::max(best, norm2(sub(pts[i], pts[j])));
  return best;
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("boundary points by ray bisection") {
  auto ball = make_pball({0.0, 0.0}, 1.0, 2.0);
  Vec b = boundary_point(*ball, {1.0, 0.0});
  CHECK(b[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(b[1] == doctest::Approx(0.0));

  auto shifted = make_pball({1.0, 0.0}, 1.0, 2.0);
  Vec b2 = boundary_point_from(*shifted, {1.0, 0.0}, {1.0, 0.0});
  CHECK(b2[0] == doctest::Approx(2.0).epsilon(1e-9));

  // chord of the cap at height 1/2: x = sqrt(1/2), inside the unit circle
  auto cap = make_power_cap(2.0);
  Vec b3 = boundary_point_from(*cap, {0.0, 0.5}, {1.0, 0.0});
  CHECK(b3[0] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-8));
  CHECK(b3[1] == doctest::Approx(0.5));
}

TEST_CASE("hausdorff: translation, identity, exact segments") {
  SamplingCfg cfg;
  auto a = make_pball({0.0, 0.0}, 1.0, 2.0);
  auto b = make_pball({0.5, 0.0}, 1.0, 2.0);
  CHECK(hausdorff_distance(*a, *b, cfg) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(hausdorff_distance(*a, *a, cfg) == doctest::Approx(0.0));

  // the H(t1), H(t2) segments of the parabola example, t = 0.04 and 0.16
  auto s1 = make_segment({-0.2, 0.04}, {0.2, 0.04});
  auto s2 = make_segment({-0.4, 0.16}, {0.4, 0.16});
  double expected = std::sqrt(0.2 * 0.2 + 0.12 * 0.12);
  CHECK(expected == doctest::Approx(0.23323807579381204));
  CHECK(hausdorff_distance(*s1, *s2, cfg) == doctest::Approx(expected).epsilon(1e-12));

  // endpoint oracle agrees with the formula
  double oracle = std::max(
      std::max(point_segment_dist({-0.2, 0.04}, {-0.4, 0.16}, {0.4, 0.16}),
               point_segment_dist({0.2, 0.04}, {-0.4, 0.16}, {0.4, 0.16})),
      std::max(point_segment_dist({-0.4, 0.16}, {-0.2, 0.04}, {0.2, 0.04}),
               point_segment_dist({0.4, 0.16}, {-0.2, 0.04}, {0.2, 0.04})));
  CHECK(oracle == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("hausdorff is a metric on sampled bodies") {
  SamplingCfg cfg;
  cfg.directions_2d = 2048;
  Rng rng(41);
  auto random_body = [&](int kind) -> BodyPtr {
    if (kind == 0)
      return make_pball({rng.uniform(-1, 1), rng.uniform(-1, 1)},
                        rng.uniform(0.3, 1.5), 2.0);
    if (kind == 1) {
      std::vector<Vec> pts;
      for (int i = 0; i < 5; ++i)
        pts.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
      return make_polygon(std::move(pts));
    }
    return make_segment({rng.uniform(-1, 1), rng.uniform(-1, 1)},
                        {rng.uniform(-1, 1), rng.uniform(-1, 1)});
  };
  for (int k = 0; k < 100; ++k) {
    BodyPtr a = random_body(k % 3);
    BodyPtr b = random_body((k + 1) % 3);
    BodyPtr c = random_body((k + 2) % 3);
    double hab = hausdorff_distance(*a, *b, cfg);
    double hba = hausdorff_distance(*b, *a, cfg);
    CHECK(hab == doctest::Approx(hba).epsilon(1e-12));  // symmetry
    double hac = hausdorff_distance(*a, *c, cfg);
    double hbc = hausdorff_distance(*b, *c, cfg);
    CHECK(hac <= hab + hbc + 1e-6);  // triangle, sampling slack
  }
}

TEST_CASE("hausdorff translation invariance") {
  SamplingCfg cfg;
  auto a = make_pball({0.0, 0.0}, 1.0, 2.0);
  auto b = make_polygon({{0.0, 0.0}, {1.0, 0.2}, {0.4, 1.1}});
  Vec v{0.7, -0.3};
  double h0 = hausdorff_distance(*a, *b, cfg);
  double h1 = hausdorff_distance(*translate(a, v), *translate(b, v), cfg);
  CHECK(h1 == doctest::Approx(h0).epsilon(1e-9));
}

TEST_CASE("hausdorff in a max-norm product is the factor maximum") {
  SamplingCfg cfg;
  auto f1 = make_pball({0.0, 0.0}, 1.0, 2.0);
  auto f2 = make_pball({0.5}, 0.5, 2.0);
  auto a = make_product(f1, f2);
  auto b = make_product(translate(f1, {0.3, 0.0}), f2);
  // translating one factor by v: h_max = max(||v||, 0)
  double h = hausdorff_distance(*a, *b, cfg);
  CHECK(h == doctest::Approx(0.3).epsilon(2e-2));  // coarse product sampling
}

TEST_CASE("hausdorff dimension mismatch") {
  auto a = make_pball({0.0, 0.0}, 1.0, 2.0);
  auto b = make_pball({0.0, 0.0, 0.0}, 1.0, 2.0);
  CHECK_THROWS_AS(hausdorff_distance(*a, *b, SamplingCfg{}), DimensionMismatch);
}

TEST_CASE("diameter: balls, segments, the cap vs a brute-force scan") {
  SamplingCfg cfg;
  CHECK(diameter(*make_pball({0.3, -0.2}, 0.7, 2.0), cfg) == doctest::Approx(1.4));
  CHECK(diameter(*make_segment({0.0, 0.0}, {3.0, 4.0}), cfg) == doctest::Approx(5.0));
  double oracle = cap_diameter_oracle(2.0);
  CHECK(diameter(*make_power_cap(2.0), cfg) == doctest::Approx(oracle).epsilon(2e-3));
}

TEST_CASE("diameter of minkowski sums is subadditive") {
  SamplingCfg cfg;
  Rng rng(43);
  for (int k = 0; k < 20; ++k) {
    auto a = make_pball({rng.uniform(-1, 1), 0.0}, rng.uniform(0.2, 1.0), 2.0);
    std::vector<Vec> pts;
    for (int i = 0; i < 4; ++i)
      pts.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
    auto b = make_polygon(std::move(pts));
    double ds = diameter(*minkowski_sum(a, b), cfg);
    CHECK(ds <= diameter(*a, cfg) + diameter(*b, cfg) + 1e-9);
  }
}

TEST_CASE("depth: centers, offsets, cap apex, and the dual-formula route") {
  ModulusCfg cfg;
  auto ball = make_pball({0.0, 0.0}, 1.0, 2.0);
  CHECK(depth(*ball, {0.0, 0.0}, cfg) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(depth(*ball, {0.5, 0.0}, cfg) == doctest::Approx(0.5).epsilon(1e-7));

  auto cap = make_power_cap(2.0);
  CHECK(depth(*cap, {0.0, 0.0025}, cfg) == doctest::Approx(0.0025).epsilon(1e-4));

  // independent route: depth(x) = min over dual unit u of s(u,A) - <u,x>
  Rng rng(51);
  for (double p : {2.0, 4.0}) {
    auto body = make_pball(Space::lp(2, p), {0.1, -0.2}, 1.0, p);
    for (int k = 0; k < 10; ++k) {
      Vec x{0.1 + rng.uniform(-0.3, 0.3), -0.2 + rng.uniform(-0.3, 0.3)};
      if (!body->contains(x, 0.0)) continue;
      double dual_route = 1e300;
      for (const auto& u : dual_sphere_grid(body->space(), 4096))
        dual_route = std::min(dual_route, body->support_value(u) - dot(u, x));
      CHECK(depth(*body, x, cfg) == doctest::Approx(dual_route).epsilon(1e-5));
    }
  }
  CHECK_THROWS_AS(depth(*ball, {2.0, 0.0}, cfg), OutsidePoint);
}

}  // TEST_SUITE
