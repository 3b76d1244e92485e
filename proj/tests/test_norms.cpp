#include <doctest.h>

#include "uconvex/errors.hpp"
#include "uconvex/norm.hpp"
#include "uconvex/rng.hpp"

using namespace uconvex;

TEST_SUITE("norms") {

TEST_CASE("lp norms on known vectors") {
  Vec x{3.0, -4.0};
  CHECK(lp_norm(x, 2.0) == doctest::Approx(5.0));
  CHECK(lp_norm(x, 1.0) == doctest::Approx(7.0));
  CHECK(lp_norm(x, kInfExponent) == doctest::Approx(4.0));
  CHECK(lp_norm(x, 4.0) == doctest::Approx(std::pow(81.0 + 256.0, 0.25)));
  CHECK(lp_norm(Vec{0.0, 0.0}, 2.0) == 0.0);
}

TEST_CASE("lp_dist matches norm of the difference") {
  Rng rng(11);
  for (double p : {1.0, 1.5, 2.0, 4.0, kInfExponent}) {
    for (int k = 0; k < 50; ++k) {
      Vec a = rng.normal_vec(4), b = rng.normal_vec(4);
      CHECK(lp_dist(a, b, p) == doctest::Approx(lp_norm(sub(a, b), p)).epsilon(1e-14));
    }
  }
}

TEST_CASE("triangle inequality on sampled triples") {
  Rng rng(5);
  for (double p : {1.0, 1.3, 2.0, 3.0, 7.0, kInfExponent}) {
    for (int dim : {2, 3, 5}) {
      for (int k = 0; k < 60; ++k) {
        Vec x = rng.normal_vec(dim), y = rng.normal_vec(dim);
        CHECK(lp_norm(add(x, y), p) <= lp_norm(x, p) + lp_norm(y, p) + 1e-12);
      }
    }
  }
}

TEST_CASE("duality: norming functional pairs to the norm") {
  Rng rng(7);
  for (double p : {1.0, 1.5, 2.0, 4.0, kInfExponent}) {
    Space sp = Space::lp(3, p);
    for (int k = 0; k < 40; ++k) {
      Vec x = rng.normal_vec(3);
      double nx = lp_norm(x, p);
      for (double& v : x) v /= nx;  // unit vector
      Vec u = sp.norming_functional(x);
      CHECK(lp_norm(u, dual_exponent(p)) == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(dot(u, x) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("unit ball argmax: radial for p=2, corners for p=inf") {
  auto f2 = lp_unit_ball_argmax(Vec{3.0, 4.0}, 2.0);
  CHECK(f2.unique);
  CHECK(f2.point[0] == doctest::Approx(0.6));
  CHECK(f2.point[1] == doctest::Approx(0.8));

  auto finf = lp_unit_ball_argmax(Vec{1.0, -2.0}, kInfExponent);
  CHECK(finf.unique);
  CHECK(finf.point[0] == 1.0);
  CHECK(finf.point[1] == -1.0);

  auto degen = lp_unit_ball_argmax(Vec{1.0, 0.0}, kInfExponent);
  CHECK_FALSE(degen.unique);  // flat face
}

TEST_CASE("product space: max norm, sum dual, solver metric") {
  Space e1 = Space::lp(2, 2.0);
  Space prod = Space::product(e1, e1);
  CHECK(prod.dim() == 4);
  Vec w{3.0, 4.0, 1.0, 0.0};
  CHECK(prod.norm(w) == doctest::Approx(5.0));
  CHECK(prod.dual_norm(w) == doctest::Approx(6.0));
  CHECK(prod.solver_euclidean());
  Space l4 = Space::lp(2, 4.0);
  CHECK_FALSE(Space::product(e1, l4).solver_euclidean());
}

TEST_CASE("dual exponent pairs") {
  CHECK(dual_exponent(2.0) == doctest::Approx(2.0));
  CHECK(dual_exponent(4.0) == doctest::Approx(4.0 / 3.0));
  CHECK(dual_exponent(1.0) == kInfExponent);
  CHECK(dual_exponent(kInfExponent) == doctest::Approx(1.0));
}

}  // TEST_SUITE
