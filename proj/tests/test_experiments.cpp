#include <doctest.h>

#include <cmath>

#include "uconvex/errors.hpp"
#include "uconvex/experiments.hpp"

using namespace uconvex;

TEST_SUITE("experiments") {

TEST_CASE("intersection families") {
  auto ball = make_pball({0.0, 0.0}, 1.0, 2.0);
  SetValuedFamily same = constant_family(ball);
  BodyPtr h = intersection_at(same, same, 0.3);
  SamplingCfg cfg;
  CHECK(hausdorff_distance(*h, *ball, cfg) <= 2e-5);

  // power-cap section: H(t) = [-sqrt(t), sqrt(t)] x {t}
  SetValuedFamily caps = power_cap_family(2.0);
  SetValuedFamily line = line_segment_family(1.05, 0.01, 0.25);
  BodyPtr ht = intersection_at(caps, line, 0.09);
  auto* inter = dynamic_cast<const IntersectionBody*>(ht.get());
  REQUIRE(inter != nullptr);
  REQUIRE(inter->degenerate_segment());
  const Segment* seg = inter->clipped();
  double lo = std::min(seg->a()[0], seg->b()[0]);
  double hi = std::max(seg->a()[0], seg->b()[0]);
  CHECK(lo == doctest::Approx(-0.3).epsilon(1e-7));
  CHECK(hi == doctest::Approx(0.3).epsilon(1e-7));
  CHECK(seg->a()[1] == doctest::Approx(0.09));

  SetValuedFamily far_line = line_segment_family(1.05, 2.0, 3.0);
  CHECK_THROWS_AS(intersection_at(caps, far_line, 2.5), EmptyIntersection);
}

TEST_CASE("thm31 margins on the designed families") {
  ExperimentCfg cfg;
  cfg.pairs = 12;
  Report ex31 = verify_theorem_31(power_cap_family(2.0),
                                  line_segment_family(1.05, 0.01, 0.25), cfg);
  CHECK(ex31.pass);
  CHECK_FALSE(ex31.inconclusive);
  for (const auto& row : ex31.rows)
    if (row.check == "thm31") CHECK(row.margin >= 0.0);

  // constant families: LHS = 0 <= RHS = 0
  auto ball = make_pball({0.0, 0.0}, 1.0, 2.0);
  SetValuedFamily c1 = constant_family(ball);
  c1.image_modulus = Modulus::euclid_ball(1.0).with_r0(1.0).with_M(2.0);
  c1.r0 = 1.0;
  Report constant = verify_theorem_31(c1, c1, cfg);
  CHECK(constant.pass);
  for (const auto& row : constant.rows)
    if (row.check == "thm31") {
      CHECK(row.lhs <= 1e-7);
      CHECK(row.rhs <= 1e-7);
    }

  Report lens = verify_theorem_31(
      translating_ball_family({0.0, 0.0}, {1.0, 0.0}, 1.0, 0.0, 0.3),
      translating_ball_family({0.0, 0.0}, {-1.0, 0.0}, 1.0, 0.0, 0.3), cfg);
  CHECK(lens.pass);
}

TEST_CASE("hypothesis audit failures mark runs inconclusive") {
  ExperimentCfg cfg;
  cfg.pairs = 6;
  // lie about the modulus of continuity: balls translate at speed 1 but the
  // declared omega is half of that
  SetValuedFamily lying =
      translating_ball_family({0.0, 0.0}, {1.0, 0.0}, 1.0, 0.0, 0.3);
  lying.omega = [](double s) { return 0.4 * s; };
  Report rep = verify_theorem_31(
      lying, translating_ball_family({0.0, 0.0}, {-1.0, 0.0}, 1.0, 0.0, 0.3), cfg);
  CHECK(rep.inconclusive);
  CHECK_FALSE(rep.pass);
}

TEST_CASE("ex31 sharpness and the fitted exponents") {
  ExperimentCfg cfg;
  Report p2 = example_31_sharpness(2.0, 1e-4, 1e-2, 9, cfg);
  CHECK(p2.pass);
  double fitted = 0.0;
  for (const auto& row : p2.rows) {
    if (row.check == "ex31_lower_bound") CHECK(row.margin >= -1e-6);
    if (row.check == "ex31_holder_fit") fitted = row.lhs;
  }
  CHECK(fitted >= 0.45);
  CHECK(fitted <= 0.55);

  // frozen anchor: t1 = 0.01, t2 = 0.02
  Report anchor = example_31_sharpness(2.0, 0.01, 0.02, 2, cfg);
  const auto& row = anchor.rows.front();
  CHECK(row.lhs == doctest::Approx(0.04142135623730951).epsilon(1e-9));
  double h_expected = std::sqrt(0.01 * 0.01 +
                                std::pow(std::sqrt(0.02) - std::sqrt(0.01), 2.0));
  CHECK(row.rhs == doctest::Approx(h_expected).epsilon(1e-7));

  Report p4 = example_31_sharpness(4.0, 1e-4, 1e-2, 9, cfg);
  CHECK(p4.pass);
  for (const auto& row4 : p4.rows)
    if (row4.check == "ex31_holder_fit") {
      CHECK(row4.lhs >= 0.20);
      CHECK(row4.lhs <= 0.30);
    }
}

TEST_CASE("ex32 stability") {
  ExperimentCfg cfg;
  std::vector<std::pair<BodyPtr, BodyPtr>> cases;
  auto b = make_pball({0.0, 0.0}, 1.0, 2.0);
  cases.emplace_back(b, b);  // identical: 0 <= 0
  cases.emplace_back(b, make_pball({0.0, 0.1}, 1.0, 2.0));
  BodyPtr sq = make_polygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
  for (double h : {0.01, 0.05, 0.1, 0.2})
    cases.emplace_back(sq, translate(sq, {0.0, h}));
  Report rep = example_32_stability({3.0, 0.0}, cases, cfg);
  CHECK(rep.pass);
  // closed-form minimizers of the shifted-ball case
  Vec u1{1.0, 0.0};
  Vec d{3.0, -0.1};
  double n = norm2(d);
  Vec u2 = add(Vec{0.0, 0.1}, scaled(d, 1.0 / n));
  CHECK(rep.rows[1].lhs == doctest::Approx(norm2(sub(u1, u2))).epsilon(1e-6));
}

TEST_CASE("lem32 margins and the parallel-kernel guard") {
  ExperimentCfg cfg;
  cfg.pairs = 10;
  Matrix l(2, 4);
  l.at(0, 0) = 1.0;
  l.at(0, 2) = -1.0;
  l.at(1, 1) = 1.0;
  l.at(1, 3) = -1.0;
  LinearSurjection diag(l, 2);
  SetValuedFamily f = translating_ball_family({0.0, 0.0}, {1.0, 0.0}, 1.0, 0.0, 0.3);
  Report rep = verify_lemma_32(f, f, diag, cfg);
  CHECK(rep.pass);
  for (const auto& row : rep.rows)
    if (row.check == "lem32") CHECK(row.margin >= -2e-3);

  Matrix skew(2, 4);
  skew.at(0, 0) = 2.0;
  skew.at(0, 2) = -1.0;
  skew.at(1, 1) = 2.0;
  skew.at(1, 3) = -1.0;
  LinearSurjection half(skew, 2);
  Report skew_rep = verify_lemma_32(
      translating_ball_family({0.0, 0.0}, {1.0, 0.0}, 0.5, 0.0, 0.3),
      translating_ball_family({0.0, 0.0}, {2.0, 0.0}, 1.0, 0.0, 0.3), half, cfg);
  CHECK(skew_rep.pass);
  CHECK(skew_rep.config["parallelism_C"].get<double>() == doctest::Approx(0.5).epsilon(1e-6));

  Matrix par(2, 4);
  par.at(0, 2) = 1.0;
  par.at(1, 3) = 1.0;
  LinearSurjection lpar(par, 2);
  CHECK_THROWS_AS(verify_lemma_32(f, f, lpar, cfg), KernelParallel);
}

TEST_CASE("rem33 exponent fits") {
  ExperimentCfg cfg;
  Report balls = remark_33_projection_holder(holder_family_translating_balls(), cfg);
  CHECK(balls.pass);
  for (const auto& row : balls.rows)
    if (row.check == "rem33_alpha") CHECK(row.lhs >= 0.9);

  Report dent = remark_33_projection_holder(holder_family_critical_dent(), cfg);
  CHECK(dent.pass);
  for (const auto& row : dent.rows)
    if (row.check == "rem33_alpha") {
      CHECK(row.lhs >= 0.42);
      CHECK(row.lhs <= 0.60);  // the half-power regime
    }

  Report ellipse = remark_33_projection_holder(holder_family_rotating_ellipse(), cfg);
  CHECK(ellipse.pass);
}

TEST_CASE("manifest dispatch and errors") {
  ExperimentCfg cfg;
  cfg.pairs = 4;
  Json ok = {{"experiment", "ex31"}, {"p", 2.0}, {"scales", 5}};
  Report rep = run_experiment_manifest(ok, cfg);
  CHECK(rep.name == "ex31");
  CHECK(rep.config.contains("manifest"));

  CHECK_THROWS_AS(run_experiment_manifest(Json{{"experiment", "nope"}}, cfg), LoadError);
  CHECK_THROWS_AS(run_experiment_manifest(Json{{"p", 2.0}}, cfg), LoadError);

  // mismatched dimensions between families surface as an input error
  Json mismatch = {
      {"experiment", "thm31"},
      {"family1", {{"kind", "power_cap_constant"}, {"p", 2.0}, {"t_min", 0.01}, {"t_max", 0.2}}},
      {"family2",
       {{"kind", "translating_pball"},
        {"center0", {0.0, 0.0, 0.0}},
        {"velocity", {1.0, 0.0, 0.0}},
        {"t_min", 0.0},
        {"t_max", 0.2}}}};
  CHECK_THROWS_AS(run_experiment_manifest(mismatch, cfg), LoadError);
}

TEST_CASE("splitting experiments wrap up cleanly") {
  ExperimentCfg cfg;
  auto a = make_pball({3.0, 0.0}, 1.0, 2.0);
  auto b = make_polygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
  auto am = Modulus::euclid_ball(1.0).with_delta0(1.0).with_M(2.0);
  Report split = split_sum_experiment(a, b, 120, cfg, am);
  CHECK(split.pass);
  int continuity_rows = 0;
  for (const auto& row : split.rows)
    if (row.check == "split_sum_continuity") {
      ++continuity_rows;
      CHECK(row.margin >= -1e-6);
    }
  CHECK(continuity_rows > 50);

  Report r34 = split_kernel_projection_singleton(make_pball({2.0, 0.5}, 1.0, 2.0), cfg);
  CHECK(r34.pass);
  Report trans = split_kernel_translating(cfg);
  CHECK(trans.pass);
  Report steiner = steiner_experiment(20, cfg);
  CHECK(steiner.pass);
}

}  // TEST_SUITE
