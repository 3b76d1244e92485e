#include "uconvex/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "uconvex/errors.hpp"
#include "uconvex/rng.hpp"

namespace uconvex {

namespace {
constexpr double kPi = std::numbers::pi;

Json modulus_cfg_json(const ModulusCfg& m) {
  return Json{{"boundary_points", m.boundary_points},
              {"depth_dirs", m.depth_dirs},
              {"refine", m.refine},
              {"chord_tol_rel", m.chord_tol_rel}};
}
}  // namespace

Report verify_scaling(const Modulus& m, const std::vector<double>& lambdas,
                      const std::vector<double>& eps_grid, double tol) {
  Report rep;
  rep.name = "scaling";
  rep.config = Json{{"tol", tol}};
  for (double eps : eps_grid) {
    double de = m.eval(eps);
    for (double lam : lambdas) {
      if (!(lam > 0.0 && lam < 1.0)) continue;
      ReportRow row;
      row.check = "scaling";
      row.key = eps;
      row.key2 = lam;
      row.lhs = m.eval(lam * eps);
      row.rhs = lam * de;
      row.margin = row.rhs - row.lhs;
      rep.add_row(std::move(row), tol);
    }
  }
  return rep;
}

Report verify_monotonicity(const Modulus& m, const std::vector<double>& eps_grid,
                           double tol, bool expect_strict) {
  Report rep;
  rep.name = "monotonicity";
  rep.config = Json{{"tol", tol}, {"expect_strict", expect_strict}};
  std::vector<double> grid = eps_grid;
  std::sort(grid.begin(), grid.end());
  bool strict_ok = true;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    double d0 = m.eval(grid[i - 1]);
    double d1 = m.eval(grid[i]);
    ReportRow row;
    row.check = "delta_nondecreasing";
    row.key = grid[i - 1];
    row.key2 = grid[i];
    row.lhs = d0;
    row.rhs = d1;
    row.margin = d1 - d0;
    rep.add_row(std::move(row), tol);
    if (d1 - d0 <= 0.0) strict_ok = false;

    double r0 = d0 / grid[i - 1];
    double r1 = d1 / grid[i];
    ReportRow rrow;
    rrow.check = "ratio_nondecreasing";
    rrow.key = grid[i - 1];
    rrow.key2 = grid[i];
    rrow.lhs = r0;
    rrow.rhs = r1;
    rrow.margin = r1 - r0;
    rep.add_row(std::move(rrow), tol);
  }
  if (expect_strict && !strict_ok) {
    rep.pass = false;
    rep.note("strict monotonicity expected but the modulus has flat steps");
  }
  if (!expect_strict && !strict_ok) rep.note("non-strict modulus (flat steps)");
  return rep;
}

Report verify_diameter_bound(const ModulusTable& table) {
  Report rep;
  rep.name = "diameter_bound";
  rep.config = Json{{"diameter", table.diameter}};
  for (std::size_t i = 0; i < table.eps.size(); ++i) {
    if (!table.realizable[i]) continue;
    double eps = table.eps[i];
    double de = table.delta[i];
    if (!(de > 1e-12)) {
      ReportRow row;
      row.check = "diameter_bound";
      row.key = eps;
      row.lhs = table.diameter;
      row.rhs = std::numeric_limits<double>::quiet_NaN();
      row.margin = 0.0;
      row.note = "skipped: delta == 0";
      rep.add_row(std::move(row), 1.0);
      continue;
    }
    double n_steps = std::floor(eps / de) + 1.0;
    ReportRow row;
    row.check = "diameter_bound";
    row.key = eps;
    row.lhs = table.diameter;
    row.rhs = n_steps * eps;
    row.margin = row.rhs - row.lhs;
    rep.add_row(std::move(row), 1e-9);
  }
  return rep;
}

Report verify_quadratic_cap(const ModulusTable& table, double tol) {
  Report rep;
  rep.name = "quadratic_cap";
  rep.config = Json{{"diameter", table.diameter}, {"tol", tol}};
  for (std::size_t i = 0; i < table.eps.size(); ++i) {
    if (!table.realizable[i]) continue;
    double eps = table.eps[i];
    if (eps >= table.diameter) continue;
    ReportRow row;
    row.check = "quadratic_cap";
    row.key = eps;
    row.lhs = table.delta[i];
    row.rhs = eps * eps / (table.diameter - eps);
    row.margin = row.rhs - row.lhs;
    rep.add_row(std::move(row), tol);
  }
  return rep;
}

DayNordlanderResult verify_day_nordlander(const BodyPtr& body,
                                          const std::vector<double>& eps_unit,
                                          const VerifyCfg& cfg) {
  DayNordlanderResult out;
  Report& rep = out.report;
  rep.name = "day_nordlander";

  out.diameter = diameter(*body, cfg.sampling);
  BodyPtr scaled = out.diameter == 1.0 ? body : scale_body(body, 1.0 / out.diameter);
  ModulusCfg mc = cfg.modulus;
  out.r0 = depth(*scaled, scaled->interior_point(), mc);
  rep.config = Json{{"diameter", out.diameter},
                    {"r0", out.r0},
                    {"modulus", modulus_cfg_json(mc)}};

  std::vector<double> chords;
  for (double e : eps_unit) {
    if (!(e > 0.0 && e < 1.0)) throw OutOfRange("day-nordlander eps in (0,1)");
    chords.push_back(2.0 * out.r0 * e);
  }
  ModulusTable t = estimate_modulus(*scaled, chords, mc, true);
  // estimate_modulus sorts the grid; eps_unit is mapped through sorted order
  std::vector<double> eps_sorted = eps_unit;
  std::sort(eps_sorted.begin(), eps_sorted.end());
  out.estimates = t.delta;
  for (std::size_t i = 0; i < eps_sorted.size(); ++i) {
    double e = eps_sorted[i];
    ReportRow row;
    row.check = "day_nordlander";
    row.key = e;
    row.key2 = t.eps[i];
    row.lhs = t.delta[i];
    row.rhs = 0.5 * (1.0 - std::sqrt(1.0 - e * e));
    row.margin = row.rhs - row.lhs;
    row.note = "equality_margin=" + format_double(std::abs(row.margin));
    rep.add_row(std::move(row), cfg.tol_table);
  }
  return out;
}

Report verify_supporting_continuity(const ConvexBody& body, const Modulus& m,
                                    int trials, std::uint64_t seed, double tol) {
  Report rep;
  rep.name = "supporting_continuity";
  rep.config = Json{{"trials", trials}, {"seed", seed}, {"tol", tol}};
  const Space& sp = body.space();
  double q = dual_exponent(sp.p());
  Rng rng(seed);
  auto random_dual = [&]() {
    Vec u;
    if (body.dim() == 2) {
      double a = rng.uniform(0.0, 2.0 * kPi);
      u = {std::cos(a), std::sin(a)};
    } else {
      u = rng.normal_vec(body.dim());
    }
    double n = lp_norm(u, q);
    for (double& v : u) v /= n;
    return u;
  };
  int degenerate = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < trials; ++k) {
    Vec p1 = random_dual();
    Vec p2 = random_dual();
    SupportPoint x1 = body.support_point(p1);
    SupportPoint x2 = body.support_point(p2);
    if (!x1.unique || !x2.unique) ++degenerate;
    double chord = sp.dist(x1.point, x2.point);
    double lhs = chord > 0.0 ? phi(m, chord) : 0.0;
    double rhs = lp_norm(sub(p1, p2), q);
    double margin = rhs - lhs;
    worst = std::min(worst, margin);
    if (margin < -tol || k < 8) {
      ReportRow row;
      row.check = "supporting_continuity";
      row.key = static_cast<double>(k);
      row.lhs = lhs;
      row.rhs = rhs;
      row.margin = margin;
      rep.add_row(std::move(row), tol);
    } else {
      rep.worst_margin = std::min(rep.worst_margin, margin);
    }
  }
  ReportRow summary;
  summary.check = "supporting_continuity_worst";
  summary.lhs = 0.0;
  summary.rhs = 0.0;
  summary.margin = worst;
  rep.add_row(std::move(summary), tol);
  if (degenerate > 0)
    rep.note("degenerate support faces hit " + std::to_string(degenerate) +
             " times (flagged, canonical vertices used)");
  return rep;
}

Report verify_strongly_convex_lower(const ModulusTable& table, double R, double tol) {
  Report rep;
  rep.name = "strongly_convex_lower";
  rep.config = Json{{"R", R}, {"tol", tol}};
  Modulus ambient = Modulus::euclid_ball(1.0);
  for (std::size_t i = 0; i < table.eps.size(); ++i) {
    if (!table.realizable[i]) continue;
    double eps = table.eps[i];
    if (!(eps < 2.0 * R)) continue;
    ReportRow row;
    row.check = "strongly_convex_lower";
    row.key = eps;
    row.lhs = strongly_convex_lower_value(R, ambient, eps);
    row.rhs = table.delta[i];
    row.margin = row.rhs - row.lhs;
    rep.add_row(std::move(row), tol);
  }
  if (table.upper_bias)
    rep.note("estimate is upper-biased in dimension >= 3; lower-bound check "
             "is indicative only");
  return rep;
}

namespace {

// Diagnostic only: delta(eps) against the integral of phi up to eps/2.
// The constant in front of the integral is unknown, so no pass/fail.
Report integral_diagnostic(const Modulus& m, const std::vector<double>& grid) {
  Report rep;
  rep.name = "integral_diagnostic";
  rep.pass = true;
  rep.config = Json{{"note", "diagnostic only, no pass/fail"}};
  for (double eps : grid) {
    double half = eps / 2.0;
    int n = 64;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      double t0 = half * i / n, t1 = half * (i + 1) / n;
      double f0 = t0 > 0 ? phi(m, t0) : 0.0;
      double f1 = phi(m, t1);
      acc += 0.5 * (f0 + f1) * (t1 - t0);
    }
    ReportRow row;
    row.check = "integral_diagnostic";
    row.key = eps;
    row.lhs = m.eval(eps);
    row.rhs = acc;
    row.margin = acc > 0 ? m.eval(eps) / acc : std::numeric_limits<double>::quiet_NaN();
    row.ok = true;
    row.note = "ratio delta/integral";
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace

BatteryResult verify_battery(const BodyPtr& body, const VerifyCfg& cfg) {
  BatteryResult out;
  double diam = diameter(*body, cfg.sampling);
  std::vector<double> grid = cfg.eps_grid;
  if (grid.empty()) {
    for (int i = 0; i < 12; ++i)
      grid.push_back(diam * (0.1 + 0.8 * i / 11.0));
  }
  out.table = estimate_modulus(*body, grid, cfg.modulus, false);
  Modulus m = Modulus::table(out.table);

  std::vector<double> realizable_grid;
  for (std::size_t i = 0; i < out.table.eps.size(); ++i)
    if (out.table.realizable[i]) realizable_grid.push_back(out.table.eps[i]);

  out.reports.push_back(
      verify_scaling(m, {0.25, 0.5, 0.75}, realizable_grid, cfg.tol_table));
  // Strictness is only demanded of analytic moduli; estimated tables are
  // checked for monotonicity plus a positivity gate standing in for the
  // uniform-convexity claim.
  out.reports.push_back(
      verify_monotonicity(m, realizable_grid, cfg.tol_table, false));
  {
    Report positivity;
    positivity.name = "uniform_convexity";
    positivity.config =
        Json{{"expected", !cfg.expect_not_uniformly_convex}};
    for (std::size_t i = 0; i < out.table.eps.size(); ++i) {
      if (!out.table.realizable[i]) continue;
      ReportRow row;
      row.check = "delta_positive";
      row.key = out.table.eps[i];
      row.lhs = 0.0;
      row.rhs = out.table.delta[i];
      row.margin = out.table.delta[i];
      if (cfg.expect_not_uniformly_convex) {
        row.ok = true;
        row.note = row.margin <= 1e-9 ? "degenerate as expected" : "";
        positivity.rows.push_back(std::move(row));
      } else {
        positivity.add_row(std::move(row), -1e-9);
      }
    }
    if (cfg.expect_not_uniformly_convex && out.table.all_zero())
      positivity.note("non-strict modulus confirmed");
    out.reports.push_back(std::move(positivity));
  }
  out.reports.push_back(verify_diameter_bound(out.table));
  out.reports.push_back(verify_quadratic_cap(out.table, cfg.tol_table));
  out.reports.push_back(
      verify_day_nordlander(body, {0.2, 0.4, 0.6, 0.8}, cfg).report);
  out.reports.push_back(verify_supporting_continuity(
      *body, m, cfg.samples, cfg.seed, cfg.tol_support));
  if (cfg.strongly_convex_R > 0.0)
    out.reports.push_back(verify_strongly_convex_lower(
        out.table, cfg.strongly_convex_R, cfg.tol_table));
  out.reports.push_back(integral_diagnostic(m, realizable_grid));

  for (const auto& r : out.reports) out.pass = out.pass && r.pass;
  return out;
}

}  // namespace uconvex
