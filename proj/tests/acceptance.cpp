// Acceptance suite: one check per criterion, each printing a pass/fail line
// with its measured margins. Exit code = number of failed criteria.
//
// Run all:            uconvex_acceptance
// Run one criterion:  uconvex_acceptance <n>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "uconvex/body_io.hpp"
#include "uconvex/experiments.hpp"
#include "uconvex/rng.hpp"

namespace fs = std::filesystem;
using namespace uconvex;

namespace {

struct Criterion {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "\n    FAILED: " << what;
    }
  }
  void info(const std::string& what) { detail << "\n    " << what; }
};

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// 1. Day-Nordlander equality for the Euclidean ball of diameter 1.
Criterion criterion_1() {
  Criterion c;
  double t0 = now_seconds();
  VerifyCfg cfg;
  auto ball = make_pball({0.0, 0.0}, 0.5, 2.0);
  DayNordlanderResult dn =
      verify_day_nordlander(ball, {0.2, 0.4, 0.6, 0.8, 0.9}, cfg);
  c.require(std::abs(dn.r0 - 0.5) <= 1e-4, "r0 should measure 1/2");
  for (const auto& row : dn.report.rows) {
    double err = std::abs(row.lhs - row.rhs);
    c.require(err <= 2e-3, "equality margin " + format_double(err) +
                               " at eps " + format_double(row.key));
    if (row.key == 0.6) {
      c.require(std::abs(row.lhs - 0.100) <= 2e-3,
                "delta-hat(0.6) = " + format_double(row.lhs) + " vs 0.100");
      c.info("delta-hat(0.6) = " + format_double(row.lhs));
    }
  }
  double dt = now_seconds() - t0;
  c.require(dt < 10.0, "runtime " + format_double(dt) + " s exceeds 10 s");
  c.info("runtime " + format_double(dt) + " s");
  return c;
}

// 2. Power-cap modulus law (eps/2)^p. The claimed law only reflects apex
// chords; for p = 2 the flattest boundary point is the parabola at the
// circle junction and the true modulus is ~0.0386 eps^2, so the p = 2 rows
// beyond eps ~ 0.07 fail by construction. The criterion is checked exactly
// as stated rather than loosened; see the project notes.
Criterion criterion_2() {
  Criterion c;
  for (double p : {2.0, 3.0, 4.0}) {
    double t0 = now_seconds();
    auto cap = make_power_cap(p);
    ModulusCfg mc;
    std::vector<double> grid{0.05, 0.10, 0.15, 0.20, 0.25, 0.30};
    ModulusTable t = estimate_modulus(*cap, grid, mc);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double claimed = std::pow(t.eps[i] / 2.0, p);
      double tol = std::max(1e-3, 0.05 * claimed);
      double err = std::abs(t.delta[i] - claimed);
      std::ostringstream what;
      what << "p=" << p << " eps=" << t.eps[i] << ": |" << format_double(t.delta[i])
           << " - " << format_double(claimed) << "| = " << format_double(err)
           << " > " << format_double(tol);
      c.require(err <= tol, what.str());
    }
    double dt = now_seconds() - t0;
    c.require(dt < 30.0, "runtime per p exceeds 30 s");
    c.info("p=" + format_double(p) + " runtime " + format_double(dt) + " s");
  }
  if (!c.pass)
    c.info("known limitation: the (eps/2)^p law only reflects apex chords; "
           "the boundary-pair minimum for p=2 is ~0.0386 eps^2 (junction "
           "curvature), so these rows cannot pass as stated");
  return c;
}

// 3. Section-2 inequality battery over the suite bodies.
Criterion criterion_3() {
  Criterion c;
  struct Entry {
    std::string name;
    BodyPtr body;
    bool degenerate;
    double big_r;
  };
  std::vector<Entry> suite;
  suite.push_back({"euclid_ball", make_pball({0.0, 0.0}, 1.0, 2.0), false, 0.0});
  suite.push_back(
      {"l4_ball", make_pball(Space::lp(2, 4.0), {0.0, 0.0}, 1.0, 4.0), false, 0.0});
  suite.push_back({"ball_intersection",
                   make_ball_intersection(1.3, {{-0.4, 0.0}, {0.4, 0.0}, {0.0, 0.4}}),
                   false, 1.3});
  suite.push_back({"power_cap2", make_power_cap(2.0), false, 0.0});
  suite.push_back({"power_cap3", make_power_cap(3.0), false, 0.0});
  suite.push_back({"square",
                   make_polygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}),
                   true, 0.0});
  for (const auto& entry : suite) {
    VerifyCfg cfg;
    cfg.expect_not_uniformly_convex = entry.degenerate;
    cfg.strongly_convex_R = entry.big_r;
    cfg.samples = 1000;
    cfg.tol_table = 2e-3;
    cfg.tol_support = 1e-3;
    BatteryResult battery = verify_battery(entry.body, cfg);
    for (const auto& rep : battery.reports) {
      c.require(rep.pass, entry.name + ": " + rep.name +
                              " (worst margin " +
                              format_double(rep.worst_margin) + ")");
    }
    c.info(entry.name + " battery " + (battery.pass ? "ok" : "FAILED"));
  }
  return c;
}

// 4. Intersection-continuity bound on the two designed families plus the
// sharpness lower bound and Holder fit.
Criterion criterion_4() {
  Criterion c;
  ExperimentCfg cfg;
  cfg.pairs = 50;
  cfg.seed = 7;

  Report ex31_thm = verify_theorem_31(power_cap_family(2.0),
                                      line_segment_family(1.05, 0.01, 0.25), cfg);
  c.require(!ex31_thm.inconclusive, "cap family audit");
  double samp_tol = ex31_thm.config.value("sampling_tolerance", 1.0);
  c.require(samp_tol <= 5e-3, "reported sampling tolerance " +
                                  format_double(samp_tol) + " below 5e-3");
  for (const auto& row : ex31_thm.rows)
    if (row.check == "thm31")
      c.require(row.margin >= -samp_tol, "thm31 margin on the cap family");
  c.info("cap family: min margin " + format_double(ex31_thm.worst_margin) +
         ", sampling tol " + format_double(samp_tol));

  Report lens_thm = verify_theorem_31(
      translating_ball_family({0.0, 0.0}, {1.0, 0.0}, 1.0, 0.0, 0.3),
      translating_ball_family({0.0, 0.0}, {-1.0, 0.0}, 1.0, 0.0, 0.3), cfg);
  c.require(!lens_thm.inconclusive, "translating-ball family audit");
  double samp_tol2 = lens_thm.config.value("sampling_tolerance", 1.0);
  c.require(samp_tol2 <= 5e-3, "lens sampling tolerance below 5e-3");
  for (const auto& row : lens_thm.rows)
    if (row.check == "thm31")
      c.require(row.margin >= -samp_tol2, "thm31 margin on the lens family");
  c.info("lens family: min margin " + format_double(lens_thm.worst_margin));

  Report sharp = example_31_sharpness(2.0, 1e-4, 1e-2, 9, cfg);
  double fitted = 0.0;
  for (const auto& row : sharp.rows) {
    if (row.check == "ex31_lower_bound")
      c.require(row.margin >= -1e-6, "sharpness lower bound margin " +
                                         format_double(row.margin));
    if (row.check == "ex31_holder_fit") fitted = row.lhs;
  }
  c.require(fitted >= 0.45 && fitted <= 0.55,
            "fitted Holder exponent " + format_double(fitted) +
                " outside [0.45, 0.55]");
  c.info("fitted exponent " + format_double(fitted));
  return c;
}

// 5. Splitting correctness: split_sum invariants, the projection-singleton
// kernel split, the minimization stability sweep.
Criterion criterion_5() {
  Criterion c;
  ExperimentCfg cfg;
  cfg.seed = 11;
  ProjectionCfg pcfg;

  struct Pair {
    BodyPtr a, b;
    std::string name;
  };
  std::vector<Pair> pairs;
  pairs.push_back({make_pball({3.0, 0.0}, 1.0, 2.0),
                   make_polygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}),
                   "ball+square"});
  pairs.push_back({make_pball({2.0, 1.0}, 0.8, 2.0), make_pball({-1.0, 0.0}, 0.5, 2.0),
                   "ball+ball"});
  for (const auto& pr : pairs) {
    Rng rng(cfg.seed);
    double worst_defect = 0.0, worst_recon = 0.0;
    for (int k = 0; k < 1000; ++k) {
      Vec pa = boundary_point_from(*pr.a, pr.a->interior_point(), rng.unit_vec2(), 1e-10);
      Vec qa = pr.a->interior_point();
      axpy(rng.uniform(), sub(pa, qa), qa);
      Vec pb = boundary_point_from(*pr.b, pr.b->interior_point(), rng.unit_vec2(), 1e-10);
      Vec qb = pr.b->interior_point();
      axpy(rng.uniform(), sub(pb, qb), qb);
      Vec cpt = add(qa, qb);
      SplitSelection s = split_sum(pr.a, pr.b, cpt, pcfg);
      worst_defect = std::max(worst_defect,
                              std::max(s.membership_defect_a, s.membership_defect_b));
      worst_recon = std::max(worst_recon, norm2(sub(add(s.a, s.b), cpt)));
    }
    c.require(worst_defect <= 1e-6,
              pr.name + " membership defect " + format_double(worst_defect));
    c.require(worst_recon <= 1e-9,
              pr.name + " reconstruction defect " + format_double(worst_recon));
    c.info(pr.name + ": defects " + format_double(worst_defect) + " / " +
           format_double(worst_recon));
  }

  Report r34 = split_kernel_projection_singleton(make_pball({2.0, 0.5}, 1.0, 2.0), cfg);
  for (const auto& row : r34.rows)
    c.require(row.ok, "projection singleton: " + row.check + " lhs " + format_double(row.lhs));
  c.info("kernel-split selection matches the direct projection");

  std::vector<std::pair<BodyPtr, BodyPtr>> cases;
  cases.emplace_back(make_pball({0.0, 0.0}, 1.0, 2.0), make_pball({0.0, 0.1}, 1.0, 2.0));
  BodyPtr sq = make_polygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
  for (double h : {0.01, 0.03, 0.05, 0.1, 0.15, 0.2})
    cases.emplace_back(sq, translate(sq, {0.0, h}));
  Report ex32 = example_32_stability({3.0, 0.0}, cases, cfg);
  c.require(ex32.pass, "stability sweep (worst margin " +
                           format_double(ex32.worst_margin) + ")");
  c.info("stability sweep worst margin " + format_double(ex32.worst_margin));
  return c;
}

// 6. Steiner selection: triangle anchor, additivity, Lipschitz bound.
Criterion criterion_6() {
  Criterion c;
  ExperimentCfg cfg;
  cfg.seed = 5;
  Report rep = steiner_experiment(100, cfg);
  for (const auto& row : rep.rows) {
    if (row.check == "steiner_triangle") {
      c.require(row.lhs <= 1e-3,
                "triangle anchor error " + format_double(row.lhs));
      c.info("triangle error vs (0.375, 0.375): " + format_double(row.lhs));
    } else {
      c.require(row.ok, row.check + " margin " + format_double(row.margin));
    }
  }
  c.require(rep.pass, "steiner experiment");
  return c;
}

// 7. Projection Holder exponents on the three designed families.
Criterion criterion_7() {
  Criterion c;
  ExperimentCfg cfg;
  for (const HolderFamily& fam :
       {holder_family_translating_balls(), holder_family_rotating_ellipse(),
        holder_family_critical_dent()}) {
    Report rep = remark_33_projection_holder(fam, cfg);
    double alpha = 0.0;
    for (const auto& row : rep.rows)
      if (row.check == "rem33_alpha") alpha = row.lhs;
    c.require(alpha >= 0.45,
              fam.name + " fitted alpha " + format_double(alpha) + " below 0.45");
    if (fam.name == "translating_balls")
      c.require(alpha >= 0.9, "translating balls alpha " + format_double(alpha) +
                                  " below 0.9");
    c.info(fam.name + ": alpha = " + format_double(alpha));
  }
  return c;
}

// 8. Determinism and runtime of the full suite through the CLI.
Criterion criterion_8() {
  Criterion c;
  fs::path base = fs::temp_directory_path() / "uconvex_acceptance_suite";
  fs::remove_all(base);
  fs::create_directories(base);
  auto run = [&](const std::string& out) {
    std::string cmd = std::string(UCONVEX_CLI_PATH) + " suite --seed 42 --out " +
                      (base / out).string() + " > /dev/null 2>&1";
    double t0 = now_seconds();
    int status = std::system(cmd.c_str());
    double dt = now_seconds() - t0;
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return std::pair<int, double>{code, dt};
  };
  auto [code1, dt1] = run("a");
  auto [code2, dt2] = run("b");
  c.require(code1 == 0, "first suite run exit " + std::to_string(code1));
  c.require(code2 == 0, "second suite run exit " + std::to_string(code2));
  c.require(dt1 < 300.0, "suite runtime " + format_double(dt1) + " s exceeds 5 min");
  c.info("suite runtimes " + format_double(dt1) + " s / " + format_double(dt2) + " s");
  if (!fs::is_directory(base / "a") || !fs::is_directory(base / "b")) {
    c.require(false, "suite output directories missing");
    return c;
  }

  int compared = 0;
  for (const auto& f : fs::directory_iterator(base / "a")) {
    Json a, b;
    std::ifstream(f.path()) >> a;
    fs::path other = base / "b" / f.path().filename();
    c.require(fs::exists(other), "missing report " + other.string());
    if (!fs::exists(other)) continue;
    std::ifstream(other) >> b;
    a.erase("meta");
    b.erase("meta");
    c.require(a.dump() == b.dump(),
              "payload differs: " + f.path().filename().string());
    ++compared;
  }
  c.require(compared >= 20, "expected at least 20 reports");
  c.info(std::to_string(compared) + " report payloads byte-identical");
  return c;
}

const char* kDescriptions[] = {
    "Day-Nordlander equality for the diameter-1 Euclidean ball",
    "power-cap modulus law (eps/2)^p for p in {2,3,4}",
    "section-2 inequality battery on the suite bodies",
    "intersection-continuity bound, sharpness lower bound, Holder fit",
    "splitting correctness (split_sum, kernel split, stability sweep)",
    "Steiner selection (triangle anchor, additivity, Lipschitz)",
    "projection Holder exponents on the designed families",
    "byte-identical reports and full-suite runtime",
};

}  // namespace

int main(int argc, char** argv) {
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failures = 0;
  for (int n = 1; n <= 8; ++n) {
    if (only != 0 && n != only) continue;
    Criterion c;
    switch (n) {
      case 1: c = criterion_1(); break;
      case 2: c = criterion_2(); break;
      case 3: c = criterion_3(); break;
      case 4: c = criterion_4(); break;
      case 5: c = criterion_5(); break;
      case 6: c = criterion_6(); break;
      case 7: c = criterion_7(); break;
      case 8: c = criterion_8(); break;
    }
    std::cout << (c.pass ? "[PASS]" : "[FAIL]") << " criterion " << n << ": "
              << kDescriptions[n - 1] << c.detail.str() << "\n";
    if (!c.pass) ++failures;
  }
  return failures;
}
