// uconvex: estimate moduli of convexity, verify the uniform-convexity
// inequality battery, and run the selection/splitting experiments.
//
// Exit codes: 0 pass, 1 fail, 2 input error, 3 numeric error, 4 inconclusive.

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "uconvex/body_io.hpp"
#include "uconvex/errors.hpp"
#include "uconvex/experiments.hpp"

namespace fs = std::filesystem;
using namespace uconvex;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitInconclusive = 4;

struct GlobalOpts {
  std::uint64_t seed = 42;
  double tol = 1e-8;
  int threads = 1;
  std::string format = "json";
};

std::vector<double> parse_eps_spec(const std::string& spec) {
  // MIN:MAX:COUNT[:log]
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t pos = spec.find(':', start);
    if (pos == std::string::npos) {
      parts.push_back(spec.substr(start));
      break;
    }
    parts.push_back(spec.substr(start, pos - start));
    start = pos + 1;
  }
  if (parts.size() < 3 || parts.size() > 4)
    throw LoadError("--eps expects MIN:MAX:COUNT[:log]");
  double lo = std::stod(parts[0]);
  double hi = std::stod(parts[1]);
  int count = std::stoi(parts[2]);
  bool log_spaced = parts.size() == 4 && parts[3] == "log";
  if (count < 2) throw LoadError("eps grid count must be >= 2");
  if (!(lo > 0.0) || !(hi > lo)) throw LoadError("eps grid needs 0 < MIN < MAX");
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i) {
    double w = static_cast<double>(i) / (count - 1);
    grid[i] = log_spaced ? lo * std::pow(hi / lo, w) : lo + (hi - lo) * w;
  }
  return grid;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open file: " + path);
  try {
    Json j;
    in >> j;
    return j;
  } catch (const Json::exception& e) {
    throw LoadError(std::string("malformed JSON in ") + path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw LoadError("cannot write: " + path);
  out << text;
}

void write_report(const Report& rep, const std::string& out,
                  const std::string& format, double runtime_ms) {
  if (format == "csv") {
    write_text(out, rep.csv());
  } else {
    write_text(out, report_file(rep, runtime_ms).dump(2) + "\n");
  }
}

int report_exit(const Report& rep) {
  if (rep.inconclusive) return kExitInconclusive;
  return rep.pass ? kExitPass : kExitFail;
}

Report merge_reports(std::string name, const std::vector<Report>& reports) {
  Report merged;
  merged.name = std::move(name);
  Json sub = Json::array();
  for (const auto& r : reports) {
    merged.absorb(r);
    for (const auto& row : r.rows) {
      merged.rows.push_back(row);
    }
    for (const auto& n : r.notes) merged.notes.push_back(r.name + ": " + n);
    sub.push_back(Json{{"name", r.name}, {"pass", r.pass}, {"config", r.config}});
  }
  merged.config["sections"] = std::move(sub);
  return merged;
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

int cmd_modulus(const GlobalOpts& g, const std::string& body_path,
                const std::string& eps_spec, int boundary, int depth_dirs,
                const std::string& out) {
  BodyPtr body = body_from_file(body_path);
  std::vector<double> grid = parse_eps_spec(eps_spec);
  ModulusCfg mc;
  mc.boundary_points = boundary;
  mc.depth_dirs = depth_dirs;
  mc.threads = g.threads;
  ModulusTable t = estimate_modulus(*body, grid, mc, /*strict=*/false);
  bool any_flagged = false;
  for (auto r : t.realizable) any_flagged = any_flagged || !r;
  if (g.format == "csv") {
    write_text(out, modulus_table_to_csv(t));
  } else {
    write_text(out, modulus_table_to_json(t).dump(2) + "\n");
  }
  if (any_flagged)
    std::cerr << "note: some eps rows were not realizable (eps >= diameter); "
                 "rows flagged\n";
  return kExitPass;
}

int cmd_verify(const GlobalOpts& g, const std::string& body_path,
               const std::string& table_path, const std::string& eps_spec,
               int samples, bool expect_degenerate, const std::string& out) {
  auto t0 = std::chrono::steady_clock::now();
  Json body_doc = load_json(body_path);
  BodyFileInfo info = body_info_from_json(body_doc);
  VerifyCfg cfg;
  cfg.samples = samples;
  cfg.seed = g.seed;
  cfg.expect_not_uniformly_convex = expect_degenerate;
  cfg.strongly_convex_R = info.strongly_convex_R;
  cfg.modulus.threads = g.threads;
  if (!eps_spec.empty()) cfg.eps_grid = parse_eps_spec(eps_spec);

  std::vector<Report> reports;
  bool pass = true;
  if (!table_path.empty()) {
    // verify a supplied table instead of estimating
    ModulusTable t = modulus_table_from_json(load_json(table_path));
    if (t.diameter <= 0.0) t.diameter = diameter(*info.body);
    Modulus m = Modulus::table(t);
    std::vector<double> grid;
    for (std::size_t i = 0; i < t.eps.size(); ++i)
      if (t.realizable[i]) grid.push_back(t.eps[i]);
    reports.push_back(verify_scaling(m, {0.25, 0.5, 0.75}, grid, cfg.tol_table));
    reports.push_back(verify_monotonicity(m, grid, cfg.tol_table, false));
    reports.push_back(verify_diameter_bound(t));
    reports.push_back(verify_quadratic_cap(t, cfg.tol_table));
    reports.push_back(verify_supporting_continuity(*info.body, m, cfg.samples,
                                                   cfg.seed, cfg.tol_support));
    for (const auto& r : reports) pass = pass && r.pass;
  } else {
    BatteryResult battery = verify_battery(info.body, cfg);
    reports = std::move(battery.reports);
    pass = battery.pass;
  }
  Report merged = merge_reports("verify", reports);
  merged.config["body"] = body_doc;
  merged.config["seed"] = g.seed;
  merged.config["samples"] = samples;
  merged.config["expect_not_uniformly_convex"] = expect_degenerate;
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  write_report(merged, out, g.format, ms);
  return pass ? kExitPass : kExitFail;
}

int cmd_experiment(const GlobalOpts& g, const std::string& manifest_path,
                   const std::string& out) {
  auto t0 = std::chrono::steady_clock::now();
  Json manifest = load_json(manifest_path);
  ExperimentCfg cfg;
  cfg.seed = g.seed;
  cfg.projection.tol = g.tol;
  Report rep = run_experiment_manifest(manifest, cfg);
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  write_report(rep, out, g.format, ms);
  return report_exit(rep);
}

int cmd_compare(const std::string& a, const std::string& b) {
  Json ja = load_json(a);
  Json jb = load_json(b);
  ja.erase("meta");
  jb.erase("meta");
  if (ja.dump() == jb.dump()) {
    std::cout << "identical payloads\n";
    return kExitPass;
  }
  std::cout << "payloads differ\n";
  return kExitFail;
}

int cmd_suite(const GlobalOpts& g, const std::string& out_dir) {
  fs::create_directories(out_dir);
  int exit_code = kExitPass;
  auto emit = [&](const std::string& name, const Report& rep, double ms) {
    std::ofstream f(fs::path(out_dir) / (name + ".json"));
    f << report_file(rep, ms).dump(2) << "\n";
    int e = report_exit(rep);
    if (e == kExitInconclusive)
      exit_code = kExitInconclusive;
    else if (e != kExitPass && exit_code == kExitPass)
      exit_code = kExitFail;
    std::cout << (rep.pass ? "[PASS] " : (rep.inconclusive ? "[INCONCLUSIVE] " : "[FAIL] "))
              << name << "\n";
  };
  auto timed = [&](const std::string& name, auto&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    Report rep = fn();
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
    emit(name, rep, ms);
  };

  // section-2 battery over the suite bodies
  struct SuiteBody {
    std::string name;
    BodyPtr body;
    bool degenerate = false;
    double strongly_convex_R = 0.0;
  };
  std::vector<SuiteBody> bodies;
  bodies.push_back({"euclid_ball", make_pball({0.0, 0.0}, 1.0, 2.0), false, 0.0});
  bodies.push_back(
      {"l4_ball", make_pball(Space::lp(2, 4.0), {0.0, 0.0}, 1.0, 4.0), false, 0.0});
  bodies.push_back({"ball_intersection",
                    make_ball_intersection(1.3, {{-0.4, 0.0}, {0.4, 0.0}, {0.0, 0.4}}),
                    false, 1.3});
  bodies.push_back({"power_cap2", make_power_cap(2.0), false, 0.0});
  bodies.push_back({"power_cap3", make_power_cap(3.0), false, 0.0});
  bodies.push_back({"square",
                    make_polygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}),
                    true, 0.0});
  for (const auto& sb : bodies) {
    timed("verify_" + sb.name, [&] {
      VerifyCfg cfg;
      cfg.seed = g.seed;
      cfg.expect_not_uniformly_convex = sb.degenerate;
      cfg.strongly_convex_R = sb.strongly_convex_R;
      cfg.modulus.threads = g.threads;
      BatteryResult battery = verify_battery(sb.body, cfg);
      Report merged = merge_reports("verify_" + sb.name, battery.reports);
      merged.config["seed"] = g.seed;
      return merged;
    });
  }

  ExperimentCfg ecfg;
  ecfg.seed = g.seed;
  timed("thm31_example31", [&] {
    return verify_theorem_31(power_cap_family(2.0),
                             line_segment_family(1.05, 0.01, 0.25), ecfg);
  });
  timed("thm31_translating_balls", [&] {
    return verify_theorem_31(
        translating_ball_family({0.0, 0.0}, {1.0, 0.0}, 1.0, 0.0, 0.3),
        translating_ball_family({0.0, 0.0}, {-1.0, 0.0}, 1.0, 0.0, 0.3), ecfg);
  });
  timed("ex31_p2", [&] { return example_31_sharpness(2.0, 1e-4, 1e-2, 9, ecfg); });
  timed("ex31_p4", [&] { return example_31_sharpness(4.0, 1e-4, 1e-2, 9, ecfg); });
  timed("ex32", [&] {
    std::vector<std::pair<BodyPtr, BodyPtr>> cases;
    cases.emplace_back(make_pball({0.0, 0.0}, 1.0, 2.0),
                       make_pball({0.0, 0.1}, 1.0, 2.0));
    BodyPtr sq = make_polygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
    for (double h : {0.01, 0.05, 0.1, 0.2})
      cases.emplace_back(sq, translate(sq, {0.0, h}));
    return example_32_stability({3.0, 0.0}, cases, ecfg);
  });
  timed("lem32_diagonal", [&] {
    Matrix l(2, 4);
    l.at(0, 0) = 1.0;
    l.at(0, 2) = -1.0;
    l.at(1, 1) = 1.0;
    l.at(1, 3) = -1.0;
    LinearSurjection surj(std::move(l), 2);
    return verify_lemma_32(
        translating_ball_family({0.0, 0.0}, {1.0, 0.0}, 1.0, 0.0, 0.3),
        translating_ball_family({0.0, 0.0}, {1.0, 0.0}, 1.0, 0.0, 0.3), surj, ecfg);
  });
  timed("lem32_skew", [&] {
    Matrix l(2, 4);  // kernel {(y, 2y)}: L(y1,y2) = 2 y1 - y2
    l.at(0, 0) = 2.0;
    l.at(0, 2) = -1.0;
    l.at(1, 1) = 2.0;
    l.at(1, 3) = -1.0;
    LinearSurjection surj(std::move(l), 2);
    return verify_lemma_32(
        translating_ball_family({0.0, 0.0}, {1.0, 0.0}, 0.5, 0.0, 0.3),
        translating_ball_family({0.0, 0.0}, {2.0, 0.0}, 1.0, 0.0, 0.3), surj, ecfg);
  });
  timed("rem33_translating_balls", [&] {
    return remark_33_projection_holder(holder_family_translating_balls(), ecfg);
  });
  timed("rem33_rotating_ellipse", [&] {
    return remark_33_projection_holder(holder_family_rotating_ellipse(), ecfg);
  });
  timed("rem33_critical_dent", [&] {
    return remark_33_projection_holder(holder_family_critical_dent(), ecfg);
  });
  timed("split_sum", [&] {
    BodyPtr a = make_pball({3.0, 0.0}, 1.0, 2.0);
    BodyPtr b = make_polygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
    auto am = Modulus::euclid_ball(1.0).with_delta0(1.0).with_M(2.0);
    ExperimentCfg c = ecfg;
    return split_sum_experiment(a, b, 1000, c, am);
  });
  timed("split_kernel_projection", [&] {
    return split_kernel_projection_singleton(make_pball({2.0, 0.5}, 1.0, 2.0), ecfg);
  });
  timed("split_kernel_translating", [&] { return split_kernel_translating(ecfg); });
  timed("steiner", [&] { return steiner_experiment(100, ecfg); });

  std::cout << (exit_code == kExitPass ? "suite: all pass\n" : "suite: failures\n");
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uniformly convex sets: moduli, inequality battery, splitting experiments"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags are accepted after the subcommand name

  GlobalOpts g;
  app.add_option("--seed", g.seed, "RNG seed (default 42)");
  app.add_option("--tol", g.tol, "solver tolerance");
  app.add_option("--threads", g.threads, "worker threads");
  app.add_option("--format", g.format, "output format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  std::string body_path, table_path, eps_spec, out_path, manifest_path;
  int boundary = 1024, depth_dirs = 256, samples = 1000;
  bool expect_degenerate = false;

  auto* modulus_cmd = app.add_subcommand("modulus", "estimate a modulus table");
  modulus_cmd->add_option("--body", body_path, "body description JSON")->required();
  modulus_cmd->add_option("--eps", eps_spec, "grid MIN:MAX:COUNT[:log]")->required();
  modulus_cmd->add_option("--boundary", boundary, "boundary grid points");
  modulus_cmd->add_option("--depth-dirs", depth_dirs, "depth ray directions");
  modulus_cmd->add_option("--out", out_path, "output path (default stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "run the inequality battery");
  verify_cmd->add_option("--body", body_path, "body description JSON")->required();
  verify_cmd->add_option("--table", table_path, "verify this table instead of estimating");
  verify_cmd->add_option("--eps", eps_spec, "grid MIN:MAX:COUNT[:log]");
  verify_cmd->add_option("--samples", samples, "dual pairs for supporting continuity");
  verify_cmd->add_flag("--expect-not-uniformly-convex", expect_degenerate,
                       "degenerate modulus is expected (negative control)");
  verify_cmd->add_option("--out", out_path, "output path (default stdout)");

  auto* exp_cmd = app.add_subcommand("experiment", "run an experiment manifest");
  exp_cmd->add_option("--manifest", manifest_path, "experiment manifest JSON")->required();
  exp_cmd->add_option("--out", out_path, "output path (default stdout)");

  std::string suite_dir = "suite_out";
  auto* suite_cmd = app.add_subcommand("suite", "run the full verification suite");
  suite_cmd->add_option("--out", suite_dir, "output directory");

  std::string cmp_a, cmp_b;
  auto* cmp_cmd = app.add_subcommand("compare", "byte-compare report payloads");
  cmp_cmd->add_option("a", cmp_a, "first report")->required();
  cmp_cmd->add_option("b", cmp_b, "second report")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (modulus_cmd->parsed())
      return cmd_modulus(g, body_path, eps_spec, boundary, depth_dirs, out_path);
    if (verify_cmd->parsed())
      return cmd_verify(g, body_path, table_path, eps_spec, samples,
                        expect_degenerate, out_path);
    if (exp_cmd->parsed()) return cmd_experiment(g, manifest_path, out_path);
    if (suite_cmd->parsed()) return cmd_suite(g, suite_dir);
    if (cmp_cmd->parsed()) return cmd_compare(cmp_a, cmp_b);
  } catch (const HypothesisViolated& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const KernelParallel& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const LoadError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitInput;
}
