#include "uconvex/modulus.hpp"

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

// ---------------------------------------------------------------------------
// ModulusTable
// ---------------------------------------------------------------------------

double ModulusTable::max_eps() const {
  double m = 0.0;
  for (std::size_t i = 0; i < eps.size(); ++i)
    if (realizable.empty() || realizable[i]) m = std::max(m, eps[i]);
  return m;
}

double ModulusTable::max_value() const {
  double m = 0.0;
  for (std::size_t i = 0; i < delta.size(); ++i)
    if ((realizable.empty() || realizable[i]) && std::isfinite(delta[i]))
      m = std::max(m, delta[i]);
  return m;
}

namespace {

// Collect the realizable (eps, value) nodes of a table.
void table_nodes(const ModulusTable& t, std::vector<double>& xs,
                 std::vector<double>& ys) {
  for (std::size_t i = 0; i < t.eps.size(); ++i) {
    if (!t.realizable.empty() && !t.realizable[i]) continue;
    if (!std::isfinite(t.delta[i])) continue;
    xs.push_back(t.eps[i]);
    ys.push_back(t.delta[i]);
  }
}

double interp(const std::vector<double>& xs, const std::vector<double>& ys,
              double x) {
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  if (it == xs.begin()) {
    // linear through the origin up to the first node
    double x0 = xs.front();
    return x0 > 0 ? ys.front() * (x / x0) : ys.front();
  }
  if (it == xs.end()) throw OutOfRange("modulus evaluated beyond the grid");
  std::size_t j = static_cast<std::size_t>(it - xs.begin());
  double x0 = xs[j - 1], x1 = xs[j];
  double w = (x - x0) / (x1 - x0);
  return ys[j - 1] * (1.0 - w) + ys[j] * w;
}

}  // namespace

double ModulusTable::eval(double e) const {
  if (e == 0.0) return 0.0;
  if (e < 0.0) throw OutOfRange("negative chord length");
  std::vector<double> xs, ys;
  table_nodes(*this, xs, ys);
  if (xs.empty()) throw OutOfRange("empty modulus table");
  return interp(xs, ys, e);
}

double ModulusTable::ratio_eval(double e) const {
  // Certified lower bound of delta(e)/e from the cleaned table: the ratio at
  // the last node <= e (the ratio is nondecreasing after cleanup, and linear
  // interpolation would overestimate across jumps of degenerate bodies);
  // 0 below the grid, delta(last)/e beyond it.
  if (e <= 0.0) return 0.0;
  std::vector<double> xs, ys;
  table_nodes(*this, xs, ys);
  if (xs.empty()) throw OutOfRange("empty modulus table");
  if (e < xs.front()) return 0.0;
  if (e >= xs.back()) return ys.back() / e;
  auto it = std::upper_bound(xs.begin(), xs.end(), e);
  std::size_t j = static_cast<std::size_t>(it - xs.begin()) - 1;
  return ys[j] / xs[j];
}

bool ModulusTable::all_zero() const {
  for (std::size_t i = 0; i < delta.size(); ++i)
    if ((realizable.empty() || realizable[i]) && delta[i] > 1e-12) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Modulus
// ---------------------------------------------------------------------------

Modulus Modulus::euclid_ball(double r) {
  Modulus m;
  m.kind_ = Kind::EuclidBall;
  m.param_ = r;
  return m;
}

Modulus Modulus::power(double p) {
  Modulus m;
  m.kind_ = Kind::Power;
  m.param_ = p;
  return m;
}

Modulus Modulus::min_power(double p, double quad_coeff) {
  Modulus m;
  m.kind_ = Kind::MinPower;
  m.param_ = p;
  m.quad_coeff_ = quad_coeff;
  return m;
}

Modulus Modulus::strongly_convex_lower(double R, Modulus ambient) {
  Modulus m;
  m.kind_ = Kind::ScaledAmbient;
  m.param_ = R;
  m.ambient_ = std::make_shared<Modulus>(std::move(ambient));
  return m;
}

Modulus Modulus::table(ModulusTable t) {
  Modulus m;
  m.kind_ = Kind::Table;
  m.table_ = std::make_shared<ModulusTable>(std::move(t));
  return m;
}

const ModulusTable* Modulus::table_data() const { return table_.get(); }

double Modulus::eval(double eps) const {
  if (eps < 0.0) throw OutOfRange("negative chord length");
  switch (kind_) {
    case Kind::EuclidBall: {
      double r = param_;
      if (eps > 2.0 * r + 1e-12) throw OutOfRange("chord exceeds ball diameter");
      double s = std::min(eps, 2.0 * r);
      return r - std::sqrt(std::max(0.0, r * r - s * s / 4.0));
    }
    case Kind::Power:
      return std::pow(eps / 2.0, param_);
    case Kind::MinPower:
      return std::min(std::pow(eps / 2.0, param_), quad_coeff_ * eps * eps);
    case Kind::ScaledAmbient:
      return param_ * ambient_->eval(eps / param_);
    case Kind::Table:
      return table_->eval(eps);
  }
  return 0.0;
}

double Modulus::domain_max() const {
  switch (kind_) {
    case Kind::EuclidBall:
      return 2.0 * param_;
    case Kind::Power:
    case Kind::MinPower:
      return kInf;
    case Kind::ScaledAmbient:
      return param_ * ambient_->domain_max();
    case Kind::Table:
      return table_->max_eps();
  }
  return kInf;
}

double Modulus::sup_value() const {
  switch (kind_) {
    case Kind::EuclidBall:
      return param_;
    case Kind::Power:
    case Kind::MinPower:
      return kInf;
    case Kind::ScaledAmbient:
      return param_ * ambient_->sup_value();
    case Kind::Table:
      return table_->max_value();
  }
  return kInf;
}

double Modulus::inverse(double y) const {
  if (y < 0.0) throw OutOfRange("inverse of negative value");
  if (y == 0.0) return 0.0;
  if (y > sup_value() * (1.0 + 1e-12))
    throw OutOfRange("value above the modulus range");
  switch (kind_) {
    case Kind::EuclidBall: {
      double r = param_;
      double yy = std::min(y, r);
      return 2.0 * std::sqrt(std::max(0.0, 2.0 * r * yy - yy * yy));
    }
    case Kind::Power:
      return 2.0 * std::pow(y, 1.0 / param_);
    case Kind::MinPower:
      // inverse of a min of increasing maps: max of the inverses
      return std::max(2.0 * std::pow(y, 1.0 / param_),
                      std::sqrt(y / quad_coeff_));
    case Kind::ScaledAmbient:
      return param_ * ambient_->inverse(y / param_);
    case Kind::Table: {
      // sandwich inverse: midpoint of the matching parameter interval
      std::vector<double> xs, ys;
      table_nodes(*table_, xs, ys);
      if (xs.empty()) throw OutOfRange("empty modulus table");
      xs.insert(xs.begin(), 0.0);
      ys.insert(ys.begin(), 0.0);
      double lo = xs.back(), hi = 0.0;
      for (std::size_t j = 1; j < xs.size(); ++j) {
        double y0 = ys[j - 1], y1 = ys[j];
        double ymin = std::min(y0, y1), ymax = std::max(y0, y1);
        if (y < ymin - 0.0 || y > ymax) continue;
        double x;
        if (y1 == y0)
          x = xs[j - 1];  // flat: whole segment matches
        else
          x = xs[j - 1] + (xs[j] - xs[j - 1]) * (y - y0) / (y1 - y0);
        if (y1 == y0) {
          lo = std::min(lo, xs[j - 1]);
          hi = std::max(hi, xs[j]);
        } else {
          lo = std::min(lo, x);
          hi = std::max(hi, x);
        }
      }
      if (lo > hi) {
        // y above the table sup within tolerance: clamp to the last node
        return xs.back();
      }
      return 0.5 * (lo + hi);
    }
  }
  return 0.0;
}

Modulus& Modulus::with_r0(double r0) {
  r0_ = r0;
  double e = std::min(2.0 * r0, domain_max());
  delta0_ = eval(e);
  return *this;
}

Modulus& Modulus::with_delta0(double d0) {
  delta0_ = d0;
  return *this;
}

Modulus& Modulus::with_M(double M) {
  big_m_ = M;
  return *this;
}

// ---------------------------------------------------------------------------
// depth
// ---------------------------------------------------------------------------

namespace {

double depth_impl(const ConvexBody& body, const Vec& x, double cutoff,
                  const ModulusCfg& cfg) {
  if (!body.contains(x, 1e-10)) throw OutsidePoint("depth: point outside the body");
  const int n = body.dim();
  if (n == 2 && !body.space().is_product()) {
    const int m = cfg.depth_dirs;
    const double p = body.space().p();
    std::vector<double> t(m);
    double coarse = kInf;
    for (int k = 0; k < m; ++k) {
      double a = 2.0 * kPi * k / m;
      Vec dir{std::cos(a), std::sin(a)};
      double dn = lp_norm(dir, p);
      dir[0] /= dn;
      dir[1] /= dn;
      t[k] = ray_distance(body, x, dir, cfg.bisect_tol);
      coarse = std::min(coarse, t[k]);
    }
    // coarse minimum over the grid overestimates the true depth by at most
    // O(step^2) curvature; abandon when certifiably above the cutoff
    double step = 2.0 * kPi / m;
    double safety = 4.0 * body.outer_radius() * step * step;
    if (coarse > cutoff + safety || !cfg.refine) return coarse;
    // golden-refine the few deepest valleys
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int i, int j) { return t[i] < t[j]; });
    auto ray_at = [&](double a) {
      Vec dir{std::cos(a), std::sin(a)};
      double dn = lp_norm(dir, p);
      dir[0] /= dn;
      dir[1] /= dn;
      return ray_distance(body, x, dir, cfg.bisect_tol);
    };
    double best = coarse;
    int refined = 0;
    for (int idx : order) {
      if (refined >= 3) break;
      if (t[idx] > coarse + safety) break;
      double prev = t[(idx + m - 1) % m], next = t[(idx + 1) % m];
      if (t[idx] > prev || t[idx] > next) continue;  // not a local valley
      double a0 = step * (idx - 1), a1 = step * (idx + 1);
      double amin = golden_min(ray_at, a0, a1, 44);
      best = std::min(best, ray_at(amin));
      ++refined;
    }
    return best;
  }
  auto dirs = primal_sphere_grid(body.space(), cfg.depth_dirs * 8);
  double best = kInf;
  for (const auto& d : dirs) {
    best = std::min(best, ray_distance(body, x, d, cfg.bisect_tol));
    if (best <= 0.0) break;
  }
  return best;
}

}  // namespace

double depth(const ConvexBody& body, const Vec& x, const ModulusCfg& cfg) {
  return depth_impl(body, x, -kInf, cfg);
}

double depth_below(const ConvexBody& body, const Vec& x, double cutoff,
                   const ModulusCfg& cfg) {
  return depth_impl(body, x, cutoff, cfg);
}

double inner_radius(const ConvexBody& body, const ModulusCfg& cfg) {
  return depth(body, body.interior_point(), cfg);
}

// ---------------------------------------------------------------------------
// estimate_modulus
// ---------------------------------------------------------------------------

namespace {

struct BoundaryScan {
  std::vector<Vec> pts;
  std::vector<double> angles;
  Vec center;
};

BoundaryScan scan_boundary_2d(const ConvexBody& body, const ModulusCfg& cfg) {
  BoundaryScan sc;
  sc.center = body.interior_point();
  const int K = cfg.boundary_points;
  const double p = body.space().p();
  sc.pts.resize(K);
  sc.angles.resize(K);
  for (int k = 0; k < K; ++k) {
    double a = 2.0 * kPi * k / K;
    Vec dir{std::cos(a), std::sin(a)};
    double dn = lp_norm(dir, p);
    dir[0] /= dn;
    dir[1] /= dn;
    sc.angles[k] = a;
    sc.pts[k] = boundary_point_from(body, sc.center, dir, cfg.bisect_tol);
  }
  return sc;
}

Vec boundary_at_angle(const ConvexBody& body, const Vec& center, double a,
                      const ModulusCfg& cfg) {
  Vec dir{std::cos(a), std::sin(a)};
  double dn = lp_norm(dir, body.space().p());
  dir[0] /= dn;
  dir[1] /= dn;
  return boundary_point_from(body, center, dir, cfg.bisect_tol);
}

// One pass for a single chord length in the plane. Returns the minimum
// midpoint depth over realized pairs, or nullopt when no pair exists.
std::optional<double> estimate_eps_2d(const ConvexBody& body,
                                      const BoundaryScan& sc, double eps,
                                      const ModulusCfg& cfg) {
  const int K = static_cast<int>(sc.pts.size());
  const double p = body.space().p();
  const double chord_window = cfg.chord_tol_rel * eps;
  double best = kInf;
  bool found = false;
  for (int k = 0; k < K; ++k) {
    const Vec& base = sc.pts[k];
    // first crossing of ||b(theta) - base|| above eps, scanning forward
    double prev_g = 0.0;
    double prev_angle = sc.angles[k];
    int hit = -1;
    double hit_angle = 0.0;
    for (int s = 1; s < K; ++s) {
      int j = (k + s) % K;
      double g = lp_dist(sc.pts[j], base, p);
      double ang = sc.angles[k] + 2.0 * kPi * s / K;
      if (prev_g < eps && g >= eps) {
        hit = j;
        hit_angle = ang;
        break;
      }
      prev_g = g;
      prev_angle = ang;
    }
    if (hit < 0) continue;  // eps not realizable from this base point
    // refine the crossing angle so the chord is realized (far inside the
    // mandated window)
    double lo = prev_angle, hi = hit_angle;
    for (int it = 0; it < 48 && hi - lo > 1e-12; ++it) {
      double mid = 0.5 * (lo + hi);
      double g = lp_dist(boundary_at_angle(body, sc.center, mid, cfg), base, p);
      if (g >= eps)
        hi = mid;
      else
        lo = mid;
    }
    Vec partner = boundary_at_angle(body, sc.center, 0.5 * (lo + hi), cfg);
    double chord = lp_dist(partner, base, p);
    if (std::abs(chord - eps) > chord_window) continue;
    found = true;
    Vec mid = scaled(add(base, partner), 0.5);
    double d = depth_below(body, mid, best, cfg);
    best = std::min(best, d);
    if (best <= 0.0) break;
  }
  if (!found) return std::nullopt;
  return best;
}

// Sampled estimate in dimension >= 3 (upper-biased: sampled pairs, sampled
// depth directions).
std::optional<double> estimate_eps_nd(const ConvexBody& body, double eps,
                                      const ModulusCfg& cfg) {
  auto dirs = primal_sphere_grid(body.space(), cfg.nd_boundary);
  std::vector<Vec> pts(dirs.size());
  Vec c = body.interior_point();
  for (std::size_t i = 0; i < dirs.size(); ++i)
    pts[i] = boundary_point_from(body, c, dirs[i], cfg.bisect_tol);
  const Space& sp = body.space();
  double best = kInf;
  bool found = false;
  int used = 0;
  auto slerp = [](const Vec& a, const Vec& b, double s) {
    Vec v = add(scaled(a, 1.0 - s), scaled(b, s));
    double n = norm2(v);
    if (n < 1e-12) return a;
    return scaled(v, 1.0 / n);
  };
  for (std::size_t i = 0; i < pts.size() && used < cfg.nd_pairs; ++i) {
    for (std::size_t j = i + 1; j < pts.size() && used < cfg.nd_pairs; ++j) {
      double g = sp.dist(pts[i], pts[j]);
      if (g < eps) continue;
      // realize the chord by sliding j's direction toward i's
      double lo = 0.0, hi = 1.0;  // s=0 -> at j (g >= eps), s=1 -> at i (0)
      Vec pj = pts[j];
      for (int it = 0; it < 40; ++it) {
        double s = 0.5 * (lo + hi);
        Vec bd = boundary_point_from(body, c, slerp(dirs[j], dirs[i], s),
                                     cfg.bisect_tol);
        double gg = sp.dist(bd, pts[i]);
        if (gg >= eps)
          lo = s;
        else
          hi = s;
        pj = bd;
      }
      double chord = sp.dist(pj, pts[i]);
      if (std::abs(chord - eps) > cfg.chord_tol_rel * eps) continue;
      ++used;
      found = true;
      Vec mid = scaled(add(pts[i], pj), 0.5);
      best = std::min(best, depth_below(body, mid, best, cfg));
    }
  }
  if (!found) return std::nullopt;
  return best;
}

}  // namespace

double estimate_modulus_at(const ConvexBody& body, double eps,
                           const ModulusCfg& cfg) {
  ModulusTable t = estimate_modulus(body, {eps}, cfg, true);
  return t.delta.at(0);
}

ModulusTable estimate_modulus(const ConvexBody& body,
                              const std::vector<double>& eps_grid,
                              const ModulusCfg& cfg, bool strict) {
  if (eps_grid.empty()) throw LoadError("empty eps grid");
  for (double e : eps_grid)
    if (!(e > 0.0) || !std::isfinite(e))
      throw LoadError("eps grid entries must be positive finite");
  double r_in = inner_radius(body, cfg);
  if (r_in <= 1e-12)
    throw NumericError("estimate_modulus requires a body with interior");

  ModulusTable t;
  t.eps = eps_grid;
  std::sort(t.eps.begin(), t.eps.end());
  const std::size_t n = t.eps.size();
  t.raw.assign(n, std::numeric_limits<double>::quiet_NaN());
  t.delta.assign(n, std::numeric_limits<double>::quiet_NaN());
  t.realizable.assign(n, 0);
  t.body_id = body.describe();
  t.boundary_points = cfg.boundary_points;
  t.depth_dirs = cfg.depth_dirs;
  t.chord_tol_rel = cfg.chord_tol_rel;
  t.diameter = diameter(body);
  t.upper_bias = body.dim() > 2;

  const bool planar = body.dim() == 2 && !body.space().is_product();
  std::optional<BoundaryScan> scan;
  if (planar) scan = scan_boundary_2d(body, cfg);

  std::vector<std::optional<double>> results(n);
  parallel_for(
      n, cfg.threads,
      [&](std::size_t i) {
        double e = t.eps[i];
        if (e >= t.diameter) {
          results[i] = std::nullopt;
          return;
        }
        results[i] = planar ? estimate_eps_2d(body, *scan, e, cfg)
                            : estimate_eps_nd(body, e, cfg);
      });
  for (std::size_t i = 0; i < n; ++i) {
    if (results[i]) {
      t.raw[i] = std::max(0.0, *results[i]);
      t.realizable[i] = 1;
    } else if (strict) {
      throw ChordNotRealizable("no boundary pair attains eps = " +
                               format_double(t.eps[i]));
    }
  }

  // isotonic cleanup on the ratio delta/eps (keeps delta and delta/eps
  // nondecreasing); raw retained
  std::vector<double> ratios;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i)
    if (t.realizable[i]) {
      ratios.push_back(t.raw[i] / t.eps[i]);
      idx.push_back(i);
    }
  if (!ratios.empty()) {
    auto cleaned = pava_nondecreasing(ratios);
    for (std::size_t k = 0; k < idx.size(); ++k)
      t.delta[idx[k]] = std::max(0.0, cleaned[k] * t.eps[idx[k]]);
  }
  return t;
}

// ---------------------------------------------------------------------------
// derived operations
// ---------------------------------------------------------------------------

double inverse_modulus(const Modulus& m, double y) { return m.inverse(y); }

double phi(const Modulus& m, double eps) {
  if (!(eps > 0.0)) throw OutOfRange("phi requires eps > 0");
  if (m.kind() == Modulus::Kind::Table)
    return 4.0 * m.table_data()->ratio_eval(eps);
  return 4.0 * m.eval(eps) / eps;
}

double f_bound(const Modulus& m, double x) {
  if (x < 0.0) throw OutOfRange("f is defined for x >= 0");
  if (!m.delta0() || !m.M())
    throw ConfigMissing("f needs Delta0 and M attached to the modulus");
  double d0 = *m.delta0();
  double big_m = *m.M();
  if (!(d0 > 0.0) || !(big_m > 0.0))
    throw ConfigMissing("Delta0 and M must be positive");
  if (x < 2.0 * d0) return m.inverse(x / 2.0);
  return big_m * x / (2.0 * d0);
}

double strongly_convex_lower_value(double R, const Modulus& ambient, double eps) {
  if (!(eps > 0.0) || eps >= 2.0 * R * (1.0 + 1e-12))
    throw OutOfRange("strong convexity bound needs eps in (0, 2R)");
  return R * ambient.eval(eps / R);
}

}  // namespace uconvex
