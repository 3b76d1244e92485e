#include "uconvex/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "uconvex/errors.hpp"
#include "uconvex/numerics.hpp"
#include "uconvex/solvers.hpp"

namespace uconvex {

namespace {

constexpr double kPi = std::numbers::pi;

// sup_{||x||_from <= 1} ||x||_to for lp norms on R^n.
double lp_embed_factor(int n, double from_p, double to_p) {
  if (to_p >= from_p) return 1.0;
  double inv_to = to_p == kInfExponent ? 0.0 : 1.0 / to_p;
  double inv_from = from_p == kInfExponent ? 0.0 : 1.0 / from_p;
  return std::pow(static_cast<double>(n), inv_to - inv_from);
}

SupportFn support_fn(const ConvexBody& b) {
  return [&b](const Vec& u) { return b.support_point(u).point; };
}

std::string vec_str(const Vec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

}  // namespace

// --------------------------------------------------------------------------
// PBall
// --------------------------------------------------------------------------

PBall::PBall(Space ambient, Vec center, double radius, double exponent)
    : ConvexBody(std::move(ambient)), center_(std::move(center)),
      radius_(radius), exponent_(exponent) {
  if (static_cast<int>(center_.size()) != dim())
    throw DimensionMismatch("pball center dimension");
  if (!all_finite(center_) || !std::isfinite(radius_))
    throw NonFiniteInput("pball parameters");
  if (radius_ <= 0.0) throw LoadError("pball radius must be positive");
  if (!(exponent_ >= 1.0)) throw LoadError("pball exponent must satisfy p >= 1");
}

bool PBall::contains(const Vec& x, double tol) const {
  return lp_dist(x, center_, exponent_) <= radius_ + tol;
}

double PBall::support_value(const Vec& u) const {
  check_direction(u);
  return dot(u, center_) + radius_ * lp_norm(u, dual_exponent(exponent_));
}

SupportPoint PBall::support_point(const Vec& u) const {
  check_direction(u);
  LpFacePoint f = lp_unit_ball_argmax(u, exponent_);
  Vec x = center_;
  axpy(radius_, f.point, x);
  return {std::move(x), support_value(u), f.unique};
}

double PBall::outer_radius() const {
  if (space_.is_product()) return radius_ * dim();
  return radius_ * lp_embed_factor(dim(), exponent_, space_.p());
}

double PBall::inner_radius_hint() const {
  if (space_.is_product()) return -1.0;
  return radius_ / lp_embed_factor(dim(), space_.p(), exponent_);
}

std::optional<Vec> PBall::project_closed_form(const Vec& x) const {
  if (!space_.solver_euclidean()) return std::nullopt;
  if (exponent_ == 2.0) {
    Vec d = sub(x, center_);
    double n = norm2(d);
    if (n <= radius_) return x;
    Vec y = center_;
    axpy(radius_ / n, d, y);
    return y;
  }
  if (exponent_ == kInfExponent) {
    Vec y(dim());
    for (int i = 0; i < dim(); ++i)
      y[i] = std::clamp(x[i], center_[i] - radius_, center_[i] + radius_);
    return y;
  }
  return std::nullopt;
}

std::string PBall::describe() const {
  std::ostringstream os;
  os << "pball[c=" << vec_str(center_) << ",r=" << radius_ << ",p=" << exponent_ << "]";
  return os.str();
}

// --------------------------------------------------------------------------
// Segment
// --------------------------------------------------------------------------

Segment::Segment(Space ambient, Vec a, Vec b)
    : ConvexBody(std::move(ambient)), a_(std::move(a)), b_(std::move(b)) {
  if (static_cast<int>(a_.size()) != dim() || static_cast<int>(b_.size()) != dim())
    throw DimensionMismatch("segment endpoint dimension");
  if (!all_finite(a_) || !all_finite(b_)) throw NonFiniteInput("segment endpoints");
}

bool Segment::contains(const Vec& x, double tol) const {
  Vec d = sub(b_, a_);
  if (space_.solver_euclidean() && !space_.is_product()) {
    double dd = dot(d, d);
    double t = dd > 0 ? std::clamp(dot(sub(x, a_), d) / dd, 0.0, 1.0) : 0.0;
    Vec p = a_;
    axpy(t, d, p);
    return space_.dist(x, p) <= tol;
  }
  auto dist_at = [&](double t) {
    Vec p = a_;
    axpy(t, d, p);
    return space_.dist(x, p);
  };
  double t = golden_min(dist_at, 0.0, 1.0, 80);
  return dist_at(t) <= tol;
}

double Segment::support_value(const Vec& u) const {
  check_direction(u);
  return std::max(dot(u, a_), dot(u, b_));
}

SupportPoint Segment::support_point(const Vec& u) const {
  check_direction(u);
  double va = dot(u, a_), vb = dot(u, b_);
  double scale = std::max({std::abs(va), std::abs(vb), 1.0});
  if (std::abs(va - vb) <= 1e-14 * scale) {
    const Vec& canon = lex_less(a_, b_) ? a_ : b_;
    return {canon, va, false};
  }
  return va > vb ? SupportPoint{a_, va, true} : SupportPoint{b_, vb, true};
}

Vec Segment::interior_point() const {
  Vec m = a_;
  axpy(1.0, b_, m);
  for (double& v : m) v *= 0.5;
  return m;
}

double Segment::outer_radius() const { return 0.5 * space_.dist(a_, b_) + 1e-12; }

std::optional<Vec> Segment::project_closed_form(const Vec& x) const {
  if (!space_.solver_euclidean()) return std::nullopt;
  Vec d = sub(b_, a_);
  double dd = dot(d, d);
  double t = dd > 0 ? std::clamp(dot(sub(x, a_), d) / dd, 0.0, 1.0) : 0.0;
  Vec p = a_;
  axpy(t, d, p);
  return p;
}

std::string Segment::describe() const {
  return "segment[" + vec_str(a_) + "-" + vec_str(b_) + "]";
}

// --------------------------------------------------------------------------
// Polytope
// --------------------------------------------------------------------------

std::vector<Vec> convex_hull_2d(std::vector<Vec> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec& p, const Vec& q) {
    return p[0] < q[0] || (p[0] == q[0] && p[1] < q[1]);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec& p, const Vec& q) {
                          return std::abs(p[0] - q[0]) < 1e-13 &&
                                 std::abs(p[1] - q[1]) < 1e-13;
                        }),
            pts.end());
  if (pts.size() < 3) return pts;
  auto cross = [](const Vec& o, const Vec& p, const Vec& q) {
    return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0]);
  };
  std::vector<Vec> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {  // lower
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  std::size_t lower = k + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {  // upper
    while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 0) --k;
    hull[k++] = *it;
  }
  hull.resize(k - 1);
  return hull;
}

Polytope::Polytope(Space ambient, std::vector<Vec> vertices)
    : ConvexBody(std::move(ambient)), verts_(std::move(vertices)) {
  if (verts_.empty()) throw LoadError("polytope needs vertices");
  for (const auto& v : verts_) {
    if (static_cast<int>(v.size()) != dim())
      throw DimensionMismatch("polytope vertex dimension");
    if (!all_finite(v)) throw NonFiniteInput("polytope vertex");
  }
  if (dim() == 2) {
    auto hull = convex_hull_2d(verts_);
    if (hull.size() >= 3) verts_ = std::move(hull);
  }
  centroid_ = zeros(dim());
  for (const auto& v : verts_) axpy(1.0 / verts_.size(), v, centroid_);
  for (const auto& v : verts_)
    outer_ = std::max(outer_, space_.dist(v, centroid_));
}

bool Polytope::contains(const Vec& x, double tol) const {
  if (dim() == 2 && verts_.size() >= 3) {
    for (std::size_t i = 0; i < verts_.size(); ++i) {
      const Vec& a = verts_[i];
      const Vec& b = verts_[(i + 1) % verts_.size()];
      double ex = b[0] - a[0], ey = b[1] - a[1];
      double cr = ex * (x[1] - a[1]) - ey * (x[0] - a[0]);
      double len = std::hypot(ex, ey);
      if (cr < -tol * std::max(len, 1e-30)) return false;
    }
    return true;
  }
  SolveCfg cfg;
  cfg.tol = std::max(tol * tol * 0.25, 1e-18);
  return cg_contains(support_fn(*this), centroid_, x, std::max(tol, 1e-12), cfg);
}

double Polytope::support_value(const Vec& u) const {
  check_direction(u);
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : verts_) best = std::max(best, dot(u, v));
  return best;
}

SupportPoint Polytope::support_point(const Vec& u) const {
  check_direction(u);
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : verts_) best = std::max(best, dot(u, v));
  double scale = std::max(std::abs(best), 1.0);
  const Vec* canon = nullptr;
  int ties = 0;
  for (const auto& v : verts_) {
    if (dot(u, v) >= best - 1e-12 * scale) {
      ++ties;
      if (!canon || lex_less(v, *canon)) canon = &v;
    }
  }
  return {*canon, best, ties <= 1};
}

double Polytope::outer_radius() const { return outer_ + 1e-12; }

double Polytope::inner_radius_hint() const {
  if (dim() != 2 || verts_.size() < 3 || space_.p() != 2.0) return -1.0;
  double r = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < verts_.size(); ++i) {
    const Vec& a = verts_[i];
    const Vec& b = verts_[(i + 1) % verts_.size()];
    double ex = b[0] - a[0], ey = b[1] - a[1];
    double len = std::hypot(ex, ey);
    if (len < 1e-14) continue;
    double d = (ex * (centroid_[1] - a[1]) - ey * (centroid_[0] - a[0])) / len;
    r = std::min(r, d);
  }
  return std::max(r, 0.0);
}

std::optional<Vec> Polytope::project_closed_form(const Vec& x) const {
  if (dim() != 2 || verts_.size() < 3 || !space_.solver_euclidean())
    return std::nullopt;
  if (contains(x, 0.0)) return x;
  double best = std::numeric_limits<double>::infinity();
  Vec arg;
  for (std::size_t i = 0; i < verts_.size(); ++i) {
    const Vec& a = verts_[i];
    const Vec& b = verts_[(i + 1) % verts_.size()];
    Vec d = sub(b, a);
    double dd = dot(d, d);
    double t = dd > 0 ? std::clamp(dot(sub(x, a), d) / dd, 0.0, 1.0) : 0.0;
    Vec p = a;
    axpy(t, d, p);
    double dist = norm2(sub(x, p));
    if (dist < best) {
      best = dist;
      arg = std::move(p);
    }
  }
  return arg;
}

double Polytope::exact_diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < verts_.size(); ++i)
    for (std::size_t j = i + 1; j < verts_.size(); ++j)
      d = std::max(d, space_.dist(verts_[i], verts_[j]));
  return d;
}

std::string Polytope::describe() const {
  std::ostringstream os;
  os << "polytope[" << verts_.size() << " verts, dim " << dim() << "]";
  return os.str();
}

// --------------------------------------------------------------------------
// PowerCap
// --------------------------------------------------------------------------

PowerCap::PowerCap(double p) : ConvexBody(Space::lp(2, 2.0)), p_(p) {
  if (!(p >= 2.0)) throw LoadError("power cap exponent must satisfy p >= 2");
  // corner: x^2 + x^{2p} = 1 on (0,1)
  corner_x_ = bisect_first_true(
      [&](double c) { return c * c + std::pow(c, 2.0 * p_) >= 1.0; }, 0.0, 1.0,
      1e-15);
  corner_y_ = std::pow(corner_x_, p_);
}

bool PowerCap::contains(const Vec& x, double tol) const {
  return x[1] >= std::pow(std::abs(x[0]), p_) - tol && norm2(x) <= 1.0 + tol;
}

double PowerCap::support_value(const Vec& u) const {
  return support_point(u).value;
}

SupportPoint PowerCap::support_point(const Vec& u) const {
  check_direction(u);
  std::vector<Vec> cands;
  cands.push_back({0.0, 0.0});
  cands.push_back({corner_x_, corner_y_});
  cands.push_back({-corner_x_, corner_y_});
  // interior critical points of <u, (x, |x|^p)> on each curve branch
  if (u[1] != 0.0) {
    double rhs = -u[0] / (p_ * u[1]);  // x^{p-1} on the right branch
    if (rhs > 0.0) {
      double xr = std::pow(rhs, 1.0 / (p_ - 1.0));
      if (xr < corner_x_) cands.push_back({xr, std::pow(xr, p_)});
    }
    double lhs = u[0] / (p_ * u[1]);  // (-x)^{p-1} on the left branch
    if (lhs > 0.0) {
      double xl = std::pow(lhs, 1.0 / (p_ - 1.0));
      if (xl < corner_x_) cands.push_back({-xl, std::pow(xl, p_)});
    }
  }
  // radial point of the circular arc
  double nu = norm2(u);
  Vec w{u[0] / nu, u[1] / nu};
  double aw = std::atan2(w[1], w[0]);
  double ac = std::atan2(corner_y_, corner_x_);
  if (aw >= ac && aw <= kPi - ac) cands.push_back(w);

  double best = -std::numeric_limits<double>::infinity();
  Vec arg;
  for (auto& c : cands) {
    double v = dot(u, c);
    if (v > best) {
      best = v;
      arg = std::move(c);
    }
  }
  return {std::move(arg), best, true};
}

std::string PowerCap::describe() const {
  std::ostringstream os;
  os << "power_cap[p=" << p_ << "]";
  return os.str();
}

// --------------------------------------------------------------------------
// Translate / Scale / LinearImage
// --------------------------------------------------------------------------

TranslateBody::TranslateBody(BodyPtr inner, Vec offset)
    : ConvexBody(inner->space()), inner_(std::move(inner)), offset_(std::move(offset)) {
  if (static_cast<int>(offset_.size()) != dim())
    throw DimensionMismatch("translate offset dimension");
  if (!all_finite(offset_)) throw NonFiniteInput("translate offset");
}

bool TranslateBody::contains(const Vec& x, double tol) const {
  return inner_->contains(sub(x, offset_), tol);
}

double TranslateBody::support_value(const Vec& u) const {
  return inner_->support_value(u) + dot(u, offset_);
}

SupportPoint TranslateBody::support_point(const Vec& u) const {
  SupportPoint sp = inner_->support_point(u);
  sp.point = add(sp.point, offset_);
  sp.value += dot(u, offset_);
  return sp;
}

Vec TranslateBody::interior_point() const {
  return add(inner_->interior_point(), offset_);
}

std::optional<Vec> TranslateBody::project_closed_form(const Vec& x) const {
  auto p = inner_->project_closed_form(sub(x, offset_));
  if (!p) return std::nullopt;
  return add(*p, offset_);
}

void TranslateBody::support_batch(std::span<const Vec> dirs, std::span<double> out) const {
  inner_->support_batch(dirs, out);
  for (std::size_t i = 0; i < dirs.size(); ++i) out[i] += dot(dirs[i], offset_);
}

std::string TranslateBody::describe() const {
  return inner_->describe() + "+v" + vec_str(offset_);
}

ScaleBody::ScaleBody(BodyPtr inner, double factor)
    : ConvexBody(inner->space()), inner_(std::move(inner)), factor_(factor) {
  if (factor_ == 0.0 || !std::isfinite(factor_))
    throw LoadError("scale factor must be finite and nonzero");
}

bool ScaleBody::contains(const Vec& x, double tol) const {
  return inner_->contains(scaled(x, 1.0 / factor_), tol / std::abs(factor_));
}

double ScaleBody::support_value(const Vec& u) const {
  return inner_->support_value(scaled(u, factor_));
}

SupportPoint ScaleBody::support_point(const Vec& u) const {
  SupportPoint sp = inner_->support_point(scaled(u, factor_));
  sp.point = scaled(sp.point, factor_);
  sp.value = dot(u, sp.point);
  return sp;
}

Vec ScaleBody::interior_point() const {
  return scaled(inner_->interior_point(), factor_);
}

double ScaleBody::outer_radius() const {
  return std::abs(factor_) * inner_->outer_radius();
}

double ScaleBody::inner_radius_hint() const {
  double h = inner_->inner_radius_hint();
  return h < 0 ? h : std::abs(factor_) * h;
}

std::optional<Vec> ScaleBody::project_closed_form(const Vec& x) const {
  auto p = inner_->project_closed_form(scaled(x, 1.0 / factor_));
  if (!p) return std::nullopt;
  return scaled(*p, factor_);
}

std::string ScaleBody::describe() const {
  return std::to_string(factor_) + "*" + inner_->describe();
}

LinearImageBody::LinearImageBody(BodyPtr inner, Matrix map, Matrix inverse_map)
    : ConvexBody(inner->space()), inner_(std::move(inner)), map_(std::move(map)),
      inv_(std::move(inverse_map)) {
  double f = 0.0, g = 0.0;
  for (double v : map_.a) f += v * v;
  for (double v : inv_.a) g += v * v;
  op_norm_bound_ = std::sqrt(f);
  inv_norm_bound_ = std::sqrt(g);
}

bool LinearImageBody::contains(const Vec& x, double tol) const {
  return inner_->contains(mat_vec(inv_, x), tol * inv_norm_bound_);
}

double LinearImageBody::support_value(const Vec& u) const {
  return inner_->support_value(mat_t_vec(map_, u));
}

SupportPoint LinearImageBody::support_point(const Vec& u) const {
  SupportPoint sp = inner_->support_point(mat_t_vec(map_, u));
  sp.point = mat_vec(map_, sp.point);
  sp.value = dot(u, sp.point);
  return sp;
}

Vec LinearImageBody::interior_point() const {
  return mat_vec(map_, inner_->interior_point());
}

double LinearImageBody::outer_radius() const {
  return op_norm_bound_ * inner_->outer_radius();
}

std::string LinearImageBody::describe() const {
  return "linear_image[" + inner_->describe() + "]";
}

// --------------------------------------------------------------------------
// Product
// --------------------------------------------------------------------------

ProductBody::ProductBody(std::vector<BodyPtr> parts)
    : ConvexBody(Space::product(parts.at(0)->space(), parts.at(1)->space())),
      parts_(std::move(parts)) {
  if (parts_.size() != 2) throw LoadError("product takes exactly two parts");
  offsets_ = {0, parts_[0]->dim()};
}

bool ProductBody::contains(const Vec& x, double tol) const {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    Vec xi = slice(x, offsets_[i], parts_[i]->dim());
    if (!parts_[i]->contains(xi, tol)) return false;
  }
  return true;
}

double ProductBody::support_value(const Vec& u) const {
  check_direction(u);
  double s = 0.0;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    Vec ui = slice(u, offsets_[i], parts_[i]->dim());
    bool zero = std::all_of(ui.begin(), ui.end(), [](double v) { return v == 0.0; });
    if (!zero) s += parts_[i]->support_value(ui);
  }
  return s;
}

SupportPoint ProductBody::support_point(const Vec& u) const {
  check_direction(u);
  Vec point;
  double value = 0.0;
  bool unique = true;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    Vec ui = slice(u, offsets_[i], parts_[i]->dim());
    bool zero = std::all_of(ui.begin(), ui.end(), [](double v) { return v == 0.0; });
    if (zero) {
      Vec ip = parts_[i]->interior_point();
      point.insert(point.end(), ip.begin(), ip.end());
      unique = false;
    } else {
      SupportPoint sp = parts_[i]->support_point(ui);
      point.insert(point.end(), sp.point.begin(), sp.point.end());
      value += sp.value;
      unique = unique && sp.unique;
    }
  }
  return {std::move(point), value, unique};
}

Vec ProductBody::interior_point() const {
  return concat(parts_[0]->interior_point(), parts_[1]->interior_point());
}

double ProductBody::outer_radius() const {
  return std::max(parts_[0]->outer_radius(), parts_[1]->outer_radius());
}

double ProductBody::inner_radius_hint() const {
  double a = parts_[0]->inner_radius_hint();
  double b = parts_[1]->inner_radius_hint();
  if (a < 0 || b < 0) return -1.0;
  return std::min(a, b);
}

std::optional<Vec> ProductBody::project_closed_form(const Vec& x) const {
  Vec x0 = slice(x, 0, parts_[0]->dim());
  Vec x1 = slice(x, offsets_[1], parts_[1]->dim());
  auto p0 = parts_[0]->project_closed_form(x0);
  auto p1 = parts_[1]->project_closed_form(x1);
  if (!p0 || !p1) return std::nullopt;
  return concat(*p0, *p1);
}

std::string ProductBody::describe() const {
  return parts_[0]->describe() + " x " + parts_[1]->describe();
}

// --------------------------------------------------------------------------
// Minkowski sum
// --------------------------------------------------------------------------

MinkowskiSumBody::MinkowskiSumBody(std::vector<BodyPtr> parts)
    : ConvexBody(parts.at(0)->space()), parts_(std::move(parts)) {
  for (const auto& p : parts_)
    if (!(p->space() == space_))
      throw DimensionMismatch("minkowski sum parts live in different spaces");
}

bool MinkowskiSumBody::contains(const Vec& x, double tol) const {
  SolveCfg cfg;
  cfg.tol = 1e-18;
  return cg_contains(support_fn(*this), interior_point(), x, std::max(tol, 1e-9), cfg);
}

double MinkowskiSumBody::support_value(const Vec& u) const {
  double s = 0.0;
  for (const auto& p : parts_) s += p->support_value(u);
  return s;
}

SupportPoint MinkowskiSumBody::support_point(const Vec& u) const {
  Vec point = zeros(dim());
  double value = 0.0;
  bool unique = true;
  for (const auto& p : parts_) {
    SupportPoint sp = p->support_point(u);
    axpy(1.0, sp.point, point);
    value += sp.value;
    unique = unique && sp.unique;
  }
  return {std::move(point), value, unique};
}

Vec MinkowskiSumBody::interior_point() const {
  Vec x = zeros(dim());
  for (const auto& p : parts_) axpy(1.0, p->interior_point(), x);
  return x;
}

double MinkowskiSumBody::outer_radius() const {
  double r = 0.0;
  for (const auto& p : parts_) r += p->outer_radius();
  return r;
}

std::string MinkowskiSumBody::describe() const {
  std::string s = "minkowski[";
  for (std::size_t i = 0; i < parts_.size(); ++i)
    s += (i ? " + " : "") + parts_[i]->describe();
  return s + "]";
}

// --------------------------------------------------------------------------
// Intersection
// --------------------------------------------------------------------------

namespace {

// Feasible strictly-interior point of an intersection, or throw.
Vec find_common_interior(const std::vector<BodyPtr>& parts,
                         const std::optional<Vec>& hint) {
  auto feasible = [&](const Vec& x, double tol) {
    for (const auto& p : parts)
      if (!p->contains(x, tol)) return false;
    return true;
  };
  Vec x;
  if (hint && feasible(*hint, 0.0)) {
    x = *hint;
  } else {
    x = zeros(parts[0]->dim());
    for (const auto& p : parts) axpy(1.0 / parts.size(), p->interior_point(), x);
    if (!feasible(x, 0.0)) {
      // averaged projections toward a common point
      SolveCfg cfg;
      cfg.tol = 1e-12;
      cfg.max_iters = 4000;
      bool ok = false;
      for (int k = 0; k < 600 && !ok; ++k) {
        Vec nxt = zeros(x.size());
        for (const auto& p : parts) {
          auto proj = p->project_closed_form(x);
          Vec px = proj ? *proj : cg_project(support_fn(*p), p->interior_point(), x, cfg).point;
          axpy(1.0 / parts.size(), px, nxt);
        }
        x = std::move(nxt);
        ok = feasible(x, 1e-12);
      }
      if (!ok) throw EmptyIntersection("no common point found");
    }
  }
  // Deepen: pull toward the average of surrounding boundary points so the
  // scan parametrization is well-conditioned.
  if (parts[0]->dim() == 2) {
    auto conj_contains = [&](const Vec& y, double tol) { return feasible(y, tol); };
    for (int round = 0; round < 6; ++round) {
      Vec acc = zeros(2);
      int m = 16;
      double rmin = std::numeric_limits<double>::infinity();
      for (int k = 0; k < m; ++k) {
        double a = 2.0 * kPi * k / m;
        Vec dir{std::cos(a), std::sin(a)};
        double hi = parts[0]->outer_radius() * 2.0 + 1.0;
        double t = bisect_first_true(
            [&](double s) {
              Vec y = x;
              axpy(s, dir, y);
              return !conj_contains(y, 0.0);
            },
            0.0, hi, 1e-9);
        rmin = std::min(rmin, t);
        Vec bp = x;
        axpy(t, dir, bp);
        axpy(1.0 / m, bp, acc);
      }
      if (rmin > 1e-6 && round >= 2) break;
      x = add(scaled(x, 0.5), scaled(acc, 0.5));
      if (!feasible(x, 0.0)) throw EmptyIntersection("intersection has no interior");
    }
  }
  return x;
}

}  // namespace

IntersectionBody::IntersectionBody(std::vector<BodyPtr> parts,
                                   std::optional<Vec> interior_hint)
    : ConvexBody(parts.at(0)->space()), parts_(std::move(parts)) {
  for (const auto& p : parts_)
    if (p->dim() != dim())
      throw DimensionMismatch("intersection parts live in different spaces");

  // A segment part degenerates the intersection to a clipped sub-segment.
  const Segment* seg = nullptr;
  for (const auto& p : parts_)
    if (auto* s = dynamic_cast<const Segment*>(p.get())) seg = s;
  if (seg) {
    Vec d = sub(seg->b(), seg->a());
    auto inside = [&](double t) {
      Vec y = seg->a();
      axpy(t, d, y);
      for (const auto& p : parts_) {
        if (p.get() == static_cast<const ConvexBody*>(seg)) continue;
        if (!p->contains(y, 1e-12)) return false;
      }
      return true;
    };
    const int grid = 512;
    int first = -1, last = -1;
    for (int i = 0; i <= grid; ++i) {
      if (inside(static_cast<double>(i) / grid)) {
        if (first < 0) first = i;
        last = i;
      }
    }
    if (first < 0) throw EmptyIntersection("segment misses the intersection");
    double lo = static_cast<double>(first) / grid;
    double hi = static_cast<double>(last) / grid;
    if (first > 0) {
      double out = (first - 1.0) / grid;  // infeasible end of the bracket
      for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (out + lo);
        (inside(mid) ? lo : out) = mid;
      }
    }
    if (last < grid) {
      double out = (last + 1.0) / grid;
      for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (hi + out);
        (inside(mid) ? hi : out) = mid;
      }
    }
    Vec a = seg->a(), b = seg->a();
    axpy(lo, d, a);
    axpy(hi, d, b);
    clipped_ = std::make_shared<Segment>(space_, std::move(a), std::move(b));
    interior_ = clipped_->interior_point();
    outer_ = clipped_->outer_radius();
    return;
  }

  interior_ = find_common_interior(parts_, interior_hint);
  outer_ = std::numeric_limits<double>::infinity();
  for (const auto& p : parts_)
    outer_ = std::min(outer_, space_.dist(p->interior_point(), interior_) +
                                  p->outer_radius());
}

bool IntersectionBody::contains(const Vec& x, double tol) const {
  for (const auto& p : parts_)
    if (!p->contains(x, tol)) return false;
  return true;
}

Vec IntersectionBody::boundary_at(double angle) const {
  Vec dir{std::cos(angle), std::sin(angle)};
  double hi = outer_ * 1.5 + 1.0;
  double t = bisect_first_true(
      [&](double s) {
        Vec y = interior_;
        axpy(s, dir, y);
        return !contains(y, 0.0);
      },
      0.0, hi, 1e-12);
  Vec y = interior_;
  axpy(t, dir, y);
  return y;
}

const IntersectionBody::Scan& IntersectionBody::scan() const {
  std::call_once(scan_once_, [this] {
    const int K = 1024;
    scan_.center = interior_;
    scan_.pts.resize(K);
    for (int k = 0; k < K; ++k)
      scan_.pts[k] = boundary_at(2.0 * kPi * k / K);
  });
  return scan_;
}

double IntersectionBody::support_value(const Vec& u) const {
  return support_point(u).value;
}

SupportPoint IntersectionBody::support_point(const Vec& u) const {
  check_direction(u);
  if (clipped_) return clipped_->support_point(u);
  if (dim() == 2) {
    const Scan& sc = scan();
    const int K = static_cast<int>(sc.pts.size());
    int best = 0;
    double bv = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < K; ++k) {
      double v = dot(u, sc.pts[k]);
      if (v > bv) {
        bv = v;
        best = k;
      }
    }
    double step = 2.0 * kPi / K;
    double lo = step * (best - 1), hi = step * (best + 1);
    Vec arg;
    double theta = golden_max(
        [&](double a) {
          Vec b = boundary_at(a);
          double v = dot(u, b);
          return v;
        },
        lo, hi, 48);
    arg = boundary_at(theta);
    return {arg, dot(u, arg), true};
  }
  // nD: chord-ascent from a boundary start; flagged approximate by contract.
  Vec x = interior_;
  double hi = outer_ * 1.5 + 1.0;
  auto push = [&](const Vec& from, const Vec& dir) {
    double t = bisect_first_true(
        [&](double s) {
          Vec y = from;
          axpy(s, dir, y);
          return !contains(y, 0.0);
        },
        0.0, hi, 1e-10);
    Vec y = from;
    axpy(t, dir, y);
    return y;
  };
  Vec un = scaled(u, 1.0 / norm2(u));
  x = push(x, un);
  auto dirs = sphere_grid(dim(), 2.0, 64);
  for (int round = 0; round < 8; ++round) {
    for (const auto& d : dirs) {
      Vec fwd = push(x, d);
      if (dot(u, fwd) > dot(u, x)) x = fwd;
    }
    x = push(x, un);
  }
  return {x, dot(u, x), true};
}

void IntersectionBody::support_batch(std::span<const Vec> dirs,
                                     std::span<double> out) const {
  if (clipped_ || dim() != 2) {
    ConvexBody::support_batch(dirs, out);
    return;
  }
  const Scan& sc = scan();
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    double bv = -std::numeric_limits<double>::infinity();
    for (const auto& p : sc.pts) bv = std::max(bv, dot(dirs[i], p));
    out[i] = bv;
  }
}

Vec IntersectionBody::interior_point() const { return interior_; }

double IntersectionBody::outer_radius() const { return outer_; }

std::string IntersectionBody::describe() const {
  std::string s = "intersection[";
  for (std::size_t i = 0; i < parts_.size(); ++i)
    s += (i ? " & " : "") + parts_[i]->describe();
  return s + "]";
}

// --------------------------------------------------------------------------
// AffineSliceBody
// --------------------------------------------------------------------------

AffineSliceBody::AffineSliceBody(BodyPtr host, Vec base, std::vector<Vec> basis,
                                 Vec interior_coords)
    : ConvexBody(Space::lp(static_cast<int>(basis.size()), 2.0)),
      host_(std::move(host)), base_(std::move(base)), basis_(std::move(basis)),
      interior_(std::move(interior_coords)) {
  if (!contains(interior_, 0.0))
    throw EmptyIntersection("slice interior hint is not feasible");
  radius_bound_ = norm2(sub(base_, host_->interior_point())) + host_->outer_radius() + 1.0;
}

Vec AffineSliceBody::embed(const Vec& coords) const {
  Vec x = base_;
  for (std::size_t i = 0; i < basis_.size(); ++i) axpy(coords[i], basis_[i], x);
  return x;
}

bool AffineSliceBody::contains(const Vec& a, double tol) const {
  return host_->contains(embed(a), tol);
}

Vec AffineSliceBody::boundary_at(double angle) const {
  Vec dir{std::cos(angle), std::sin(angle)};
  double t = bisect_first_true(
      [&](double s) {
        Vec y = interior_;
        axpy(s, dir, y);
        return !contains(y, 0.0);
      },
      0.0, radius_bound_, 1e-12);
  Vec y = interior_;
  axpy(t, dir, y);
  return y;
}

const AffineSliceBody::Scan& AffineSliceBody::scan() const {
  std::call_once(scan_once_, [this] {
    const int K = 1024;
    scan_.center = interior_;
    scan_.pts.resize(K);
    for (int k = 0; k < K; ++k)
      scan_.pts[k] = boundary_at(2.0 * kPi * k / K);
  });
  return scan_;
}

double AffineSliceBody::support_value(const Vec& u) const {
  return support_point(u).value;
}

SupportPoint AffineSliceBody::support_point(const Vec& u) const {
  check_direction(u);
  if (dim() != 2)
    throw NumericError("affine slice support implemented for 2-dim slices");
  const Scan& sc = scan();
  const int K = static_cast<int>(sc.pts.size());
  int best = 0;
  double bv = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < K; ++k) {
    double v = dot(u, sc.pts[k]);
    if (v > bv) {
      bv = v;
      best = k;
    }
  }
  double step = 2.0 * kPi / K;
  double theta = golden_max(
      [&](double a) { return dot(u, boundary_at(a)); }, step * (best - 1),
      step * (best + 1), 48);
  Vec arg = boundary_at(theta);
  return {arg, dot(u, arg), true};
}

void AffineSliceBody::support_batch(std::span<const Vec> dirs,
                                    std::span<double> out) const {
  if (dim() != 2) {
    ConvexBody::support_batch(dirs, out);
    return;
  }
  const Scan& sc = scan();
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    double bv = -std::numeric_limits<double>::infinity();
    for (const auto& p : sc.pts) bv = std::max(bv, dot(dirs[i], p));
    out[i] = bv;
  }
}

std::string AffineSliceBody::describe() const {
  return "slice[" + host_->describe() + "]";
}

// --------------------------------------------------------------------------
// Factories
// --------------------------------------------------------------------------

BodyPtr make_pball(Vec center, double radius, double exponent) {
  Space s = Space::lp(static_cast<int>(center.size()), 2.0);
  return std::make_shared<PBall>(std::move(s), std::move(center), radius, exponent);
}

BodyPtr make_pball(Space ambient, Vec center, double radius, double exponent) {
  return std::make_shared<PBall>(std::move(ambient), std::move(center), radius, exponent);
}

BodyPtr make_ball_intersection(double R, std::vector<Vec> centers) {
  if (centers.empty()) throw LoadError("ball intersection needs centers");
  const int n = static_cast<int>(centers[0].size());
  Space s = Space::lp(n, 2.0);
  std::vector<BodyPtr> balls;
  for (auto& c : centers)
    balls.push_back(std::make_shared<PBall>(s, c, R, 2.0));
  // min-max center of the defining centers as interior hint
  Vec x = zeros(n);
  for (const auto& c : centers) axpy(1.0 / centers.size(), c, x);
  for (int k = 1; k <= 400; ++k) {
    double worst = -1.0;
    const Vec* far = nullptr;
    for (const auto& c : centers) {
      double d = norm2(sub(x, c));
      if (d > worst) {
        worst = d;
        far = &c;
      }
    }
    if (!far || worst < 1e-14) break;
    Vec dir = sub(x, *far);
    axpy(-1.0 / (k + 1.0), dir, x);
  }
  double worst = 0.0;
  for (const auto& c : centers) worst = std::max(worst, norm2(sub(x, c)));
  if (worst >= R - 1e-12)
    throw EmptyIntersection("ball intersection has empty interior");
  return std::make_shared<IntersectionBody>(std::move(balls), x);
}

BodyPtr make_power_cap(double p) { return std::make_shared<PowerCap>(p); }

BodyPtr make_polygon(std::vector<Vec> vertices) {
  Space s = Space::lp(2, 2.0);
  return std::make_shared<Polytope>(std::move(s), std::move(vertices));
}

BodyPtr make_polytope(Space ambient, std::vector<Vec> vertices) {
  return std::make_shared<Polytope>(std::move(ambient), std::move(vertices));
}

BodyPtr make_segment(Vec a, Vec b) {
  Space s = Space::lp(static_cast<int>(a.size()), 2.0);
  return std::make_shared<Segment>(std::move(s), std::move(a), std::move(b));
}

BodyPtr make_segment(Space ambient, Vec a, Vec b) {
  return std::make_shared<Segment>(std::move(ambient), std::move(a), std::move(b));
}

BodyPtr translate(BodyPtr body, Vec offset) {
  return std::make_shared<TranslateBody>(std::move(body), std::move(offset));
}

BodyPtr scale_body(BodyPtr body, double factor) {
  return std::make_shared<ScaleBody>(std::move(body), factor);
}

BodyPtr make_product(BodyPtr a, BodyPtr b) {
  return std::make_shared<ProductBody>(std::vector<BodyPtr>{std::move(a), std::move(b)});
}

BodyPtr minkowski_sum(BodyPtr a, BodyPtr b) {
  return std::make_shared<MinkowskiSumBody>(
      std::vector<BodyPtr>{std::move(a), std::move(b)});
}

BodyPtr intersect(BodyPtr a, BodyPtr b, std::optional<Vec> interior_hint) {
  return std::make_shared<IntersectionBody>(
      std::vector<BodyPtr>{std::move(a), std::move(b)}, std::move(interior_hint));
}

BodyPtr symmetrize(BodyPtr a) {
  const int n = a->dim();
  Vec origin = zeros(n);
  if (!a->contains(origin, 0.0))
    throw OriginNotInterior("symmetrize requires 0 in the interior");
  // strictly interior: positive clearance along a direction sample
  auto dirs = sphere_grid(n, 2.0, std::max(16, 4 * n));
  for (const auto& d : dirs) {
    double t = bisect_first_true(
        [&](double s) { return !a->contains(scaled(d, s), 0.0); }, 0.0,
        a->outer_radius() * 2.0 + 1.0, 1e-11);
    if (t < 1e-9) throw OriginNotInterior("origin clearance below tolerance");
  }
  BodyPtr reflected = scale_body(a, -1.0);
  return std::make_shared<IntersectionBody>(
      std::vector<BodyPtr>{std::move(a), std::move(reflected)}, origin);
}

BodyPtr make_ellipse(Vec center, double semi_a, double semi_b, double angle) {
  if (semi_a <= 0 || semi_b <= 0) throw LoadError("ellipse semi-axes must be positive");
  Matrix m(2, 2), mi(2, 2);
  double c = std::cos(angle), s = std::sin(angle);
  // R(angle) * diag(a, b)
  m.at(0, 0) = c * semi_a;
  m.at(0, 1) = -s * semi_b;
  m.at(1, 0) = s * semi_a;
  m.at(1, 1) = c * semi_b;
  // diag(1/a, 1/b) * R(-angle)
  mi.at(0, 0) = c / semi_a;
  mi.at(0, 1) = s / semi_a;
  mi.at(1, 0) = -s / semi_b;
  mi.at(1, 1) = c / semi_b;
  BodyPtr ball = make_pball({0.0, 0.0}, 1.0, 2.0);
  BodyPtr img = std::make_shared<LinearImageBody>(std::move(ball), std::move(m), std::move(mi));
  return translate(std::move(img), std::move(center));
}

}  // namespace uconvex
