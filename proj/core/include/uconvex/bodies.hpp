#pragma once

#include <mutex>
#include <vector>

#include "uconvex/body.hpp"
#include "uconvex/linalg.hpp"

namespace uconvex {

// ---------------------------------------------------------------------------
// Closed-form variants
// ---------------------------------------------------------------------------

// {x : ||x - center||_pb <= r}. The ball exponent may differ from the
// ambient exponent (an l4 ball measured in l2, etc.).
class PBall final : public ConvexBody {
 public:
  PBall(Space ambient, Vec center, double radius, double exponent);

  bool contains(const Vec& x, double tol) const override;
  double support_value(const Vec& u) const override;
  SupportPoint support_point(const Vec& u) const override;
  Vec interior_point() const override { return center_; }
  double outer_radius() const override;
  double inner_radius_hint() const override;
  std::optional<Vec> project_closed_form(const Vec& x) const override;
  bool strictly_convex() const override {
    return exponent_ > 1.0 && exponent_ != kInfExponent;
  }
  std::string describe() const override;

  const Vec& center() const { return center_; }
  double radius() const { return radius_; }
  double exponent() const { return exponent_; }

 private:
  Vec center_;
  double radius_;
  double exponent_;
};

// Segment [a, b].
class Segment final : public ConvexBody {
 public:
  Segment(Space ambient, Vec a, Vec b);

  bool contains(const Vec& x, double tol) const override;
  double support_value(const Vec& u) const override;
  SupportPoint support_point(const Vec& u) const override;
  Vec interior_point() const override;
  double outer_radius() const override;
  std::optional<Vec> project_closed_form(const Vec& x) const override;
  std::string describe() const override;

  const Vec& a() const { return a_; }
  const Vec& b() const { return b_; }

 private:
  Vec a_, b_;
};

// Convex hull of a vertex list. In the plane the hull is computed and
// membership/projection are exact; in higher dimension membership falls back
// to a conditional-gradient distance test.
class Polytope final : public ConvexBody {
 public:
  Polytope(Space ambient, std::vector<Vec> vertices);

  bool contains(const Vec& x, double tol) const override;
  double support_value(const Vec& u) const override;
  SupportPoint support_point(const Vec& u) const override;
  Vec interior_point() const override { return centroid_; }
  double outer_radius() const override;
  double inner_radius_hint() const override;
  std::optional<Vec> project_closed_form(const Vec& x) const override;
  std::string describe() const override;

  const std::vector<Vec>& vertices() const { return verts_; }
  double exact_diameter() const;  // max vertex pair distance (ambient norm)

 private:
  std::vector<Vec> verts_;  // 2D: ccw hull order
  Vec centroid_;
  double outer_ = 0.0;
};

// {x2 >= |x1|^p} ∩ B_1(0) in the Euclidean plane, p >= 2.
class PowerCap final : public ConvexBody {
 public:
  explicit PowerCap(double p);

  bool contains(const Vec& x, double tol) const override;
  double support_value(const Vec& u) const override;
  SupportPoint support_point(const Vec& u) const override;
  Vec interior_point() const override { return {0.0, 0.5}; }
  double outer_radius() const override { return 1.6; }
  double inner_radius_hint() const override { return 0.5; }
  bool strictly_convex() const override { return true; }
  std::string describe() const override;

  double exponent() const { return p_; }
  double corner_x() const { return corner_x_; }  // curve/circle junction

 private:
  double p_;
  double corner_x_, corner_y_;
};

// ---------------------------------------------------------------------------
// Wrappers and combinators
// ---------------------------------------------------------------------------

class TranslateBody final : public ConvexBody {
 public:
  TranslateBody(BodyPtr inner, Vec offset);
  bool contains(const Vec& x, double tol) const override;
  double support_value(const Vec& u) const override;
  SupportPoint support_point(const Vec& u) const override;
  Vec interior_point() const override;
  double outer_radius() const override { return inner_->outer_radius(); }
  double inner_radius_hint() const override { return inner_->inner_radius_hint(); }
  std::optional<Vec> project_closed_form(const Vec& x) const override;
  void support_batch(std::span<const Vec> dirs, std::span<double> out) const override;
  bool strictly_convex() const override { return inner_->strictly_convex(); }
  std::string describe() const override;
  const BodyPtr& inner() const { return inner_; }
  const Vec& offset() const { return offset_; }

 private:
  BodyPtr inner_;
  Vec offset_;
};

class ScaleBody final : public ConvexBody {
 public:
  ScaleBody(BodyPtr inner, double factor);  // factor != 0; negative reflects
  bool contains(const Vec& x, double tol) const override;
  double support_value(const Vec& u) const override;
  SupportPoint support_point(const Vec& u) const override;
  Vec interior_point() const override;
  double outer_radius() const override;
  double inner_radius_hint() const override;
  std::optional<Vec> project_closed_form(const Vec& x) const override;
  bool strictly_convex() const override { return inner_->strictly_convex(); }
  std::string describe() const override;
  const BodyPtr& inner() const { return inner_; }
  double factor() const { return factor_; }

 private:
  BodyPtr inner_;
  double factor_;
};

// Image M·A of a body under an invertible linear map (ellipses and rotated
// bodies for the experiments).
class LinearImageBody final : public ConvexBody {
 public:
  LinearImageBody(BodyPtr inner, Matrix map, Matrix inverse_map);
  bool contains(const Vec& x, double tol) const override;
  double support_value(const Vec& u) const override;
  SupportPoint support_point(const Vec& u) const override;
  Vec interior_point() const override;
  double outer_radius() const override;
  bool strictly_convex() const override { return inner_->strictly_convex(); }
  std::string describe() const override;

 private:
  BodyPtr inner_;
  Matrix map_, inv_;
  double op_norm_bound_;
  double inv_norm_bound_;
};

// A × B in the max-norm product space.
class ProductBody final : public ConvexBody {
 public:
  ProductBody(std::vector<BodyPtr> parts);
  bool contains(const Vec& x, double tol) const override;
  double support_value(const Vec& u) const override;
  SupportPoint support_point(const Vec& u) const override;
  Vec interior_point() const override;
  double outer_radius() const override;
  double inner_radius_hint() const override;
  std::optional<Vec> project_closed_form(const Vec& x) const override;
  std::string describe() const override;
  const std::vector<BodyPtr>& parts() const { return parts_; }

 private:
  std::vector<BodyPtr> parts_;
  std::vector<int> offsets_;
};

class MinkowskiSumBody final : public ConvexBody {
 public:
  MinkowskiSumBody(std::vector<BodyPtr> parts);
  bool contains(const Vec& x, double tol) const override;
  double support_value(const Vec& u) const override;
  SupportPoint support_point(const Vec& u) const override;
  Vec interior_point() const override;
  double outer_radius() const override;
  bool strictly_convex() const override {
    for (const auto& p : parts_)
      if (!p->strictly_convex()) return false;
    return true;
  }
  std::string describe() const override;
  const std::vector<BodyPtr>& parts() const { return parts_; }

 private:
  std::vector<BodyPtr> parts_;
};

// Intersection with conjunction membership. Support in the plane comes from
// a cached boundary scan (golden-section refined); an intersection with a
// Segment degenerates to the clipped sub-segment, handled exactly. Support in
// higher dimension is a flagged approximation.
class IntersectionBody final : public ConvexBody {
 public:
  IntersectionBody(std::vector<BodyPtr> parts, std::optional<Vec> interior_hint = {});

  bool contains(const Vec& x, double tol) const override;
  double support_value(const Vec& u) const override;
  SupportPoint support_point(const Vec& u) const override;
  Vec interior_point() const override;
  double outer_radius() const override;
  void support_batch(std::span<const Vec> dirs, std::span<double> out) const override;
  std::string describe() const override;

  bool strictly_convex() const override {
    for (const auto& p : parts_)
      if (!p->strictly_convex()) return false;
    return !clipped_;
  }
  const std::vector<BodyPtr>& parts() const { return parts_; }
  bool degenerate_segment() const { return static_cast<bool>(clipped_); }
  const Segment* clipped() const { return clipped_.get(); }

 private:
  struct Scan {
    std::vector<Vec> pts;  // boundary polyline, angle-ordered
    Vec center;
  };
  const Scan& scan() const;
  Vec boundary_at(double angle) const;

  std::vector<BodyPtr> parts_;
  Vec interior_;
  double outer_;
  std::shared_ptr<Segment> clipped_;  // set when one part is a segment
  mutable std::once_flag scan_once_;
  mutable Scan scan_;
};

// Membership body living on an affine slice {base + Z a} of a larger body,
// expressed in the slice coordinates a. Used to measure subspace sections.
class AffineSliceBody final : public ConvexBody {
 public:
  AffineSliceBody(BodyPtr host, Vec base, std::vector<Vec> basis, Vec interior_coords);
  bool contains(const Vec& a, double tol) const override;
  double support_value(const Vec& u) const override;
  SupportPoint support_point(const Vec& u) const override;
  Vec interior_point() const override { return interior_; }
  double outer_radius() const override { return radius_bound_; }
  void support_batch(std::span<const Vec> dirs, std::span<double> out) const override;
  std::string describe() const override;

  Vec embed(const Vec& coords) const;  // base + Z a

 private:
  struct Scan {
    std::vector<Vec> pts;
    Vec center;
  };
  const Scan& scan() const;
  Vec boundary_at(double angle) const;

  BodyPtr host_;
  Vec base_;
  std::vector<Vec> basis_;
  Vec interior_;
  double radius_bound_;
  mutable std::once_flag scan_once_;
  mutable Scan scan_;
};

// ---------------------------------------------------------------------------
// Factories
// ---------------------------------------------------------------------------

BodyPtr make_pball(Vec center, double radius, double exponent);  // lp ambient = exponent's dim, p=2
BodyPtr make_pball(Space ambient, Vec center, double radius, double exponent);
BodyPtr make_ball_intersection(double R, std::vector<Vec> centers);  // Euclidean
BodyPtr make_power_cap(double p);
BodyPtr make_polygon(std::vector<Vec> vertices);  // Euclidean plane
BodyPtr make_polytope(Space ambient, std::vector<Vec> vertices);
BodyPtr make_segment(Vec a, Vec b);
BodyPtr make_segment(Space ambient, Vec a, Vec b);
BodyPtr translate(BodyPtr body, Vec offset);
BodyPtr scale_body(BodyPtr body, double factor);
BodyPtr make_product(BodyPtr a, BodyPtr b);
BodyPtr minkowski_sum(BodyPtr a, BodyPtr b);
BodyPtr intersect(BodyPtr a, BodyPtr b, std::optional<Vec> interior_hint = {});

// A ∩ (−A); requires 0 strictly interior to A (OriginNotInterior otherwise).
BodyPtr symmetrize(BodyPtr a);

// Ellipse with the given center, semi-axes and rotation (Euclidean plane).
BodyPtr make_ellipse(Vec center, double semi_a, double semi_b, double angle);

// ccw convex hull of a 2D point cloud.
std::vector<Vec> convex_hull_2d(std::vector<Vec> pts);

}  // namespace uconvex
