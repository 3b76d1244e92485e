#pragma once

#include <memory>
#include <optional>
#include <string>

#include "uconvex/norm.hpp"
#include "uconvex/sampling.hpp"

namespace uconvex {

// Support maximizer; `unique` is false on degenerate (flat) faces, in which
// case `point` is the lexicographically smallest maximizer.
struct SupportPoint {
  Vec point;
  double value = 0.0;
  bool unique = true;
};

// Oracle bundle for a bounded convex body A in its ambient space:
// membership, support value s(u,A), support point argmax<u,.>, an interior
// point, and an outer radius with A inside the ambient ball of that radius
// around the interior point.
//
// Bodies are immutable after construction; every oracle is safe to call from
// concurrent workers.
class ConvexBody {
 public:
  explicit ConvexBody(Space space) : space_(std::move(space)) {}
  virtual ~ConvexBody() = default;

  const Space& space() const { return space_; }
  int dim() const { return space_.dim(); }

  virtual bool contains(const Vec& x, double tol) const = 0;
  virtual double support_value(const Vec& u) const = 0;
  virtual SupportPoint support_point(const Vec& u) const = 0;
  virtual Vec interior_point() const = 0;
  virtual double outer_radius() const = 0;

  // Radius of a ball around interior_point() certified inside the body, or
  // <0 when no closed form is known (callers measure with depth()).
  virtual double inner_radius_hint() const { return -1.0; }

  // Whether the boundary provably contains no segment. Conservative: false
  // when unknown; selections flag non-uniqueness off this.
  virtual bool strictly_convex() const { return false; }

  // Exact metric projection when available (Euclidean ambient only).
  virtual std::optional<Vec> project_closed_form(const Vec& /*x*/) const {
    return std::nullopt;
  }

  // Batched support values; scan-based bodies override with a cached sweep.
  virtual void support_batch(std::span<const Vec> dirs, std::span<double> out) const;

  virtual std::string describe() const = 0;

 protected:
  void check_direction(const Vec& u) const;

  Space space_;
};

using BodyPtr = std::shared_ptr<const ConvexBody>;

}  // namespace uconvex
