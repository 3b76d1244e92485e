#pragma once

#include <functional>

#include "uconvex/modulus.hpp"
#include "uconvex/report.hpp"

namespace uconvex {

// A parametrized family t -> F(t) of convex bodies over [t_min, t_max] with
// its declared modulus of continuity and (when uniformly convex images are
// claimed) the declared image modulus with r0 / Delta0 / M attached.
struct SetValuedFamily {
  std::string name;
  double t_min = 0.0;
  double t_max = 1.0;
  std::function<BodyPtr(double)> generator;
  std::function<double(double)> omega;     // modulus of continuity bound
  std::optional<Modulus> image_modulus;    // declared, attachments included
  double r0 = 0.0;                         // inner-ball radius of the images

  BodyPtr at(double t) const { return generator(t); }
};

// Presets used across the experiments and manifests.
SetValuedFamily constant_family(BodyPtr body, std::string name = "constant");
// Horizontal segment {x in [-w, w]} x {t}.
SetValuedFamily line_segment_family(double half_width, double t_min, double t_max);
// B_radius(center0 + t * velocity) in the Euclidean plane.
SetValuedFamily translating_ball_family(Vec center0, Vec velocity, double radius,
                                        double t_min, double t_max);
// Constant PowerCap(p) with its analytic modulus metadata attached.
SetValuedFamily power_cap_family(double p);

// Parse {"kind": ...} family descriptions.
SetValuedFamily family_from_json(const Json& j);

}  // namespace uconvex
