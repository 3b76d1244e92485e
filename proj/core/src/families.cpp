#include "uconvex/families.hpp"

#include <cmath>

#include "uconvex/body_io.hpp"
#include "uconvex/errors.hpp"

namespace uconvex {

SetValuedFamily constant_family(BodyPtr body, std::string name) {
  SetValuedFamily f;
  f.name = std::move(name);
  f.t_min = 0.0;
  f.t_max = 1.0;
  BodyPtr b = std::move(body);
  f.generator = [b](double) { return b; };
  f.omega = [](double) { return 0.0; };
  return f;
}

SetValuedFamily line_segment_family(double half_width, double t_min, double t_max) {
  SetValuedFamily f;
  f.name = "line_segment";
  f.t_min = t_min;
  f.t_max = t_max;
  f.generator = [half_width](double t) {
    return make_segment({-half_width, t}, {half_width, t});
  };
  f.omega = [](double s) { return s; };
  return f;
}

SetValuedFamily translating_ball_family(Vec center0, Vec velocity, double radius,
                                        double t_min, double t_max) {
  SetValuedFamily f;
  f.name = "translating_ball";
  f.t_min = t_min;
  f.t_max = t_max;
  double speed = norm2(velocity);
  Vec c0 = std::move(center0);
  Vec vel = std::move(velocity);
  f.generator = [c0, vel, radius](double t) {
    Vec c = c0;
    axpy(t, vel, c);
    return make_pball(std::move(c), radius, 2.0);
  };
  f.omega = [speed](double s) { return speed * s; };
  f.image_modulus = Modulus::euclid_ball(radius).with_r0(radius).with_M(2.0 * radius);
  f.r0 = radius;
  return f;
}

SetValuedFamily power_cap_family(double p) {
  auto cap = std::make_shared<PowerCap>(p);
  SetValuedFamily f = constant_family(cap, "power_cap");
  // Declared lower bound of the cap's modulus: the apex power law capped by
  // the flattest boundary curvature (the power curve at the circle junction),
  // kappa = p(p-1)x^{p-2} / (1 + p^2 x^{2(p-1)})^{3/2} at x = corner.
  double x = cap->corner_x();
  double kappa = p * (p - 1.0) * std::pow(x, p - 2.0) /
                 std::pow(1.0 + p * p * std::pow(x, 2.0 * (p - 1.0)), 1.5);
  double diam = diameter(*cap);
  f.image_modulus =
      Modulus::min_power(p, kappa / 8.0).with_r0(0.5).with_M(diam);
  f.r0 = 0.5;
  return f;
}

SetValuedFamily family_from_json(const Json& j) {
  if (!j.contains("kind")) throw LoadError("family needs a \"kind\"");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "constant") {
    SetValuedFamily f = constant_family(body_from_json(j.at("body")));
    if (j.contains("t_min")) f.t_min = j.at("t_min").get<double>();
    if (j.contains("t_max")) f.t_max = j.at("t_max").get<double>();
    return f;
  }
  if (kind == "power_cap_constant") {
    SetValuedFamily f = power_cap_family(j.at("p").get<double>());
    if (j.contains("t_min")) f.t_min = j.at("t_min").get<double>();
    if (j.contains("t_max")) f.t_max = j.at("t_max").get<double>();
    return f;
  }
  if (kind == "segment_line") {
    return line_segment_family(j.value("half_width", 1.05),
                               j.at("t_min").get<double>(),
                               j.at("t_max").get<double>());
  }
  if (kind == "translating_pball") {
    return translating_ball_family(j.at("center0").get<Vec>(),
                                   j.at("velocity").get<Vec>(),
                                   j.value("radius", 1.0),
                                   j.at("t_min").get<double>(),
                                   j.at("t_max").get<double>());
  }
  throw LoadError("unknown family kind: " + kind);
}

}  // namespace uconvex
