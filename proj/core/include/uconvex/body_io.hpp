#pragma once

#include "uconvex/bodies.hpp"
#include "uconvex/modulus.hpp"
#include "uconvex/report.hpp"

namespace uconvex {

// Body description documents:
//   {"space": {"dim": n, "p": 2.0},
//    "body":  {"type": "pball", "center": [...], "radius": r, "p": 2.0}}
// Types: pball, ball_intersection (R, centers), power_cap (p), polygon
// (vertices), segment (a, b), minkowski_sum (parts), symmetrized (inner),
// translate (inner, offset), scale (inner, factor), product (parts are full
// documents). Unknown "type" is a load error.
BodyPtr body_from_json(const Json& doc);
BodyPtr body_from_file(const std::string& path);

// Extra knobs carried by a description that the battery consumes.
struct BodyFileInfo {
  BodyPtr body;
  Json doc;
  double strongly_convex_R = 0.0;  // set when the top-level type is
                                   // ball_intersection
};
BodyFileInfo body_info_from_json(const Json& doc);

// ModulusTable serialization: {"eps": [...], "delta": [...], "meta": {...}}
Json modulus_table_to_json(const ModulusTable& t);
ModulusTable modulus_table_from_json(const Json& j);
std::string modulus_table_to_csv(const ModulusTable& t);  // header eps,delta

}  // namespace uconvex
