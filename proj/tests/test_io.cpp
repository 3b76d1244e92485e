#include <doctest.h>

#include <cmath>
#include <sstream>

#include "uconvex/body_io.hpp"
#include "uconvex/errors.hpp"

using namespace uconvex;

TEST_SUITE("io") {

TEST_CASE("body documents round-trip through the loader") {
  Json doc = Json::parse(R"({
    "space": {"dim": 2, "p": 2.0},
    "body": {"type": "pball", "center": [0.5, -0.5], "radius": 2.0}
  })");
  BodyPtr b = body_from_json(doc);
  CHECK(b->support_value({1.0, 0.0}) == doctest::Approx(2.5));

  Json l4 = Json::parse(R"({
    "space": {"dim": 2, "p": 4.0},
    "body": {"type": "pball", "center": [0, 0], "radius": 1.0}
  })");
  BodyPtr lb = body_from_json(l4);
  CHECK(lb->space().p() == doctest::Approx(4.0));
  // ball exponent defaults to the space exponent
  CHECK(lb->contains({std::pow(0.5, 0.25), std::pow(0.5, 0.25)}, 1e-9));

  Json nested = Json::parse(R"({
    "space": {"dim": 2, "p": 2.0},
    "body": {"type": "translate", "offset": [1.0, 0.0],
             "inner": {"type": "scale", "factor": 0.5,
                       "inner": {"type": "power_cap", "p": 2}}}
  })");
  BodyPtr cap = body_from_json(nested);
  CHECK(cap->contains({1.0, 0.25}, 1e-9));

  Json sum = Json::parse(R"({
    "space": {"dim": 2, "p": 2.0},
    "body": {"type": "minkowski_sum", "parts": [
      {"type": "pball", "center": [0, 0], "radius": 1.0},
      {"type": "segment", "a": [0, 0], "b": [1, 0]}
    ]}
  })");
  CHECK(body_from_json(sum)->support_value({1.0, 0.0}) == doctest::Approx(2.0));

  Json prod = Json::parse(R"({
    "body": {"type": "product", "parts": [
      {"space": {"dim": 2, "p": 2.0},
       "body": {"type": "pball", "center": [0, 0], "radius": 1.0}},
      {"space": {"dim": 1, "p": 2.0},
       "body": {"type": "segment", "a": [0], "b": [1]}}
    ]}
  })");
  BodyPtr pb = body_from_json(prod);
  CHECK(pb->dim() == 3);
  CHECK(pb->space().is_product());

  Json sym = Json::parse(R"({
    "space": {"dim": 2, "p": 2.0},
    "body": {"type": "symmetrized",
             "inner": {"type": "pball", "center": [0.2, 0], "radius": 1.0}}
  })");
  BodyPtr s = body_from_json(sym);
  CHECK(s->contains({0.75, 0.0}, 1e-9));
  CHECK_FALSE(s->contains({0.9, 0.0}, 1e-6));

  Json binter = Json::parse(R"({
    "space": {"dim": 2, "p": 2.0},
    "body": {"type": "ball_intersection", "R": 1.3,
             "centers": [[-0.4, 0], [0.4, 0]]}
  })");
  BodyFileInfo info = body_info_from_json(binter);
  CHECK(info.strongly_convex_R == doctest::Approx(1.3));

  Json poly = Json::parse(R"({
    "space": {"dim": 2, "p": 2.0},
    "body": {"type": "polygon", "vertices": [[0,0],[1,0],[1,1],[0,1]]}
  })");
  CHECK(body_from_json(poly)->contains({0.5, 0.5}, 0.0));
}

TEST_CASE("load errors") {
  CHECK_THROWS_AS(body_from_json(Json::parse(
                      R"({"space":{"dim":2},"body":{"type":"warp_core"}})")),
                  LoadError);
  CHECK_THROWS_AS(body_from_json(Json::parse(R"({"body":{"type":"pball"}})")),
                  LoadError);
  CHECK_THROWS_AS(body_from_json(Json::parse(
                      R"({"space":{"dim":2},"body":{"type":"pball","center":[1],"radius":1}})")),
                  LoadError);
  CHECK_THROWS_AS(body_from_json(Json::parse(
                      R"({"space":{"dim":3},"body":{"type":"power_cap","p":2}})")),
                  LoadError);
  CHECK_THROWS_AS(body_from_file("/nonexistent/path.json"), LoadError);
}

TEST_CASE("modulus table serialization") {
  ModulusTable t;
  t.eps = {0.1, 0.2, 0.3};
  t.delta = {0.0025, 0.01, std::numeric_limits<double>::quiet_NaN()};
  t.raw = t.delta;
  t.realizable = {1, 1, 0};
  t.body_id = "test";
  t.boundary_points = 256;
  t.diameter = 1.5;
  Json j = modulus_table_to_json(t);
  ModulusTable back = modulus_table_from_json(j);
  CHECK(back.eps == t.eps);
  CHECK(back.delta[0] == t.delta[0]);
  CHECK(std::isnan(back.delta[2]));
  CHECK(back.realizable[2] == 0);
  CHECK(back.diameter == doctest::Approx(1.5));

  std::string csv = modulus_table_to_csv(t);
  CHECK(csv.rfind("eps,delta\n", 0) == 0);
  // 17 significant digits round-trip exactly
  std::istringstream is(csv);
  std::string header, line;
  std::getline(is, header);
  std::getline(is, line);
  auto comma = line.find(',');
  CHECK(std::stod(line.substr(0, comma)) == 0.1);
  CHECK(std::stod(line.substr(comma + 1)) == 0.0025);
}

TEST_CASE("report payloads are deterministic, meta is not compared") {
  Report r;
  r.name = "demo";
  r.config = Json{{"seed", 42}};
  ReportRow row;
  row.check = "demo";
  row.lhs = 1.0 / 3.0;
  row.rhs = 2.0 / 3.0;
  row.margin = row.rhs - row.lhs;
  r.add_row(row, 0.0);
  Json a = report_file(r, 12.5);
  Json b = report_file(r, 99.0);
  CHECK(a.at("payload").dump() == b.at("payload").dump());
  CHECK(a.dump() != b.dump());
}

}  // TEST_SUITE
