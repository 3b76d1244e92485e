#include "uconvex/body_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "uconvex/errors.hpp"
#include "uconvex/modulus.hpp"

namespace uconvex {

namespace {

double parse_exponent(const Json& j) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return kInfExponent;
    throw LoadError("unrecognized exponent: " + s);
  }
  return j.get<double>();
}

Space space_from_json(const Json& j) {
  if (!j.contains("dim")) throw LoadError("space needs \"dim\"");
  int dim = j.at("dim").get<int>();
  double p = j.contains("p") ? parse_exponent(j.at("p")) : 2.0;
  return Space::lp(dim, p);
}

BodyPtr body_node(const Json& body, const Space& ambient);

BodyPtr body_node(const Json& body, const Space& ambient) {
  if (!body.contains("type")) throw LoadError("body needs a \"type\"");
  const std::string type = body.at("type").get<std::string>();
  try {
    if (type == "pball") {
      Vec center = body.at("center").get<Vec>();
      double r = body.at("radius").get<double>();
      double pb = body.contains("p") ? parse_exponent(body.at("p")) : ambient.p();
      return std::make_shared<PBall>(ambient, std::move(center), r, pb);
    }
    if (type == "ball_intersection") {
      double big_r = body.at("R").get<double>();
      auto centers = body.at("centers").get<std::vector<Vec>>();
      return make_ball_intersection(big_r, std::move(centers));
    }
    if (type == "power_cap") {
      return make_power_cap(body.at("p").get<double>());
    }
    if (type == "polygon") {
      auto verts = body.at("vertices").get<std::vector<Vec>>();
      return std::make_shared<Polytope>(ambient, std::move(verts));
    }
    if (type == "segment") {
      return std::make_shared<Segment>(ambient, body.at("a").get<Vec>(),
                                       body.at("b").get<Vec>());
    }
    if (type == "minkowski_sum") {
      std::vector<BodyPtr> parts;
      for (const auto& part : body.at("parts")) parts.push_back(body_node(part, ambient));
      return std::make_shared<MinkowskiSumBody>(std::move(parts));
    }
    if (type == "symmetrized") {
      return symmetrize(body_node(body.at("inner"), ambient));
    }
    if (type == "translate") {
      return translate(body_node(body.at("inner"), ambient),
                       body.at("offset").get<Vec>());
    }
    if (type == "scale") {
      return scale_body(body_node(body.at("inner"), ambient),
                        body.at("factor").get<double>());
    }
    if (type == "product") {
      const auto& parts = body.at("parts");
      if (parts.size() != 2) throw LoadError("product takes two parts");
      return make_product(body_from_json(parts.at(0)), body_from_json(parts.at(1)));
    }
  } catch (const Json::exception& e) {
    throw LoadError(std::string("malformed body description: ") + e.what());
  }
  throw LoadError("unknown body type: " + type);
}

}  // namespace

BodyPtr body_from_json(const Json& doc) {
  if (!doc.contains("body")) throw LoadError("document needs \"body\"");
  const Json& body = doc.at("body");
  if (body.contains("type") && body.at("type") == "product")
    return body_node(body, Space::lp(1, 2.0));  // parts carry their own spaces
  if (!doc.contains("space")) throw LoadError("document needs \"space\"");
  Space ambient = space_from_json(doc.at("space"));
  BodyPtr b = body_node(body, ambient);
  if (b->dim() != ambient.dim())
    throw LoadError("body dimension disagrees with the declared space");
  return b;
}

BodyPtr body_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open body file: " + path);
  Json doc;
  try {
    in >> doc;
  } catch (const Json::exception& e) {
    throw LoadError(std::string("malformed JSON: ") + e.what());
  }
  return body_from_json(doc);
}

BodyFileInfo body_info_from_json(const Json& doc) {
  BodyFileInfo info;
  info.doc = doc;
  info.body = body_from_json(doc);
  if (doc.contains("body") && doc.at("body").value("type", "") == "ball_intersection")
    info.strongly_convex_R = doc.at("body").at("R").get<double>();
  return info;
}

Json modulus_table_to_json(const ModulusTable& t) {
  Json meta;
  meta["body"] = t.body_id;
  meta["boundary_points"] = t.boundary_points;
  meta["depth_dirs"] = t.depth_dirs;
  meta["chord_tol_rel"] = t.chord_tol_rel;
  meta["upper_bias"] = t.upper_bias;
  meta["diameter"] = t.diameter;
  Json raw = Json::array();
  Json realizable = Json::array();
  for (std::size_t i = 0; i < t.eps.size(); ++i) {
    raw.push_back(std::isfinite(t.raw[i]) ? Json(t.raw[i]) : Json(nullptr));
    realizable.push_back(static_cast<bool>(t.realizable[i]));
  }
  meta["raw"] = std::move(raw);
  meta["realizable"] = std::move(realizable);

  Json delta = Json::array();
  for (double d : t.delta)
    delta.push_back(std::isfinite(d) ? Json(d) : Json(nullptr));
  Json j;
  j["eps"] = t.eps;
  j["delta"] = std::move(delta);
  j["meta"] = std::move(meta);
  return j;
}

ModulusTable modulus_table_from_json(const Json& j) {
  ModulusTable t;
  t.eps = j.at("eps").get<std::vector<double>>();
  for (const auto& d : j.at("delta"))
    t.delta.push_back(d.is_null() ? std::numeric_limits<double>::quiet_NaN()
                                  : d.get<double>());
  if (t.delta.size() != t.eps.size())
    throw LoadError("modulus table: eps/delta length mismatch");
  if (j.contains("meta")) {
    const Json& m = j.at("meta");
    t.body_id = m.value("body", "");
    t.boundary_points = m.value("boundary_points", 0);
    t.depth_dirs = m.value("depth_dirs", 0);
    t.chord_tol_rel = m.value("chord_tol_rel", 0.0);
    t.upper_bias = m.value("upper_bias", false);
    t.diameter = m.value("diameter", 0.0);
    if (m.contains("raw"))
      for (const auto& d : m.at("raw"))
        t.raw.push_back(d.is_null() ? std::numeric_limits<double>::quiet_NaN()
                                    : d.get<double>());
    if (m.contains("realizable"))
      for (const auto& b : m.at("realizable"))
        t.realizable.push_back(b.get<bool>() ? 1 : 0);
  }
  if (t.raw.empty()) t.raw = t.delta;
  if (t.realizable.empty()) {
    for (double d : t.delta) t.realizable.push_back(std::isfinite(d) ? 1 : 0);
  }
  return t;
}

std::string modulus_table_to_csv(const ModulusTable& t) {
  std::ostringstream os;
  os << "eps,delta\n";
  for (std::size_t i = 0; i < t.eps.size(); ++i) {
    os << format_double(t.eps[i]) << ',';
    if (std::isfinite(t.delta[i])) os << format_double(t.delta[i]);
    os << '\n';
  }
  return os.str();
}

}  // namespace uconvex
