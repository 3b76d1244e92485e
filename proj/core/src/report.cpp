#include "uconvex/report.hpp"

#include <cmath>
#include <sstream>

namespace uconvex {

namespace {

Json num_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

}  // namespace

void Report::add_row(ReportRow row, double tolerance) {
  row.ok = row.margin >= -tolerance;
  if (!row.ok) pass = false;
  worst_margin = std::min(worst_margin, row.margin);
  rows.push_back(std::move(row));
}

void Report::absorb(const Report& sub) {
  pass = pass && sub.pass;
  inconclusive = inconclusive || sub.inconclusive;
  worst_margin = std::min(worst_margin, sub.worst_margin);
}

Json Report::payload() const {
  Json rows_json = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["check"] = r.check;
    j["key"] = num_or_null(r.key);
    j["key2"] = num_or_null(r.key2);
    j["lhs"] = num_or_null(r.lhs);
    j["rhs"] = num_or_null(r.rhs);
    j["margin"] = num_or_null(r.margin);
    j["ok"] = r.ok;
    if (!r.note.empty()) j["note"] = r.note;
    rows_json.push_back(std::move(j));
  }
  Json p;
  p["name"] = name;
  p["config"] = config;
  p["rows"] = std::move(rows_json);
  p["pass"] = pass;
  p["inconclusive"] = inconclusive;
  p["worst_margin"] =
      std::isfinite(worst_margin) ? Json(worst_margin) : Json(nullptr);
  p["notes"] = notes;
  return p;
}

std::string Report::csv() const {
  std::ostringstream os;
  os << "check,key,key2,lhs,rhs,margin,ok\n";
  for (const auto& r : rows) {
    os << r.check << ',';
    os << (std::isnan(r.key) ? "" : format_double(r.key)) << ',';
    os << (std::isnan(r.key2) ? "" : format_double(r.key2)) << ',';
    os << format_double(r.lhs) << ',' << format_double(r.rhs) << ','
       << format_double(r.margin) << ',' << (r.ok ? 1 : 0) << '\n';
  }
  return os.str();
}

Json report_file(const Report& r, double runtime_ms) {
  Json j;
  j["payload"] = r.payload();
  j["meta"] = Json{{"runtime_ms", runtime_ms}, {"tool", "uconvex 0.1.0"}};
  return j;
}

}  // namespace uconvex
