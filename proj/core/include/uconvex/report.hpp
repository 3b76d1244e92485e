#pragma once

#include <json.hpp>
#include <limits>
#include <string>
#include <vector>

#include "uconvex/common.hpp"

namespace uconvex {

using Json = nlohmann::json;

struct ReportRow {
  std::string check;
  double key = std::numeric_limits<double>::quiet_NaN();   // eps / t1 / index
  double key2 = std::numeric_limits<double>::quiet_NaN();  // t2 for pair rows
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs unless stated otherwise
  bool ok = true;
  std::string note;
};

// Structured verification/experiment output. `payload()` is deterministic
// for a fixed configuration; volatile metadata (timestamps, runtimes) lives
// outside of it.
struct Report {
  std::string name;
  Json config;
  std::vector<ReportRow> rows;
  bool pass = true;
  bool inconclusive = false;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::vector<std::string> notes;

  void add_row(ReportRow row, double tolerance);
  void note(std::string s) { notes.push_back(std::move(s)); }
  void absorb(const Report& sub);  // fold a sub-report's verdict in

  Json payload() const;
  std::string csv() const;  // one row per sample, 17 significant digits
};

Json report_file(const Report& r, double runtime_ms);

}  // namespace uconvex
