// Copyright (c) 2026 sqglab contributors
// SPDX-License-Identifier: Apache-2.0
//
// PASS/FAIL check reports, rendered both as JSON (machine) and text (human).
#pragma once

#include <json.hpp>

#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "sqg/common.hpp"

namespace sqg {

struct Report {
  std::string name;
  bool pass = true;
  std::map<std::string, double> metrics;
  std::vector<std::string> notes;

  void metric(const std::string& k, double v) { metrics[k] = v; }
  void note(const std::string& s) { notes.push_back(s); }
  void require_metric(const std::string& k, double v, bool ok) {
    metrics[k] = v;
    pass = pass && ok;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["pass"] = pass;
    j["metrics"] = metrics;
    j["notes"] = notes;
    return j;
  }

  std::string to_text() const {
    std::string s = (pass ? "PASS " : "FAIL ") + name + "\n";
    for (const auto& [k, v] : metrics) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.12g", v);
      s += "  " + k + " = " + buf + "\n";
    }
    for (const auto& n : notes) s += "  # " + n + "\n";
    return s;
  }
};

inline void write_reports(const std::string& stem, const std::vector<Report>& reports) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : reports) j.push_back(r.to_json());
  {
    std::ofstream out(stem + ".json");
    check_runtime(out.good(), "write_reports: cannot open " + stem + ".json");
    out << j.dump(2) << "\n";
  }
  {
    std::ofstream out(stem + ".txt");
    check_runtime(out.good(), "write_reports: cannot open " + stem + ".txt");
    for (const auto& r : reports) out << r.to_text();
  }
}

}  // namespace sqg
