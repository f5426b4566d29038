// Copyright (c) 2026 sqglab contributors
// SPDX-License-Identifier: Apache-2.0
//
// Flat key-value config files with [section] headers. Keys are addressed as
// "section.key". '#' starts a comment. Parse errors carry line numbers.
#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "sqg/common.hpp"

namespace sqg {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class Config {
 public:
  static Config parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw ConfigError("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
  }

  static Config parse(const std::string& text, const std::string& name = "<string>") {
    Config c;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::string s = strip(line);
      if (s.empty() || s[0] == '#') continue;
      if (s.front() == '[') {
        if (s.back() != ']')
          throw ConfigError(loc(name, lineno) + ": unterminated section header");
        section = strip(s.substr(1, s.size() - 2));
        if (section.empty()) throw ConfigError(loc(name, lineno) + ": empty section name");
        continue;
      }
      auto eq = s.find('=');
      if (eq == std::string::npos)
        throw ConfigError(loc(name, lineno) + ": expected key = value");
      std::string key = strip(s.substr(0, eq));
      std::string val = strip(s.substr(eq + 1));
      if (key.empty()) throw ConfigError(loc(name, lineno) + ": empty key");
      std::string full = section.empty() ? key : section + "." + key;
      c.values_[full] = val;
      c.lines_[full] = lineno;
    }
    c.name_ = name;
    return c;
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::string get_string(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError(name_ + ": missing key '" + key + "'");
    return it->second;
  }
  std::string get_string(const std::string& key, const std::string& dflt) const {
    auto it = values_.find(key);
    return it == values_.end() ? dflt : it->second;
  }

  double get_double(const std::string& key) const { return to_double(key, get_string(key)); }
  double get_double(const std::string& key, double dflt) const {
    return has(key) ? get_double(key) : dflt;
  }
  long get_int(const std::string& key) const { return to_int(key, get_string(key)); }
  long get_int(const std::string& key, long dflt) const {
    return has(key) ? get_int(key) : dflt;
  }
  bool get_bool(const std::string& key, bool dflt) const {
    if (!has(key)) return dflt;
    std::string v = get_string(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(where(key) + ": expected boolean for '" + key + "', got '" + v + "'");
  }

  const std::map<std::string, std::string>& all() const { return values_; }
  const std::string& name() const { return name_; }

 private:
  static std::string strip(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
  }
  static std::string loc(const std::string& n, int l) {
    return n + ":" + std::to_string(l);
  }
  std::string where(const std::string& key) const {
    auto it = lines_.find(key);
    return it == lines_.end() ? name_ : loc(name_, it->second);
  }
  double to_double(const std::string& key, const std::string& v) const {
    try {
      std::size_t pos = 0;
      double x = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument("trailing");
      return x;
    } catch (...) {
      throw ConfigError(where(key) + ": expected number for '" + key + "', got '" + v + "'");
    }
  }
  long to_int(const std::string& key, const std::string& v) const {
    try {
      std::size_t pos = 0;
      long x = std::stol(v, &pos);
      if (pos != v.size()) throw std::invalid_argument("trailing");
      return x;
    } catch (...) {
      throw ConfigError(where(key) + ": expected integer for '" + key + "', got '" + v + "'");
    }
  }

  std::string name_;
  std::map<std::string, std::string> values_;
  std::map<std::string, int> lines_;
};

}  // namespace sqg
