// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#include "lss/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lss {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  Config cfg;
  std::string line, section;
  while (std::getline(in, line)) cfg.parse_line(line, &section);
  return cfg;
}

void Config::parse_line(const std::string& raw, std::string* section) {
  std::string line = raw;
  const auto comment = line.find_first_of("#;");
  if (comment != std::string::npos) line.resize(comment);
  line = trim(line);
  if (line.empty()) return;
  if (line.front() == '[') {
    if (line.back() != ']') throw std::runtime_error("config: malformed section: " + raw);
    *section = trim(line.substr(1, line.size() - 2));
    return;
  }
  const auto eq = line.find('=');
  if (eq == std::string::npos) throw std::runtime_error("config: expected key=value: " + raw);
  const std::string key = trim(line.substr(0, eq));
  const std::string value = trim(line.substr(eq + 1));
  if (key.empty()) throw std::runtime_error("config: empty key: " + raw);
  set(section->empty() ? key : *section + "." + key, value);
}

void Config::set(const std::string& key, const std::string& value) { kv_[key] = value; }

bool Config::has(const std::string& key) const { return kv_.count(key) != 0; }

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  size_t pos = 0;
  const double v = std::stod(it->second, &pos);
  if (pos != it->second.size()) throw std::runtime_error("config: bad number for " + key);
  return v;
}

int64_t Config::get_int(const std::string& key, int64_t fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  size_t pos = 0;
  const int64_t v = std::stoll(it->second, &pos);
  if (pos != it->second.size()) throw std::runtime_error("config: bad integer for " + key);
  return v;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  std::string v = it->second;
  std::transform(v.begin(), v.end(), v.begin(), ::tolower);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::runtime_error("config: bad boolean for " + key);
}

std::vector<double> Config::get_list(const std::string& key) const {
  const auto it = kv_.find(key);
  std::vector<double> out;
  if (it == kv_.end()) return out;
  std::stringstream ss(it->second);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  return out;
}

}  // namespace lss
