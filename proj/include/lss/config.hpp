// Copyright (c) 2026 The ls-sparsify authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LSS_CONFIG_HPP
#define LSS_CONFIG_HPP

#include <map>
#include <string>
#include <vector>

namespace lss {

/// INI-style key=value store. Sections become dotted prefixes, so
///   [gmres]
///   tol = 1e-8
/// is the same key the CLI overrides as --gmres.tol.
class Config {
 public:
  static Config load(const std::string& path);
  void parse_line(const std::string& line, std::string* section);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int64_t get_int(const std::string& key, int64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_list(const std::string& key) const;  // comma-separated

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace lss

#endif  // LSS_CONFIG_HPP
