#pragma once

// INI run configuration: `[section]` blocks of `key = value` lines.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>

#include "gengm/error.hpp"

namespace gengm::cli {

/// Malformed or inconsistent configuration; maps to exit code 2.
class ConfigError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class Config {
 public:
  Config() = default;
  static Config load(const std::filesystem::path& path);
  static Config parse(const std::string& text);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::optional<std::string> find_string(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  std::uint64_t get_seed(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  /// Comma-separated numbers, or `log(lo, hi, n)` for a log-spaced axis.
  std::vector<double> get_axis(const std::string& key, const std::vector<double>& fallback) const;
  std::vector<std::string> get_list(const std::string& key,
                                    const std::vector<std::string>& fallback) const;

  /// Keys are "section.key".
  void set(const std::string& key, const std::string& value);

 private:
  boost::property_tree::ptree tree_;
};

double parse_double(const std::string& text, const std::string& where);
long long parse_int(const std::string& text, const std::string& where);

}  // namespace gengm::cli
