#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>

#include "gengm/evaluate.hpp"

namespace gengm::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

}  // namespace

double parse_double(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(where + ": '" + text + "' is not a number");
  }
  return v;
}

long long parse_int(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(where + ": '" + text + "' is not an integer");
  }
  return v;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

Config Config::parse(const std::string& text) {
  Config c;
  std::istringstream in(text);
  try {
    boost::property_tree::ini_parser::read_ini(in, c.tree_);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

bool Config::has(const std::string& key) const { return tree_.get_optional<std::string>(key).has_value(); }

std::optional<std::string> Config::find_string(const std::string& key) const {
  auto v = tree_.get_optional<std::string>(key);
  if (!v) return std::nullopt;
  return trim(*v);
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  return find_string(key).value_or(fallback);
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto v = find_string(key);
  return v ? parse_double(*v, key) : fallback;
}

long long Config::get_int(const std::string& key, long long fallback) const {
  const auto v = find_string(key);
  return v ? parse_int(*v, key) : fallback;
}

std::uint64_t Config::get_seed(const std::string& key, std::uint64_t fallback) const {
  const auto v = find_string(key);
  if (!v) return fallback;
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (v->empty() || ec != std::errc() || ptr != v->data() + v->size()) {
    throw ConfigError(key + ": '" + *v + "' is not an unsigned integer");
  }
  return out;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  const auto v = find_string(key);
  if (!v) return fallback;
  std::string s = *v;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError(key + ": '" + *v + "' is not a boolean");
}

std::vector<double> Config::get_axis(const std::string& key, const std::vector<double>& fallback) const {
  const auto v = find_string(key);
  if (!v) return fallback;
  if (v->rfind("log(", 0) == 0) {
    if (v->back() != ')') throw ConfigError(key + ": expected log(lo, hi, n)");
    const auto parts = split(v->substr(4, v->size() - 5), ',');
    if (parts.size() != 3) throw ConfigError(key + ": expected log(lo, hi, n)");
    try {
      return CvGrid::log_axis(parse_double(parts[0], key), parse_double(parts[1], key),
                              static_cast<int>(parse_int(parts[2], key)));
    } catch (const ConfigError&) {
      throw;
    } catch (const InvalidInput& e) {
      throw ConfigError(key + ": " + e.what());
    }
  }
  std::vector<double> out;
  for (const auto& item : split(*v, ',')) out.push_back(parse_double(item, key));
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

std::vector<std::string> Config::get_list(const std::string& key,
                                          const std::vector<std::string>& fallback) const {
  const auto v = find_string(key);
  if (!v) return fallback;
  auto out = split(*v, ',');
  out.erase(std::remove(out.begin(), out.end(), std::string()), out.end());
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

void Config::set(const std::string& key, const std::string& value) { tree_.put(key, value); }

}  // namespace gengm::cli
