#pragma once
// Flat key-value run configuration: UTF-8 text, one `key = value` per line,
// `#` starts a comment, keys use dotted section prefixes (model.gamma,
// control.mu1, run.t_max). Strict by design: duplicate keys, malformed
// values, and (via check_all_consumed) unrecognized keys are errors that name
// the offending key, so a typo never silently falls back to a default.

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "entlab/errors.hpp"

namespace entlab {

class Config {
 public:
  Config() = default;

  static Config parse_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      cfg.ingest_line(line, lineno);
    }
    return cfg;
  }

  static Config parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
      throw ConfigError("cannot open config file: " + path, path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str());
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  // Overlay other's entries on top of this one (other wins on conflicts).
  // Used to let an explicit config file refine a named preset.
  void merge_from(const Config& other) {
    for (const auto& [k, v] : other.values_) values_[k] = v;
  }

  void set(const std::string& key, const std::string& value) {
    values_[key] = value;
  }

  std::string get_string(const std::string& key) const {
    return raw(key);
  }
  std::string get_string(const std::string& key,
                         const std::string& fallback) const {
    return has(key) ? raw(key) : fallback;
  }

  double get_double(const std::string& key) const {
    return to_double(raw(key), key);
  }
  double get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
  }

  int get_int(const std::string& key) const {
    const double v = get_double(key);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
      throw ConfigError("expected an integer for key '" + key + "'", key);
    return i;
  }
  int get_int(const std::string& key, int fallback) const {
    return has(key) ? get_int(key) : fallback;
  }

  bool get_bool(const std::string& key) const {
    const std::string v = lower(raw(key));
    if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
    if (v == "false" || v == "no" || v == "off" || v == "0") return false;
    throw ConfigError("expected a boolean for key '" + key + "'", key);
  }
  bool get_bool(const std::string& key, bool fallback) const {
    return has(key) ? get_bool(key) : fallback;
  }

  // Whitespace- or comma-separated list of reals.
  std::vector<double> get_double_list(const std::string& key) const {
    std::string v = raw(key);
    for (char& c : v)
      if (c == ',') c = ' ';
    std::istringstream in(v);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) out.push_back(to_double(tok, key));
    if (out.empty())
      throw ConfigError("expected at least one number for key '" + key + "'",
                        key);
    return out;
  }

  // All keys present in the file but never consumed by a getter.
  std::vector<std::string> unconsumed() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : values_)
      if (consumed_.count(k) == 0) out.push_back(k);
    return out;
  }

  void check_all_consumed() const {
    const auto leftovers = unconsumed();
    if (!leftovers.empty())
      throw ConfigError("unknown config key '" + leftovers.front() + "'",
                        leftovers.front());
  }

 private:
  void ingest_line(std::string line, int lineno) {
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string trimmed = trim(line);
    if (trimmed.empty()) return;
    const size_t eq = trimmed.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                            ": expected 'key = value', got '" + trimmed + "'",
                        trimmed);
    const std::string key = trim(trimmed.substr(0, eq));
    const std::string value = trim(trimmed.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key", key);
    for (char c : key)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
            c == '.'))
        throw ConfigError("invalid character in key '" + key + "'", key);
    if (values_.count(key))
      throw ConfigError("duplicate config key '" + key + "'", key);
    values_[key] = value;
  }

  const std::string& raw(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end())
      throw ConfigError("missing required config key '" + key + "'", key);
    consumed_.insert(key);
    return it->second;
  }

  static std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
  }

  static std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  }

  static double to_double(const std::string& text, const std::string& key) {
    if (text.empty())
      throw ConfigError("empty value for key '" + key + "'", key);
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size())
      throw ConfigError("expected a number for key '" + key + "', got '" +
                            text + "'",
                        key);
    return v;
  }

  std::map<std::string, std::string> values_;
  mutable std::set<std::string> consumed_;
};

}  // namespace entlab
