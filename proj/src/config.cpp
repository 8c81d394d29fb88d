#include "ddlab/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ddlab {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return from_string(ss.str());
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

Config Config::from_string(const std::string& text) {
  Config cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("line " + std::to_string(lineno) +
                               ": expected key=value, got '" + t + "'");
    std::string key = trim(t.substr(0, eq)), value = trim(t.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error("line " + std::to_string(lineno) + ": empty key");
    if (cfg.values_.count(key))
      throw std::runtime_error("line " + std::to_string(lineno) + ": duplicate key '" +
                               key + "'");
    cfg.values_[key] = value;
  }
  return cfg;
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

std::string Config::get_string(const std::string& key, const std::string& fallback) {
  consumed_.insert(key);
  auto it = values_.find(key);
  std::string v = it == values_.end() ? fallback : it->second;
  resolved_[key] = v;
  return v;
}

std::string Config::require_string(const std::string& key) {
  consumed_.insert(key);
  auto it = values_.find(key);
  if (it == values_.end()) throw std::runtime_error("missing required key '" + key + "'");
  resolved_[key] = it->second;
  return it->second;
}

double Config::parse_double(const std::string& key, const std::string& raw) const {
  try {
    size_t used = 0;
    double v = std::stod(raw, &used);
    if (used != raw.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("key '" + key + "': cannot parse number '" + raw + "'");
  }
}

double Config::get_double(const std::string& key, double fallback) {
  consumed_.insert(key);
  auto it = values_.find(key);
  if (it == values_.end()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", fallback);
    resolved_[key] = buf;
    return fallback;
  }
  double v = parse_double(key, it->second);
  resolved_[key] = it->second;
  return v;
}

double Config::require_double(const std::string& key) {
  std::string raw = require_string(key);
  return parse_double(key, raw);
}

long Config::get_long(const std::string& key, long fallback) {
  double v = get_double(key, static_cast<double>(fallback));
  long l = static_cast<long>(v);
  if (static_cast<double>(l) != v)
    throw std::runtime_error("key '" + key + "' must be an integer");
  return l;
}

std::vector<double> Config::get_doubles(const std::string& key) {
  consumed_.insert(key);
  auto it = values_.find(key);
  if (it == values_.end()) return {};
  resolved_[key] = it->second;
  std::vector<double> out;
  std::stringstream ss(it->second);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(parse_double(key, trim(field)));
  return out;
}

std::vector<long> Config::get_longs(const std::string& key) {
  std::vector<long> out;
  for (double v : get_doubles(key)) {
    long l = static_cast<long>(v);
    if (static_cast<double>(l) != v)
      throw std::runtime_error("key '" + key + "' must hold integers");
    out.push_back(l);
  }
  return out;
}

void Config::reject_unknown() const {
  std::string bad;
  for (const auto& [key, value] : values_) {
    (void)value;
    if (!consumed_.count(key)) bad += (bad.empty() ? "" : ", ") + key;
  }
  if (!bad.empty()) throw std::runtime_error("unknown config keys: " + bad);
}

std::vector<std::string> Config::resolved() const {
  std::vector<std::string> out;
  for (const auto& [key, value] : resolved_) out.push_back(key + "=" + value);
  return out;
}

}  // namespace ddlab
