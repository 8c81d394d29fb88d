#pragma once
#include <map>
#include <set>
#include <string>
#include <vector>

namespace ddlab {

// Flat `key=value` configuration: one pair per line, `#` comments, blank
// lines ignored. Typed getters record the resolved value (defaults included)
// so outputs can embed the full configuration.
class Config {
 public:
  Config() = default;
  static Config load(const std::string& path);
  static Config from_string(const std::string& text);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback);
  std::string require_string(const std::string& key);
  double get_double(const std::string& key, double fallback);
  double require_double(const std::string& key);
  long get_long(const std::string& key, long fallback);
  std::vector<double> get_doubles(const std::string& key);  // comma list, may be absent
  std::vector<long> get_longs(const std::string& key);

  // throws listing any key never consumed by a getter
  void reject_unknown() const;
  // "key=value" for every resolved key, sorted (for output headers)
  std::vector<std::string> resolved() const;

 private:
  double parse_double(const std::string& key, const std::string& raw) const;
  std::map<std::string, std::string> values_;
  std::map<std::string, std::string> resolved_;
  std::set<std::string> consumed_;
};

}  // namespace ddlab
