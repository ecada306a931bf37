#pragma once

#include <map>
#include <string>

namespace kam {

// Flat key = value text file; all numerics stay decimal strings so parsing
// happens once, at the consumer's precision.
class Config {
 public:
  Config() = default;
  static Config load(const std::string& path);
  void save(const std::string& path) const;

  bool has(const std::string& key) const { return kv_.count(key) != 0; }
  std::string get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  void set(const std::string& key, const std::string& value) { kv_[key] = value; }

  const std::map<std::string, std::string>& items() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace kam
