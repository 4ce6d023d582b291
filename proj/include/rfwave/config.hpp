#pragma once

///
/// Strict flat key-value experiment configs with [section] headers.
///
///   # comment
///   [params]
///   alpha = 1.5
///   theta = 0.0
///
/// Strictness contract: every key a command does not consume is an error
/// (reproducibility beats flexibility), duplicate keys are errors, and all
/// admissibility checks re-run at load time in the commands.  The config
/// hash (FNV-1a over the canonical sorted entries) is embedded in every
/// artifact for provenance.
///

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace rfwave {

class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& section, const std::string& key) const;

  /// Typed getters; the no-default forms throw when the key is absent.
  /// Every getter marks the key consumed (see require_all_consumed).
  std::string get_string(const std::string& section, const std::string& key);
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback);
  double get_double(const std::string& section, const std::string& key);
  double get_double(const std::string& section, const std::string& key, double fallback);
  long get_int(const std::string& section, const std::string& key);
  long get_int(const std::string& section, const std::string& key, long fallback);
  /// Comma-separated list of doubles.
  std::vector<double> get_list(const std::string& section, const std::string& key);
  std::vector<double> get_list(const std::string& section, const std::string& key,
                               const std::vector<double>& fallback);

  /// Throws listing every key that was never consumed by a getter
  /// (unknown-key strictness).
  void require_all_consumed() const;

  /// FNV-1a 64-bit over canonical "section.key=value" entries, sorted.
  std::uint64_t hash() const;
  std::string hash_hex() const;

 private:
  struct Entry {
    std::string value;
    mutable bool consumed = false;
  };
  // map keeps deterministic (sorted) iteration for hashing and error lists.
  std::map<std::string, std::map<std::string, Entry>> sections_;
  std::string origin_;

  const Entry* find(const std::string& section, const std::string& key) const;
};

}  // namespace rfwave
