#pragma once

///
/// JSON pass/fail reports: {config_hash, version, results:[{name, pass,
/// measured, expected, tolerance}]}.  Entry order is insertion order and
/// number formatting is round-trip exact, so identical runs produce
/// byte-identical artifacts.
///

#include <string>
#include <vector>

namespace rfwave {

struct ReportEntry {
  std::string name;
  bool pass = false;
  double measured = 0;
  double expected = 0;
  double tolerance = 0;
};

struct Report {
  std::string config_hash;
  std::vector<ReportEntry> results;

  /// Appends an entry and returns its pass flag (handy for chaining).
  bool add(const std::string& name, bool pass, double measured, double expected,
           double tolerance);

  /// Convenience: pass iff |measured - expected| <= tolerance.
  bool add_abs(const std::string& name, double measured, double expected,
               double tolerance);

  /// Convenience: pass iff measured <= bound (tolerance column repeats the
  /// bound, expected column carries the bound too).
  bool add_bound(const std::string& name, double measured, double bound);

  bool all_pass() const;
  std::string to_json() const;
  void write(const std::string& path) const;
};

}  // namespace rfwave
