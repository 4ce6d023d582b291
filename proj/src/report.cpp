#include "rfwave/report.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "rfwave/version.hpp"

namespace rfwave {

bool Report::add(const std::string& name, bool pass, double measured, double expected,
                 double tolerance) {
  results.push_back(ReportEntry{name, pass, measured, expected, tolerance});
  return pass;
}

bool Report::add_abs(const std::string& name, double measured, double expected,
                     double tolerance) {
  return add(name, std::abs(measured - expected) <= tolerance, measured, expected,
             tolerance);
}

bool Report::add_bound(const std::string& name, double measured, double bound) {
  return add(name, measured <= bound, measured, bound, bound);
}

bool Report::all_pass() const {
  for (const auto& r : results) {
    if (!r.pass) return false;
  }
  return true;
}

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["config_hash"] = config_hash;
  j["version"] = kVersion;
  j["results"] = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json e;
    e["name"] = r.name;
    e["pass"] = r.pass;
    e["measured"] = r.measured;
    e["expected"] = r.expected;
    e["tolerance"] = r.tolerance;
    j["results"].push_back(e);
  }
  return j.dump(2) + "\n";
}

void Report::write(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("report: cannot open '" + path + "'");
  os << to_json();
  if (!os) throw std::runtime_error("report: write failed for '" + path + "'");
}

}  // namespace rfwave
