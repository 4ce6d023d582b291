#include "rfwave/config.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rfwave {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void fail(const std::string& origin, std::size_t line_no,
                       const std::string& what) {
  throw std::runtime_error("config " + origin + ":" + std::to_string(line_no) +
                           ": " + what);
}

}  // namespace

Config Config::parse_string(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream is(text);
  std::string line, section;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']') fail(origin, line_no, "unterminated section header");
      section = trim(t.substr(1, t.size() - 2));
      if (section.empty()) fail(origin, line_no, "empty section name");
      cfg.sections_[section];  // allow empty sections
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) fail(origin, line_no, "expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) fail(origin, line_no, "empty key");
    if (section.empty()) fail(origin, line_no, "key before any [section] header");
    auto& sec = cfg.sections_[section];
    if (sec.count(key)) fail(origin, line_no, "duplicate key '" + key + "'");
    sec[key] = Entry{value, false};
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_string(buf.str(), path);
}

const Config::Entry* Config::find(const std::string& section, const std::string& key) const {
  const auto sit = sections_.find(section);
  if (sit == sections_.end()) return nullptr;
  const auto kit = sit->second.find(key);
  if (kit == sit->second.end()) return nullptr;
  return &kit->second;
}

bool Config::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

std::string Config::get_string(const std::string& section, const std::string& key) {
  const Entry* e = find(section, key);
  if (!e)
    throw std::runtime_error("config " + origin_ + ": missing required key [" +
                             section + "] " + key);
  e->consumed = true;
  return e->value;
}

std::string Config::get_string(const std::string& section, const std::string& key,
                               const std::string& fallback) {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  e->consumed = true;
  return e->value;
}

namespace {

double parse_double(const std::string& raw, const std::string& context) {
  const char* begin = raw.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw std::runtime_error("config: bad number '" + raw + "' for " + context);
  return v;
}

long parse_long(const std::string& raw, const std::string& context) {
  const char* begin = raw.c_str();
  char* end = nullptr;
  const long v = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0')
    throw std::runtime_error("config: bad integer '" + raw + "' for " + context);
  return v;
}

}  // namespace

double Config::get_double(const std::string& section, const std::string& key) {
  return parse_double(get_string(section, key), "[" + section + "] " + key);
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  e->consumed = true;
  return parse_double(e->value, "[" + section + "] " + key);
}

long Config::get_int(const std::string& section, const std::string& key) {
  return parse_long(get_string(section, key), "[" + section + "] " + key);
}

long Config::get_int(const std::string& section, const std::string& key, long fallback) {
  const Entry* e = find(section, key);
  if (!e) return fallback;
  e->consumed = true;
  return parse_long(e->value, "[" + section + "] " + key);
}

std::vector<double> Config::get_list(const std::string& section, const std::string& key) {
  const std::string raw = get_string(section, key);
  std::vector<double> out;
  std::stringstream ss(raw);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const std::string t = trim(cell);
    if (t.empty())
      throw std::runtime_error("config: empty element in list [" + section + "] " + key);
    out.push_back(parse_double(t, "[" + section + "] " + key));
  }
  if (out.empty())
    throw std::runtime_error("config: empty list [" + section + "] " + key);
  return out;
}

std::vector<double> Config::get_list(const std::string& section, const std::string& key,
                                     const std::vector<double>& fallback) {
  if (!has(section, key)) return fallback;
  return get_list(section, key);
}

void Config::require_all_consumed() const {
  std::string unknown;
  for (const auto& [sec, entries] : sections_) {
    for (const auto& [key, entry] : entries) {
      if (!entry.consumed) {
        if (!unknown.empty()) unknown += ", ";
        unknown += "[" + sec + "] " + key;
      }
    }
  }
  if (!unknown.empty())
    throw std::runtime_error("config " + origin_ + ": unknown keys: " + unknown);
}

std::uint64_t Config::hash() const {
  std::uint64_t h = 14695981039346656037ULL;
  const auto fold = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  };
  for (const auto& [sec, entries] : sections_) {
    for (const auto& [key, entry] : entries) {
      fold(sec);
      fold(".");
      fold(key);
      fold("=");
      fold(entry.value);
      fold("\n");
    }
  }
  return h;
}

std::string Config::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
  return buf;
}

}  // namespace rfwave
