#include "rotospin/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "rotospin/errors.hpp"

namespace rotospin {
namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

}  // namespace

bool ConfigSection::has(std::string_view key) const { return find(key) != nullptr; }

const ConfigEntry* ConfigSection::find(std::string_view key) const {
  const auto it = entries_.find(std::string(key));
  if (it == entries_.end()) return nullptr;
  it->second.used = true;
  return &it->second;
}

std::optional<std::string> ConfigSection::get_string(std::string_view key) const {
  const auto* e = find(key);
  if (!e) return std::nullopt;
  return e->value;
}

std::optional<double> ConfigSection::get_double(std::string_view key) const {
  const auto* e = find(key);
  if (!e) return std::nullopt;
  double v = 0.0;
  const char* first = e->value.data();
  const char* last = first + e->value.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    throw ConfigError("'" + std::string(key) + "' expects a finite number, got '" + e->value + "'",
                      e->line);
  }
  return v;
}

std::optional<int> ConfigSection::get_int(std::string_view key) const {
  const auto* e = find(key);
  if (!e) return std::nullopt;
  int v = 0;
  const char* first = e->value.data();
  const char* last = first + e->value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw ConfigError("'" + std::string(key) + "' expects an integer, got '" + e->value + "'",
                      e->line);
  }
  return v;
}

std::optional<bool> ConfigSection::get_bool(std::string_view key) const {
  const auto* e = find(key);
  if (!e) return std::nullopt;
  const auto& v = e->value;
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  throw ConfigError("'" + std::string(key) + "' expects true/false, got '" + v + "'", e->line);
}

void ConfigSection::set(const std::string& key, std::string value, int line) {
  entries_[key] = ConfigEntry{std::move(value), line, false};
}

void ConfigSection::reject_unused() const {
  for (const auto& [k, e] : entries_) {
    if (!e.used) {
      const std::string where = name_.empty() ? std::string("top level") : "[" + name_ + "]";
      throw ConfigError("unknown key '" + k + "' in " + where, e.line);
    }
  }
}

KeyValueConfig::KeyValueConfig() { sections_.emplace_back("", 0); }

KeyValueConfig KeyValueConfig::parse(std::istream& in) {
  KeyValueConfig cfg;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", lineno);
      const auto name = trim(line.substr(1, line.size() - 2));
      if (!valid_name(name)) throw ConfigError("invalid section name", lineno);
      cfg.sections_.emplace_back(std::string(name), lineno);
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", lineno);
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (!valid_name(key)) throw ConfigError("invalid key '" + std::string(key) + "'", lineno);
    if (value.empty()) throw ConfigError("missing value for '" + std::string(key) + "'", lineno);
    auto& sec = cfg.sections_.back();
    if (sec.entries_.count(std::string(key)) != 0) {
      throw ConfigError("duplicate key '" + std::string(key) + "'", lineno);
    }
    sec.entries_.emplace(std::string(key), ConfigEntry{std::string(value), lineno, false});
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::parse_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse(in);
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    return parse(in);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

const ConfigSection* KeyValueConfig::section(std::string_view name) const {
  for (const auto& s : sections_) {
    if (s.name() == name) return &s;
  }
  return nullptr;
}

ConfigSection& KeyValueConfig::section_for_update(std::string_view name) {
  for (auto& s : sections_) {
    if (s.name() == name) return s;
  }
  sections_.emplace_back(std::string(name), 0);
  return sections_.back();
}

ConfigSection& KeyValueConfig::append_section(std::string_view name, int line) {
  sections_.emplace_back(std::string(name), line);
  return sections_.back();
}

std::vector<const ConfigSection*> KeyValueConfig::sections_named(std::string_view name) const {
  std::vector<const ConfigSection*> out;
  for (const auto& s : sections_) {
    if (s.name() == name) out.push_back(&s);
  }
  return out;
}

void KeyValueConfig::reject_unused() const {
  for (const auto& s : sections_) s.reject_unused();
}

}  // namespace rotospin
