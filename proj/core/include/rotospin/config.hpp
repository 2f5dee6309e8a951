#pragma once

// Structured key-value text:
//
//   # comment (also ';')
//   key = value            <- top-level section ""
//   [section]
//   key = value
//
// Sections may repeat (e.g. one [member] block per ensemble member); keys may
// not repeat within one block.

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rotospin {

struct ConfigEntry {
  std::string value;
  int line = 0;
  mutable bool used = false;
};

class ConfigSection {
 public:
  ConfigSection(std::string name, int line) : name_(std::move(name)), line_(line) {}

  const std::string& name() const { return name_; }
  int line() const { return line_; }
  const std::map<std::string, ConfigEntry>& entries() const { return entries_; }

  bool has(std::string_view key) const;
  const ConfigEntry* find(std::string_view key) const;

  std::optional<std::string> get_string(std::string_view key) const;
  /// Throws ConfigError (anchored at the entry's line) if the value is not a
  /// finite number.
  std::optional<double> get_double(std::string_view key) const;
  std::optional<int> get_int(std::string_view key) const;
  std::optional<bool> get_bool(std::string_view key) const;

  /// Inserts or replaces; used for command-line overrides (line 0).
  void set(const std::string& key, std::string value, int line = 0);

  /// Throws ConfigError at the first key that was never read.
  void reject_unused() const;

 private:
  friend class KeyValueConfig;
  std::string name_;
  int line_;
  std::map<std::string, ConfigEntry> entries_;
};

class KeyValueConfig {
 public:
  KeyValueConfig();

  /// Throws ConfigError with the offending line number.
  static KeyValueConfig parse(std::istream& in);
  static KeyValueConfig parse_string(std::string_view text);
  /// Throws ConfigError if the file cannot be read.
  static KeyValueConfig load(const std::string& path);

  const std::vector<ConfigSection>& sections() const { return sections_; }

  /// First section with this name, nullptr if absent.
  const ConfigSection* section(std::string_view name) const;
  /// First section with this name, created empty if absent.
  ConfigSection& section_for_update(std::string_view name);
  /// New empty block at the end (for repeatable sections).
  ConfigSection& append_section(std::string_view name, int line = 0);
  std::vector<const ConfigSection*> sections_named(std::string_view name) const;

  /// reject_unused over every section.
  void reject_unused() const;

 private:
  std::vector<ConfigSection> sections_;
};

}  // namespace rotospin
