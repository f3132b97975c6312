#pragma once

#include <initializer_list>
#include <istream>
#include <string>
#include <vector>

namespace qcolloid {

// Key-value run configuration, one section per subcommand:
//
//   # comment
//   [energy]
//   shape = torus
//   R = 2
//
// Parsing keeps line numbers so schema errors can point at the offender.
struct ConfigEntry {
  std::string key, value;
  int line = 0;
};

struct ConfigSection {
  std::string name;
  int line = 0;
  std::vector<ConfigEntry> entries;

  const ConfigEntry* find(const std::string& key) const;
  // InputError naming the line when the key is missing.
  const std::string& get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
};

struct RunConfig {
  std::vector<ConfigSection> sections;

  static RunConfig parse(std::istream& in);
  static RunConfig parse_file(const std::string& path);

  std::string emit() const;
  const ConfigSection* find(const std::string& name) const;
};

// InputError pointing at the first entry whose key is not in `allowed`.
void require_keys(const ConfigSection& section,
                  std::initializer_list<const char*> allowed);

}  // namespace qcolloid
