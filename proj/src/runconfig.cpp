#include "qcolloid/runconfig.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "qcolloid/errors.hpp"

namespace qcolloid {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw InputError("config line " + std::to_string(line) + ": " + what);
}

}  // namespace

const ConfigEntry* ConfigSection::find(const std::string& key) const {
  for (const ConfigEntry& e : entries)
    if (e.key == key) return &e;
  return nullptr;
}

const std::string& ConfigSection::get(const std::string& key) const {
  const ConfigEntry* e = find(key);
  if (!e)
    throw InputError("config section [" + name + "] (line " +
                     std::to_string(line) + ") is missing key '" + key + "'");
  return e->value;
}

std::string ConfigSection::get_or(const std::string& key,
                                  const std::string& fallback) const {
  const ConfigEntry* e = find(key);
  return e ? e->value : fallback;
}

RunConfig RunConfig::parse(std::istream& in) {
  RunConfig cfg;
  std::string raw;
  int lineno = 0;
  ConfigSection* current = nullptr;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(lineno, "unterminated section header");
      std::string name = trim(s.substr(1, s.size() - 2));
      if (name.empty()) fail(lineno, "empty section name");
      if (cfg.find(name)) fail(lineno, "duplicate section [" + name + "]");
      cfg.sections.push_back({name, lineno, {}});
      current = &cfg.sections.back();
      continue;
    }
    size_t eq = s.find('=');
    if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
    if (!current) fail(lineno, "key outside any [section]");
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (key.empty()) fail(lineno, "empty key");
    if (current->find(key))
      fail(lineno, "duplicate key '" + key + "' in [" + current->name + "]");
    current->entries.push_back({key, value, lineno});
  }
  return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file: " + path);
  return parse(in);
}

std::string RunConfig::emit() const {
  std::ostringstream out;
  bool first = true;
  for (const ConfigSection& sec : sections) {
    if (!first) out << "\n";
    first = false;
    out << "[" << sec.name << "]\n";
    for (const ConfigEntry& e : sec.entries)
      out << e.key << " = " << e.value << "\n";
  }
  return out.str();
}

const ConfigSection* RunConfig::find(const std::string& name) const {
  for (const ConfigSection& s : sections)
    if (s.name == name) return &s;
  return nullptr;
}

void require_keys(const ConfigSection& section,
                  std::initializer_list<const char*> allowed) {
  for (const ConfigEntry& e : section.entries) {
    bool ok = false;
    for (const char* k : allowed)
      if (e.key == k) ok = true;
    if (!ok)
      throw InputError("config line " + std::to_string(e.line) +
                       ": unknown key '" + e.key + "' in [" + section.name +
                       "]");
  }
}

}  // namespace qcolloid
