#pragma once
//
// Reproduction configs: a [field] block, exactly one family block, and
// optional [analysis] and [expect] blocks of `key = value` lines.
//
//   [field]
//   p = 2
//   m = 6
//
//   [elliptic-quotient]
//   curve = 0 0 1 0 0          # a1 a2 a3 a4 a6
//   kernel_order = 3
//   kernel = x=0
//   ...
//
// '#' starts a comment.  List values are separated by ';'.
//

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "geolrc/analysis.hpp"

namespace geolrc {

struct ConfigValue {
  std::string text;
  int line = 0;
};

struct Config {
  std::string source;  // file name or built-in id
  FieldPtr field;
  std::string family;
  int family_line = 0;
  std::map<std::string, ConfigValue> params;
  DistancePolicy policy;
  std::map<std::string, ConfigValue> expect;

  /// Replace (or add) a family parameter, e.g. t for a sweep.
  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return params.count(key) > 0; }
  const ConfigValue& get(const std::string& key) const;  // ConfigError when missing
  int get_int(const std::string& key) const;
  std::optional<int> get_int_opt(const std::string& key) const;
};

/// Throws ConfigError with the offending line.
Config parse_config(const std::string& text, const std::string& source = "<config>");
Config load_config(const std::string& path);

struct FamilyInfo {
  std::string tag;
  std::vector<std::string> required, optional;
  std::string summary;
};

const std::vector<FamilyInfo>& families();

/// Builds the code described by the config.  Precondition failures surface
/// as ConstructionError; parse problems in values as ConfigError.  With
/// `force` a nonpositive designed distance is accepted.
LinearCode build_from_config(const Config& cfg, bool force = false);

/// Names of the configs compiled into the library, sorted.
std::vector<std::string> builtin_config_ids();
/// Text of a built-in config; nullopt for unknown ids.
std::optional<std::string> builtin_config_text(const std::string& id);
Config builtin_config(const std::string& id);

}  // namespace geolrc
