#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>

namespace regres {

class ConfigParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using TomlValue = std::variant<std::int64_t, double, bool, std::string>;

/// Flat `key = value` documents: integers, floats, booleans and basic
/// double-quoted strings, with `#` comments. Tables, arrays and dotted keys
/// are rejected, as are duplicate keys.
std::map<std::string, TomlValue> parse_flat_toml(const std::string& text);

}  // namespace regres
