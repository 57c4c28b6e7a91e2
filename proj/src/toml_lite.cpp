#include "regres/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace regres {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw ConfigParseError("line " + std::to_string(line) + ": " + msg);
}

/// Strips a trailing comment that is not inside a string.
std::string strip_comment(const std::string& s) {
  bool in_str = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"' && (i == 0 || s[i - 1] != '\\')) in_str = !in_str;
    if (s[i] == '#' && !in_str) return s.substr(0, i);
  }
  return s;
}

TomlValue parse_value(const std::string& raw, std::size_t line) {
  if (raw.empty()) fail(line, "missing value");
  if (raw.front() == '"') {
    if (raw.size() < 2 || raw.back() != '"') fail(line, "unterminated string");
    std::string out;
    for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
      char c = raw[i];
      if (c == '\\') {
        if (i + 2 >= raw.size()) fail(line, "dangling escape");
        const char n = raw[++i];
        switch (n) {
          case '"': c = '"'; break;
          case '\\': c = '\\'; break;
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          default: fail(line, std::string("unsupported escape \\") + n);
        }
      } else if (c == '"') {
        fail(line, "unexpected quote inside string");
      }
      out.push_back(c);
    }
    return out;
  }
  if (raw == "true") return true;
  if (raw == "false") return false;
  if (raw.front() == '[' || raw.front() == '{') fail(line, "arrays and inline tables are not supported");

  std::string digits;
  for (char c : raw) {
    if (c != '_') digits.push_back(c);
  }
  const bool looks_float = digits.find_first_of(".eE") != std::string::npos;
  const char* first = digits.data();
  const char* last = digits.data() + digits.size();
  if (*first == '+') ++first;
  if (looks_float) {
    // from_chars for double is unavailable in older libstdc++; istringstream is exact enough here.
    std::istringstream in(std::string(first, last));
    in.imbue(std::locale::classic());
    double v = 0;
    in >> v;
    if (!in || in.peek() != EOF) fail(line, "bad float '" + raw + "'");
    return v;
  }
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) fail(line, "bad value '" + raw + "'");
  return v;
}

}  // namespace

std::map<std::string, TomlValue> parse_flat_toml(const std::string& text) {
  std::map<std::string, TomlValue> out;
  std::istringstream in(text);
  std::string raw_line;
  std::size_t line = 0;
  while (std::getline(in, raw_line)) {
    ++line;
    const std::string s = trim(strip_comment(raw_line));
    if (s.empty()) continue;
    if (s.front() == '[') fail(line, "tables are not supported");
    const auto eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected key = value");
    const std::string key = trim(s.substr(0, eq));
    if (key.empty()) fail(line, "empty key");
    for (char c : key) {
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) fail(line, "bad key '" + key + "'");
    }
    if (out.count(key)) fail(line, "duplicate key '" + key + "'");
    out.emplace(key, parse_value(trim(s.substr(eq + 1)), line));
  }
  return out;
}

}  // namespace regres
