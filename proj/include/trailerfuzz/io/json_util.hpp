#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "trailerfuzz/errors.hpp"

namespace trailerfuzz::io {

using Json = nlohmann::json;

struct TextPosition {
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Line/column (1-based) of a byte offset, as reported by nlohmann parse errors.
inline TextPosition position_of(std::string_view text, std::size_t offset) {
  TextPosition pos;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++pos.line;
      pos.column = 1;
    } else {
      ++pos.column;
    }
  }
  return pos;
}

inline Json parse_json(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // e.byte is one past the offending character.
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    const TextPosition pos = position_of(text, at);
    std::ostringstream msg;
    msg << source << ":" << pos.line << ":" << pos.column << ": malformed JSON";
    std::string what = e.what();
    if (auto colon = what.rfind(": "); colon != std::string::npos) {
      msg << " (" << what.substr(colon + 2) << ")";
    }
    throw ConfigError(msg.str());
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline Json load_json_file(const std::string& path) { return parse_json(read_text_file(path), path); }

/// Rejects keys not in `allowed`.
inline void check_keys(const Json& obj, std::initializer_list<std::string_view> allowed,
                       const std::string& context) {
  if (!obj.is_object()) throw ConfigError(context + ": expected a JSON object");
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (auto k : allowed) ok = ok || item.key() == k;
    if (!ok) throw ConfigError(context + ": unknown key '" + item.key() + "'");
  }
}

inline const Json& require(const Json& obj, const std::string& key, const std::string& context) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(context + ": missing required key '" + key + "'");
  return *it;
}

inline double as_number(const Json& value, const std::string& context) {
  if (!value.is_number()) throw ConfigError(context + ": expected a number");
  const double d = value.get<double>();
  if (!std::isfinite(d)) throw ConfigError(context + ": expected a finite number");
  return d;
}

inline double number_or(const Json& obj, const std::string& key, double fallback,
                        const std::string& context) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : as_number(*it, context + "." + key);
}

inline std::string as_string(const Json& value, const std::string& context) {
  if (!value.is_string()) throw ConfigError(context + ": expected a string");
  return value.get<std::string>();
}

}  // namespace trailerfuzz::io
