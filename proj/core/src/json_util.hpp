#pragma once

// Private helpers shared by the document readers and writers.

#include <json.hpp>

#include <string>
#include <string_view>

#include "cbd/error.hpp"

namespace cbd {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

inline json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("syntax error: ") + e.what(), e.byte);
  }
}

inline const json& require(const json& obj, const char* key) {
  if (!obj.is_object()) throw ParseError("expected a JSON object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

inline std::string require_string(const json& obj, const char* key) {
  const json& v = require(obj, key);
  if (!v.is_string()) throw ParseError(std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

inline const json& require_array(const json& obj, const char* key) {
  const json& v = require(obj, key);
  if (!v.is_array()) throw ParseError(std::string("field \"") + key + "\" must be an array");
  return v;
}

inline const json& require_object(const json& obj, const char* key) {
  const json& v = require(obj, key);
  if (!v.is_object()) throw ParseError(std::string("field \"") + key + "\" must be an object");
  return v;
}

inline void require_format(const json& doc, std::string_view expected) {
  const std::string format = require_string(doc, "format");
  if (format != expected) {
    throw ParseError("unsupported format \"" + format + "\", expected \"" + std::string(expected) + "\"");
  }
}

}  // namespace cbd
