#pragma once

// Field readers that turn JSON shape errors into ParseError with context.

#include <optional>
#include <string>

#include "xmcts/errors.h"
#include "xmcts/json_io.h"

namespace xmcts::json_fields {

inline const Json& field(const Json& j, const char* name, std::string_view where) {
  if (!j.is_object()) throw ParseError(std::string(where) + ": expected an object");
  auto it = j.find(name);
  if (it == j.end()) throw ParseError(std::string(where) + ": missing field '" + name + "'");
  return *it;
}

template <typename T>
T get(const Json& j, const char* name, std::string_view where) {
  const Json& v = field(j, name, where);
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(std::string(where) + ": field '" + name + "' has the wrong type");
  }
}

template <typename T>
std::optional<T> get_opt(const Json& j, const char* name, std::string_view where) {
  auto it = j.find(name);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return get<T>(j, name, where);
}

}  // namespace xmcts::json_fields
