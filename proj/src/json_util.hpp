#pragma once

#include <initializer_list>
#include <string>

#include "nervekit/core.hpp"

namespace nervekit::detail {

inline void require_fields(const Json& j, std::initializer_list<const char*> allowed, const std::string& what) {
  if (!j.is_object()) throw InputError(what + " must be a JSON object");
  for (auto& [k, v] : j.items()) {
    bool ok = false;
    for (auto* a : allowed) ok = ok || k == a;
    if (!ok) throw InputError(what + ": unknown field '" + k + "'");
  }
}

inline const Json& field(const Json& j, const char* k, const std::string& what) {
  auto it = j.find(k);
  if (it == j.end()) throw InputError(what + ": missing field '" + std::string(k) + "'");
  return *it;
}

inline std::string str(const Json& j, const std::string& what) {
  if (!j.is_string()) throw InputError(what + ": expected a string id");
  return j.get<std::string>();
}

}  // namespace nervekit::detail
