#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace nervekit {

using Json = nlohmann::json;

// Malformed input: unknown ids, bad shapes, unsupported parameters.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An enumeration or materialization would exceed a configured cap.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A construction violated a property that its preconditions guarantee.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

struct Certificate {
  bool pass = true;
  std::string law;
  Json witness;

  static Certificate ok(std::string law = "", Json witness = nullptr) {
    return {true, std::move(law), std::move(witness)};
  }
  static Certificate fail(std::string law, Json witness) {
    return {false, std::move(law), std::move(witness)};
  }
  Json to_json() const {
    return Json{{"pass", pass}, {"law", law}, {"witness", witness}};
  }
  explicit operator bool() const { return pass; }
};

// Enumeration limits. Defaults keep every bundled fixture fast.
struct Caps {
  int max_objects = 4;
  int max_hom_morphisms = 16;
  std::int64_t max_level_objects = 1 << 16;
  std::int64_t max_level_morphisms = 1 << 22;
  std::int64_t max_search = 1 << 24;

  static Caps from_json(const Json& j);
  Json to_json() const;
};

}  // namespace nervekit
