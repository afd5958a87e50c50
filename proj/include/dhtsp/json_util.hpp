#pragma once

#include <cmath>
#include <cstdint>

#include "json.hpp"

namespace dhtsp {

using ordered_json = nlohmann::ordered_json;

// Integral values print without a fractional part ("2", not "2.0"); the rest
// use the library's shortest round-trip form.
inline ordered_json json_number(double x) {
  if (!std::isfinite(x)) return nullptr;
  if (std::nearbyint(x) == x && std::fabs(x) < 9007199254740992.0) return static_cast<std::int64_t>(x);
  return x;
}

}  // namespace dhtsp
