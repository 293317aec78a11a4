#pragma once

#include <cmath>
#include <limits>

#include "json.hpp"

namespace ntn::io::detail {

// JSON has no infinity; the noiseless SNR tag is written as "inf".
inline nlohmann::json snr_json(double snr_db) {
  if (std::isinf(snr_db)) return snr_db > 0 ? "inf" : "-inf";
  return snr_db;
}

inline double snr_value(const nlohmann::json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw std::runtime_error("bad SNR value: " + s);
  }
  return j.get<double>();
}

}  // namespace ntn::io::detail
