#pragma once

#include <optional>
#include <stdexcept>

#include "ntn/types.hpp"

namespace ntn {

/// Complex baseband samples with their capture metadata.
struct IqFrame {
  CVec samples;
  double sample_rate_hz = 0.0;
  double center_freq_hz = 0.0;
  std::optional<double> gain_db;

  std::size_t size() const { return samples.size(); }

  void validate() const {
    if (!(sample_rate_hz > 0.0)) throw std::invalid_argument("IqFrame: sample rate must be > 0");
    if (samples.empty()) throw std::invalid_argument("IqFrame: no samples");
  }
};

}  // namespace ntn
