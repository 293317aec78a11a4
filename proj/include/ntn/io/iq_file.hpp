#pragma once

#include <filesystem>
#include <string>

#include "ntn/iq_frame.hpp"

namespace ntn::io {

/// Sidecar of an IQ file. The receiver frequency may differ from the
/// signal's carrier; the difference is removed at ingestion.
struct CaptureMeta {
  double sample_rate_hz = 0.0;
  double center_freq_hz = 0.0;  // carrier of the SSB
  double tuned_freq_hz = 0.0;   // receiver LO
  double gain_db = 0.0;
  std::string timestamp;        // ISO-8601

  double offset_hz() const { return center_freq_hz - tuned_freq_hz; }
  void validate() const;
};

/// "<iq path>.json"
std::filesystem::path sidecar_path(const std::filesystem::path& iq_path);

/// Interleaved little-endian float32 I/Q plus the JSON sidecar.
void write_iq(const IqFrame& frame, const CaptureMeta& meta, const std::filesystem::path& path);

struct IqCapture {
  IqFrame frame;  // samples as stored, center_freq_hz = tuned frequency
  CaptureMeta meta;
};

IqCapture read_iq(const std::filesystem::path& path);
IqCapture read_iq(const std::filesystem::path& path, const std::filesystem::path& meta_path);

}  // namespace ntn::io
