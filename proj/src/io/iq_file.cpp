#include "ntn/io/iq_file.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace ntn::io {

static_assert(std::endian::native == std::endian::little, "file formats assume a little-endian host");

void CaptureMeta::validate() const {
  if (!(sample_rate_hz > 0.0) || !std::isfinite(sample_rate_hz))
    throw std::invalid_argument("capture sidecar: sample_rate_hz must be > 0");
  if (!std::isfinite(offset_hz()))
    throw std::invalid_argument("capture sidecar: center/tuned frequencies must be finite");
  if (!std::isfinite(gain_db)) throw std::invalid_argument("capture sidecar: gain_db not finite");
}

std::filesystem::path sidecar_path(const std::filesystem::path& iq_path) {
  return std::filesystem::path(iq_path.string() + ".json");
}

void write_iq(const IqFrame& frame, const CaptureMeta& meta, const std::filesystem::path& path) {
  meta.validate();
  std::vector<float> buf(2 * frame.size());
  for (std::size_t i = 0; i < frame.size(); ++i) {
    buf[2 * i] = static_cast<float>(frame.samples[i].real());
    buf[2 * i + 1] = static_cast<float>(frame.samples[i].imag());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(float)));
  if (!out) throw std::runtime_error("write failed: " + path.string());

  const nlohmann::json j = {{"sample_rate_hz", meta.sample_rate_hz},
                            {"center_freq_hz", meta.center_freq_hz},
                            {"tuned_freq_hz", meta.tuned_freq_hz},
                            {"gain_db", meta.gain_db},
                            {"timestamp", meta.timestamp}};
  std::ofstream side(sidecar_path(path));
  if (!side) throw std::runtime_error("cannot write " + sidecar_path(path).string());
  side << j.dump(2) << '\n';
}

IqCapture read_iq(const std::filesystem::path& path) { return read_iq(path, sidecar_path(path)); }

IqCapture read_iq(const std::filesystem::path& path, const std::filesystem::path& meta_path) {
  IqCapture cap;
  std::ifstream side(meta_path);
  if (!side) throw std::runtime_error("missing capture sidecar " + meta_path.string());
  try {
    const nlohmann::json j = nlohmann::json::parse(side);
    cap.meta.sample_rate_hz = j.at("sample_rate_hz").get<double>();
    cap.meta.center_freq_hz = j.at("center_freq_hz").get<double>();
    cap.meta.tuned_freq_hz = j.value("tuned_freq_hz", cap.meta.center_freq_hz);
    cap.meta.gain_db = j.value("gain_db", 0.0);
    cap.meta.timestamp = j.value("timestamp", std::string{});
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("invalid capture sidecar " + meta_path.string() + ": " + e.what());
  }
  cap.meta.validate();

  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  const auto bytes = static_cast<std::size_t>(in.tellg());
  if (bytes % sizeof(float) != 0 || (bytes / sizeof(float)) % 2 != 0) {
    throw std::runtime_error(path.string() + ": truncated IQ file (" + std::to_string(bytes) +
                             " bytes is not a whole number of float32 I/Q pairs)");
  }
  std::vector<float> buf(bytes / sizeof(float));
  in.seekg(0);
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(bytes));
  if (!in) throw std::runtime_error("read failed: " + path.string());

  cap.frame.sample_rate_hz = cap.meta.sample_rate_hz;
  cap.frame.center_freq_hz = cap.meta.tuned_freq_hz;
  cap.frame.gain_db = cap.meta.gain_db;
  cap.frame.samples.resize(buf.size() / 2);
  for (std::size_t i = 0; i < cap.frame.samples.size(); ++i) {
    cap.frame.samples[i] = cf64(buf[2 * i], buf[2 * i + 1]);
  }
  return cap;
}

}  // namespace ntn::io
