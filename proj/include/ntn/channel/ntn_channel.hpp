#pragma once

#include <limits>

#include "ntn/iq_frame.hpp"

namespace ntn::channel {

/// snr_db = kNoNoise disables the AWGN stage.
inline constexpr double kNoNoise = std::numeric_limits<double>::infinity();

struct ChannelProfile {
  double snr_db = kNoNoise;
  double cfo_hz = 0.0;
  long integer_delay_samples = 0;
  double fractional_delay_samples = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Propagation delay window. Only the split into integer and fractional
/// samples matters to the receiver, so the default is [0, 1] ms.
struct DelayRange {
  double min_s = 0.0;
  double max_s = 1e-3;
};

ChannelProfile draw_profile(std::uint64_t seed, double scs_hz, double sample_rate_hz,
                            DelayRange delay, double snr_db);

IqFrame apply_cfo(const IqFrame& frame, double cfo_hz);

/// Delays by integer + fractional samples; the frame length is kept, samples
/// pushed past the end are dropped and the head is zero-filled.
IqFrame apply_delay(const IqFrame& frame, long integer_delay, double fractional_delay);

/// Mean |x|^2 between the first and last sample whose power is at least
/// 1e-6 of the peak. Zero for an all-zero input.
double occupied_power(std::span<const cf64> samples);

IqFrame apply_awgn(const IqFrame& frame, double snr_db, std::uint64_t seed);

/// Seed used by simulate() for the noise stage.
std::uint64_t noise_seed(const ChannelProfile& profile);

/// delay -> CFO -> AWGN.
IqFrame simulate(const IqFrame& frame, const ChannelProfile& profile);

}  // namespace ntn::channel
