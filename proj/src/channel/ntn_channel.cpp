#include "ntn/channel/ntn_channel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace ntn::channel {

namespace {

constexpr std::uint64_t kCfoStream = 1;
constexpr std::uint64_t kDelayStream = 2;
constexpr std::uint64_t kNoiseStream = 3;

constexpr int kHalfTaps = 32;  // 64-tap interpolator

double sinc(double x) {
  if (x == 0.0) return 1.0;
  return std::sin(kPi * x) / (kPi * x);
}

}  // namespace

void ChannelProfile::validate() const {
  if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity())
    throw std::invalid_argument("ChannelProfile: snr_db must be finite or +inf");
  if (!std::isfinite(cfo_hz)) throw std::invalid_argument("ChannelProfile: cfo_hz not finite");
  if (integer_delay_samples < 0)
    throw std::invalid_argument("ChannelProfile: integer_delay_samples < 0");
  if (!(fractional_delay_samples >= 0.0 && fractional_delay_samples < 1.0))
    throw std::invalid_argument("ChannelProfile: fractional_delay_samples outside [0,1)");
}

ChannelProfile draw_profile(std::uint64_t seed, double scs_hz, double sample_rate_hz,
                            DelayRange delay, double snr_db) {
  if (!(scs_hz > 0.0)) throw std::invalid_argument("draw_profile: scs_hz must be > 0");
  if (!(sample_rate_hz > 0.0)) throw std::invalid_argument("draw_profile: sample rate must be > 0");
  if (delay.min_s < 0.0 || !(delay.max_s >= delay.min_s))
    throw std::invalid_argument("draw_profile: empty or negative delay range");

  ChannelProfile p;
  p.seed = seed;
  p.snr_db = snr_db;

  std::mt19937_64 cfo_rng(sub_seed(seed, kCfoStream));
  p.cfo_hz = std::uniform_real_distribution<double>(-scs_hz / 2, scs_hz / 2)(cfo_rng);

  std::mt19937_64 delay_rng(sub_seed(seed, kDelayStream));
  const double d = std::uniform_real_distribution<double>(delay.min_s, delay.max_s)(delay_rng);
  const double samples = d * sample_rate_hz;
  p.integer_delay_samples = static_cast<long>(std::floor(samples));
  p.fractional_delay_samples = samples - std::floor(samples);
  if (p.fractional_delay_samples >= 1.0) p.fractional_delay_samples = 0.0;
  p.validate();
  return p;
}

IqFrame apply_cfo(const IqFrame& frame, double cfo_hz) {
  IqFrame out = frame;
  if (cfo_hz == 0.0) return out;
  frame.validate();
  const double w = 2.0 * kPi * cfo_hz / frame.sample_rate_hz;
  for (std::size_t n = 0; n < out.samples.size(); ++n) {
    // Reduce the phase before evaluating to keep precision on long frames.
    const double phase = std::remainder(w * static_cast<double>(n), 2.0 * kPi);
    out.samples[n] *= cf64(std::cos(phase), std::sin(phase));
  }
  return out;
}

IqFrame apply_delay(const IqFrame& frame, long integer_delay, double fractional_delay) {
  if (integer_delay < 0) throw std::invalid_argument("apply_delay: negative integer delay");
  if (!(fractional_delay >= 0.0 && fractional_delay < 1.0))
    throw std::invalid_argument("apply_delay: fractional delay outside [0,1)");

  const long n = static_cast<long>(frame.samples.size());
  IqFrame out = frame;
  std::fill(out.samples.begin(), out.samples.end(), cf64{});

  CVec shifted(frame.samples.size());
  for (long i = integer_delay; i < n; ++i) shifted[i] = frame.samples[i - integer_delay];
  if (fractional_delay == 0.0) {
    out.samples = std::move(shifted);
    return out;
  }

  // y[i] = sum_j h[j] x[i - j], h[j] = sinc(j - d) * hann(j - d), j = -31..32.
  double h[2 * kHalfTaps];
  for (int t = 0; t < 2 * kHalfTaps; ++t) {
    const double x = (t - kHalfTaps + 1) - fractional_delay;
    const double w = 0.5 * (1.0 + std::cos(kPi * x / kHalfTaps));
    h[t] = sinc(x) * w;
  }
  for (long i = 0; i < n; ++i) {
    cf64 acc{};
    for (int t = 0; t < 2 * kHalfTaps; ++t) {
      const long src = i - (t - kHalfTaps + 1);
      if (src >= 0 && src < n) acc += h[t] * shifted[src];
    }
    out.samples[i] = acc;
  }
  return out;
}

double occupied_power(std::span<const cf64> samples) {
  double peak = 0.0;
  for (const auto& s : samples) peak = std::max(peak, std::norm(s));
  if (peak == 0.0) return 0.0;
  const double floor = 1e-6 * peak;
  std::size_t first = 0;
  while (std::norm(samples[first]) < floor) ++first;
  std::size_t last = samples.size() - 1;
  while (std::norm(samples[last]) < floor) --last;
  double acc = 0.0;
  for (std::size_t i = first; i <= last; ++i) acc += std::norm(samples[i]);
  return acc / static_cast<double>(last - first + 1);
}

IqFrame apply_awgn(const IqFrame& frame, double snr_db, std::uint64_t seed) {
  if (std::isnan(snr_db)) throw std::invalid_argument("apply_awgn: snr_db is NaN");
  if (snr_db == kNoNoise) return frame;
  const double power = occupied_power(frame.samples);
  if (!(power > 0.0)) throw std::invalid_argument("apply_awgn: frame has zero signal power");

  const double sigma = std::sqrt(power / std::pow(10.0, snr_db / 10.0) / 2.0);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, sigma);
  IqFrame out = frame;
  for (auto& s : out.samples) {
    const double re = g(rng);
    const double im = g(rng);
    s += cf64(re, im);
  }
  return out;
}

std::uint64_t noise_seed(const ChannelProfile& profile) {
  return sub_seed(profile.seed, kNoiseStream);
}

IqFrame simulate(const IqFrame& frame, const ChannelProfile& profile) {
  profile.validate();
  IqFrame out = apply_delay(frame, profile.integer_delay_samples, profile.fractional_delay_samples);
  out = apply_cfo(out, profile.cfo_hz);
  return apply_awgn(out, profile.snr_db, noise_seed(profile));
}

}  // namespace ntn::channel
