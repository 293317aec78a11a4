#include "ntn/io/capture.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>

#include "ntn/channel/ntn_channel.hpp"

namespace ntn::io {

IqFrame derotate_capture(const IqCapture& cap) {
  cap.meta.validate();
  IqFrame out = channel::apply_cfo(cap.frame, -cap.meta.offset_hz());
  out.center_freq_hz = cap.meta.center_freq_hz;
  return out;
}

tx::OfdmConfig ofdm_for_rate(double sample_rate_hz, double scs_hz) {
  const double n = sample_rate_hz / scs_hz;
  const long fft = std::lround(n);
  if (std::abs(n - static_cast<double>(fft)) > 1e-6 || fft < 256 || (fft & (fft - 1)) != 0) {
    throw std::invalid_argument("sample rate " + std::to_string(sample_rate_hz) +
                                " Hz is not a power-of-two multiple (>= 256) of the SCS");
  }
  tx::OfdmConfig cfg;
  cfg.fft_size = static_cast<int>(fft);
  cfg.scs_hz = scs_hz;
  return cfg;
}

namespace {

IqFrame slice(const IqFrame& frame, long b, long e) {
  IqFrame win;
  win.sample_rate_hz = frame.sample_rate_hz;
  win.center_freq_hz = frame.center_freq_hz;
  win.samples.assign(frame.samples.begin() + b, frame.samples.begin() + e);
  return win;
}

std::optional<long> find_ssb(const IqFrame& frame, long b, long e, const rx::SyncConfig& cfg) {
  try {
    return b + rx::detect_pss(slice(frame, b, e), cfg).timing_offset_samples;
  } catch (const rx::SyncError&) {
    return std::nullopt;
  }
}

}  // namespace

std::vector<long> locate_bursts(const IqFrame& frame, const rx::SyncConfig& cfg, double period_s) {
  frame.validate();
  const long period = std::lround(period_s * frame.sample_rate_hz);
  const long ssb = tx::ssb_length(cfg.ofdm);
  const long margin = ssb + 2L * cfg.ofdm.fft_size;
  const long total = static_cast<long>(frame.size());
  if (period <= 4 * margin) throw std::invalid_argument("SSB period too short for one burst");

  // First SSB anywhere in one period (plus margin) fixes the burst phase.
  std::optional<long> first;
  for (long w = 0; w + margin <= total && !first; w += period) {
    first = find_ssb(frame, w, std::min(total, w + period + margin), cfg);
  }
  std::vector<long> starts;
  if (!first) return starts;

  // Then one search of +-period/4 around every expected SSB, following drift.
  const long guard = period / 4;
  for (long expect = *first % period; expect + ssb <= total; expect += period) {
    const long b = std::max(0L, expect - guard);
    const long e = std::min(total, expect + ssb + guard);
    if (e - b < margin) continue;
    const auto s = find_ssb(frame, b, e, cfg);
    if (!s || *s + ssb > total) continue;
    starts.push_back(*s);
    expect = *s;
  }
  return starts;
}

IqFrame cut_burst(const IqFrame& frame, long start, const tx::OfdmConfig& ofdm, long guard) {
  const long total = static_cast<long>(frame.size());
  const long b = std::clamp(start - guard, 0L, total);
  const long e = std::clamp(start + tx::ssb_length(ofdm) + guard, b, total);
  IqFrame out;
  out.sample_rate_hz = frame.sample_rate_hz;
  out.center_freq_hz = frame.center_freq_hz;
  out.gain_db = frame.gain_db;
  out.samples.assign(frame.samples.begin() + b, frame.samples.begin() + e);
  return out;
}

std::vector<IqFrame> split_capture(const IqCapture& cap, const rx::SyncConfig& cfg,
                                   double period_s) {
  const IqFrame frame = derotate_capture(cap);
  std::vector<IqFrame> out;
  for (const long s : locate_bursts(frame, cfg, period_s)) {
    out.push_back(cut_burst(frame, s, cfg.ofdm, cfg.ofdm.fft_size));
  }
  return out;
}

}  // namespace ntn::io

namespace ntn::io {

SyntheticCapture synthesize_capture(const CaptureSpec& spec) {
  if (spec.count < 1) throw std::invalid_argument("capture needs at least one burst");
  if (spec.cell_min < 0 || spec.cell_max > kMaxCellId || spec.cell_min > spec.cell_max)
    throw std::invalid_argument("bad cell id range");
  if (spec.sfn_first < 0 || spec.sfn_last > 1023 || spec.sfn_first > spec.sfn_last)
    throw std::invalid_argument("bad SFN range");
  const auto& cfg = spec.burst;
  const double fs = cfg.ofdm.sample_rate_hz();
  const long period = std::lround(spec.period_s * fs);
  if (cfg.frame_length() > period) throw std::invalid_argument("burst longer than the SSB period");

  SyntheticCapture out;
  IqFrame& frame = out.capture.frame;
  frame.sample_rate_hz = fs;
  frame.center_freq_hz = spec.center_freq_hz - spec.carrier_offset_hz;
  frame.gain_db = spec.gain_db;
  frame.samples.assign(static_cast<std::size_t>(period * spec.count), cf64{});

  const int sfn_span = spec.sfn_last - spec.sfn_first + 1;
  for (int k = 0; k < spec.count; ++k) {
    const std::uint64_t s = sub_seed(spec.seed, 0x6E4, static_cast<std::uint64_t>(k));
    std::mt19937_64 rng(sub_seed(s, 11));
    BurstTruth t;
    t.mib = models::random_mib(rng);
    t.mib.sfn = spec.sfn_first + (2 * k) % sfn_span;
    t.mib.half_frame_bit = false;
    t.cell_id = std::uniform_int_distribution<int>(spec.cell_min, spec.cell_max)(rng);
    t.issb = cfg.random_issb ? std::uniform_int_distribution<int>(0, 3)(rng) : 0;
    tx::SsbTxConfig txc;
    txc.ofdm = cfg.ofdm;
    txc.pbch = cfg.pbch;
    txc.issb = t.issb;
    const auto ssb = tx::generate_ssb(t.mib, tx::CellIdentity(t.cell_id), txc);

    t.profile = channel::draw_profile(sub_seed(s, 12), cfg.ofdm.scs_hz, fs, cfg.delay, spec.snr_db);
    if (!cfg.apply_cfo) t.profile.cfo_hz = 0.0;
    if (!cfg.apply_delay) {
      t.profile.integer_delay_samples = 0;
      t.profile.fractional_delay_samples = 0.0;
    }
    channel::ChannelProfile clean_profile = t.profile;
    clean_profile.snr_db = channel::kNoNoise;
    const IqFrame clean = models::burst_frame(ssb, clean_profile, cfg);

    const long base = period * k;
    t.start = base + cfg.offset + t.profile.integer_delay_samples;
    std::copy(clean.samples.begin(), clean.samples.end(), frame.samples.begin() + base);
    if (std::isfinite(spec.snr_db)) {
      const double nv = channel::occupied_power(clean.samples) / std::pow(10.0, spec.snr_db / 10.0);
      std::mt19937_64 nrng(sub_seed(s, 3));
      std::normal_distribution<double> g(0.0, std::sqrt(nv / 2.0));
      for (long i = base; i < base + period; ++i) {
        const double re = g(nrng);
        const double im = g(nrng);
        frame.samples[static_cast<std::size_t>(i)] += cf64(re, im);
      }
    }
    out.truth.push_back(t);
  }
  if (spec.carrier_offset_hz != 0.0) {
    const double c = frame.center_freq_hz;
    frame = channel::apply_cfo(frame, spec.carrier_offset_hz);
    frame.center_freq_hz = c;
  }
  out.capture.meta = {fs, spec.center_freq_hz, frame.center_freq_hz, spec.gain_db, spec.timestamp};
  return out;
}

}  // namespace ntn::io
