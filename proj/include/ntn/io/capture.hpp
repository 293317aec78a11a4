#pragma once

#include "ntn/io/iq_file.hpp"
#include "ntn/models/burst.hpp"
#include "ntn/rx/sync.hpp"

namespace ntn::io {

inline constexpr double kSsbPeriodS = 0.02;

/// Removes the center/tuned offset so the SSB sits at DC.
IqFrame derotate_capture(const IqCapture& cap);

/// FFT size implied by the sample rate at the given SCS; throws unless it
/// is a power of two of at least 256.
tx::OfdmConfig ofdm_for_rate(double sample_rate_hz, double scs_hz = 15e3);

/// SSB start samples. The first SSB found fixes the phase; every later one
/// is searched within a quarter period of where the last one predicts.
std::vector<long> locate_bursts(const IqFrame& frame, const rx::SyncConfig& cfg,
                                double period_s = kSsbPeriodS);

/// [start - guard, start + ssb + guard), clipped to the frame.
IqFrame cut_burst(const IqFrame& frame, long start, const tx::OfdmConfig& ofdm, long guard);

/// derotate, locate and cut: one short frame per SSB in the capture.
std::vector<IqFrame> split_capture(const IqCapture& cap, const rx::SyncConfig& cfg,
                                   double period_s = kSsbPeriodS);

struct CaptureSpec {
  int count = 1;                        // bursts, one per SSB period
  double snr_db = channel::kNoNoise;
  int cell_min = 0, cell_max = kMaxCellId;
  int sfn_first = 0, sfn_last = 1023;   // SFN advances by 2 per burst, wrapping in range
  double center_freq_hz = 2029.25e6;
  double carrier_offset_hz = 0.0;       // center - tuned
  double gain_db = 0.0;
  std::string timestamp;
  double period_s = kSsbPeriodS;
  std::uint64_t seed = 0;
  models::BurstConfig burst;
};

struct BurstTruth {
  long start = 0;  // first SSB sample in the capture
  tx::MibPayload mib;
  int cell_id = 0;
  int issb = 0;
  channel::ChannelProfile profile;
};

struct SyntheticCapture {
  IqCapture capture;
  std::vector<BurstTruth> truth;
};

/// A recording as a receiver tuned carrier_offset_hz below the carrier
/// would store it. Each burst gets its own MIB, cell and channel draw;
/// noise fills the whole period at the burst's SNR.
SyntheticCapture synthesize_capture(const CaptureSpec& spec);

}  // namespace ntn::io
