#include "ntn/models/burst.hpp"

#include <cmath>

namespace ntn::models {

namespace {
constexpr std::uint64_t kTxStream = 11;
constexpr std::uint64_t kChannelStream = 12;
}  // namespace

long BurstConfig::frame_length() const {
  const long max_delay = static_cast<long>(std::ceil(delay.max_s * ofdm.sample_rate_hz())) + 1;
  return offset + tx::ssb_length(ofdm) + max_delay + ofdm.fft_size;
}

tx::MibPayload random_mib(std::mt19937_64& rng) {
  auto u = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  tx::MibPayload m;
  m.sfn = u(0, 1023);
  m.scs_common = static_cast<tx::ScsCommon>(u(0, 1));
  m.ssb_subcarrier_offset = u(0, 31);
  m.dmrs_type_a_pos = static_cast<tx::DmrsTypeAPosition>(u(0, 1));
  m.pdcch_config_sib1 = u(0, 255);
  m.cell_barred = static_cast<tx::CellBarred>(u(0, 1));
  m.intra_freq_reselection = static_cast<tx::IntraFreqReselection>(u(0, 1));
  m.spare = u(0, 1) != 0;
  m.half_frame_bit = u(0, 1) != 0;
  return m;
}

IqFrame burst_frame(const tx::SsbTransmission& t, const channel::ChannelProfile& profile,
                    const BurstConfig& cfg) {
  const IqFrame clean = tx::frame_ssb_burst(t.waveform, cfg.offset, cfg.frame_length());
  return channel::simulate(clean, profile);
}

SimulatedBurst simulate_burst(std::uint64_t seed, double snr_db, const BurstConfig& cfg) {
  SimulatedBurst b;
  b.seed = seed;
  b.snr_db = snr_db;

  std::mt19937_64 rng(sub_seed(seed, kTxStream));
  const tx::MibPayload mib = random_mib(rng);
  const tx::CellIdentity cell(std::uniform_int_distribution<int>(0, kMaxCellId)(rng));
  tx::SsbTxConfig txc;
  txc.ofdm = cfg.ofdm;
  txc.pbch = cfg.pbch;
  txc.issb = cfg.random_issb ? std::uniform_int_distribution<int>(0, 3)(rng) : 0;
  b.tx = tx::generate_ssb(mib, cell, txc);

  b.profile = channel::draw_profile(sub_seed(seed, kChannelStream), cfg.ofdm.scs_hz,
                                    cfg.ofdm.sample_rate_hz(), cfg.delay, snr_db);
  if (!cfg.apply_cfo) b.profile.cfo_hz = 0.0;
  if (!cfg.apply_delay) {
    b.profile.integer_delay_samples = 0;
    b.profile.fractional_delay_samples = 0.0;
  }
  const IqFrame frame = burst_frame(b.tx, b.profile, cfg);

  rx::RxConfig rxc;
  rxc.sync = cfg.sync;
  rxc.sync.ofdm = cfg.ofdm;
  rxc.pbch = cfg.pbch;
  try {
    b.rx = rx::receive_burst(frame, rxc);
    if (b.rx->cell != b.tx.cell) {
      b.failure = "detected cell " + std::to_string(b.rx->cell.id()) + " instead of " +
                  std::to_string(b.tx.cell.id());
    }
  } catch (const rx::SyncError& e) {
    b.failure = e.what();
  }
  return b;
}

}  // namespace ntn::models
