#pragma once

#include <optional>
#include <random>
#include <string>

#include "ntn/channel/ntn_channel.hpp"
#include "ntn/rx/pbch_rx.hpp"
#include "ntn/tx/ssb_tx.hpp"

namespace ntn::models {

struct BurstConfig {
  tx::OfdmConfig ofdm;
  tx::PbchConfig pbch;
  rx::SyncConfig sync;
  channel::DelayRange delay;
  bool apply_cfo = true;
  bool apply_delay = true;
  bool random_issb = false;  // otherwise SSB index 0
  long offset = 0;           // samples of silence before the SSB

  /// offset + SSB + largest delay + one symbol of tail.
  long frame_length() const;
};

/// Uniformly random MIB (every field) and cell.
tx::MibPayload random_mib(std::mt19937_64& rng);

/// One synthetic burst through the transmitter, channel and receiver.
struct SimulatedBurst {
  std::uint64_t seed = 0;
  double snr_db = 0.0;
  tx::SsbTransmission tx;
  channel::ChannelProfile profile;
  std::optional<rx::ReceivedBurst> rx;  // empty when sync failed
  std::string failure;                  // why rx is empty or wrong

  /// Sync succeeded and found the transmitted cell.
  bool synced() const { return rx.has_value() && rx->cell == tx.cell; }
};

SimulatedBurst simulate_burst(std::uint64_t seed, double snr_db, const BurstConfig& cfg = {});

/// The channel output frame of simulate_burst, without running the receiver.
IqFrame burst_frame(const tx::SsbTransmission& t, const channel::ChannelProfile& profile,
                    const BurstConfig& cfg);

}  // namespace ntn::models
