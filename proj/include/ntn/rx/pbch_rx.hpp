#pragma once

#include <optional>

#include "ntn/rx/equalizer.hpp"
#include "ntn/rx/sync.hpp"
#include "ntn/tx/mib.hpp"
#include "ntn/tx/pbch.hpp"

namespace ntn::rx {

struct DmrsHypothesis {
  int issb = 0;
  bool half_frame = false;
  double metric = 0.0;
};

/// Picks the (issb, half frame) DMRS sequence with the strongest
/// differential correlation between neighbouring pilots.
DmrsHypothesis detect_dmrs(const tx::SsbGrid& grid, tx::CellIdentity cell, int l_max = 4);

struct PbchDecodeResult {
  bool crc_pass = false;
  Bits block;    // 56 decoded bits (scrambled payload + CRC)
  Bits payload;  // 32 bits in MIB order; meaningful when crc_pass
  std::optional<tx::MibPayload> mib;
};

/// Codeword descrambling, polar decoding, CRC check, payload descrambling
/// and deinterleaving. Failures end up as crc_pass = false.
PbchDecodeResult decode_pbch(std::span<const double> llrs864, tx::CellIdentity cell, int issb,
                             const tx::PbchConfig& cfg = {});

/// Decodes 432 equalized symbols (e.g. network outputs) at a fixed noise variance.
PbchDecodeResult decode_symbols(std::span<const cf64> symbols432, tx::CellIdentity cell, int issb,
                                const tx::PbchConfig& cfg = {},
                                double noise_var = kNominalNoiseVar);

struct RxConfig {
  SyncConfig sync;
  tx::PbchConfig pbch;
};

/// Every intermediate product of the classical receiver for one burst.
struct ReceivedBurst {
  SyncResult sync;
  tx::CellIdentity cell;
  DmrsHypothesis dmrs_hypothesis;
  tx::SsbGrid grid;
  CVec dmrs;
  ChannelEstimate estimate;
  EqualizedBlock post_sync;
  EqualizedBlock post_mmse;
  std::vector<double> llrs;
  PbchDecodeResult decode;
};

/// Sync, SSB extraction, DMRS detection, estimation, MMSE and decoding.
/// Throws SyncError when the SSB cannot be found.
ReceivedBurst receive_burst(const IqFrame& frame, const RxConfig& cfg = {});

}  // namespace ntn::rx
