#pragma once

#include "ntn/tx/mib.hpp"
#include "ntn/tx/ofdm.hpp"
#include "ntn/tx/pbch.hpp"

namespace ntn::tx {

struct SsbTxConfig {
  OfdmConfig ofdm;
  PbchConfig pbch;
  int issb = 0;
};

/// Everything produced when one SSB is transmitted.
struct SsbTransmission {
  CellIdentity cell;
  MibPayload mib;
  PbchTransmission pbch;
  CVec dmrs;
  SsbGrid grid;
  IqFrame waveform;  // the four SSB symbols only
};

/// MIB -> payload -> PBCH chain -> grid -> OFDM. The DMRS half-frame index
/// follows mib.half_frame_bit.
SsbTransmission generate_ssb(const MibPayload& mib, CellIdentity cell,
                             const SsbTxConfig& cfg = {});

}  // namespace ntn::tx
