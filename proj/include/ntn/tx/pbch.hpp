#pragma once

#include "ntn/tx/cell.hpp"
#include "ntn/types.hpp"

namespace ntn::tx {

struct PbchConfig {
  int l_max = 4;                 // 4, 8 or 64 candidate SSBs per half frame
  bool strict_standard = true;   // false skips payload interleaving
  int list_size = 1;             // polar list decoder width, 1 = SC
};

/// Positions (in the transmitted payload order) of the bits the first
/// scrambler leaves untouched and the receiver reads before descrambling.
struct PayloadLayout {
  int sfn_3rd_lsb;
  int sfn_2nd_lsb;
  int half_frame;
  std::vector<int> ssb_index;  // only populated when l_max == 64
};
PayloadLayout payload_layout(const PbchConfig& cfg);

Bits interleave_payload(std::span<const std::uint8_t> bits32);
Bits deinterleave_payload(std::span<const std::uint8_t> bits32);

/// First scrambling of the (interleaved) payload; an involution.
Bits scramble_payload(std::span<const std::uint8_t> bits32, CellIdentity cell,
                      const PbchConfig& cfg = {});

/// Codeword scrambling: XOR with c(n + v * len) seeded by n_cell_id.
/// In the PBCH chain v carries the two LSBs of the SSB index (l_max 4).
Bits scramble(std::span<const std::uint8_t> bits, CellIdentity cell, int v);

/// ((1 - 2 b0) + j (1 - 2 b1)) / sqrt(2) per bit pair.
CVec qpsk_modulate(std::span<const std::uint8_t> bits);

/// Intermediate products of the PBCH transmitter.
struct PbchTransmission {
  Bits payload;    // 32 bits as packed from the MIB
  Bits block;      // 56 bits: scrambled payload + CRC24C
  Bits coded;      // 864 bits after polar coding and rate matching
  Bits scrambled;  // 864 bits on air
  CVec symbols;    // 432 QPSK symbols
};

PbchTransmission encode_pbch(std::span<const std::uint8_t> payload32, CellIdentity cell,
                             int issb, const PbchConfig& cfg = {});

}  // namespace ntn::tx
