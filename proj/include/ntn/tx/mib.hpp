#pragma once

#include <cstdint>

#include "ntn/types.hpp"

namespace ntn::tx {

// Enumerations hold the ASN.1 enumeration index, which is also the packed bit.
enum class ScsCommon : std::uint8_t { scs15or60 = 0, scs30or120 = 1 };
enum class DmrsTypeAPosition : std::uint8_t { pos2 = 0, pos3 = 1 };
enum class CellBarred : std::uint8_t { barred = 0, not_barred = 1 };
enum class IntraFreqReselection : std::uint8_t { allowed = 0, not_allowed = 1 };

/// MIB fields plus the PBCH-layer bits that complete the 32-bit payload.
struct MibPayload {
  int sfn = 0;                    // 0..1023
  ScsCommon scs_common = ScsCommon::scs15or60;
  int ssb_subcarrier_offset = 0;  // k_SSB, 0..31 (5 bits in FR1)
  DmrsTypeAPosition dmrs_type_a_pos = DmrsTypeAPosition::pos2;
  int pdcch_config_sib1 = 0;      // 0..255
  CellBarred cell_barred = CellBarred::barred;
  IntraFreqReselection intra_freq_reselection = IntraFreqReselection::allowed;
  bool spare = false;
  bool half_frame_bit = false;

  friend bool operator==(const MibPayload&, const MibPayload&) = default;
};

/// Payload bit positions (a-bar order, before payload interleaving).
///
///   bit  0      BCCH-BCH-Message choice (0 = mib)
///   bits 1..6   SFN bits 9..4
///   bit  7      subCarrierSpacingCommon
///   bits 8..11  k_SSB bits 3..0
///   bit  12     dmrs-TypeA-Position
///   bits 13..20 pdcch-ConfigSIB1 bits 7..0
///   bit  21     cellBarred
///   bit  22     intraFreqReselection
///   bit  23     spare
///   bits 24..27 SFN bits 3..0
///   bit  28     half-frame bit
///   bit  29     k_SSB bit 4
///   bits 30,31  reserved (0)
namespace payload_bit {
inline constexpr int kChoice = 0;
inline constexpr int kSfnMsb = 1;
inline constexpr int kScs = 7;
inline constexpr int kSsbOffsetLsb = 8;
inline constexpr int kDmrsPos = 12;
inline constexpr int kPdcch = 13;
inline constexpr int kCellBarred = 21;
inline constexpr int kIntraFreq = 22;
inline constexpr int kSpare = 23;
inline constexpr int kSfnLsb = 24;
inline constexpr int kHalfFrame = 28;
inline constexpr int kSsbOffsetMsb = 29;
inline constexpr int kReserved0 = 30;
inline constexpr int kReserved1 = 31;
}  // namespace payload_bit

/// Throws std::invalid_argument naming the first out-of-range field.
void validate(const MibPayload& mib);

Bits build_mib_payload(const MibPayload& mib);

/// Inverse of build_mib_payload. Reserved bits are ignored; a set choice bit
/// (messageClassExtension) is rejected.
MibPayload parse_mib_payload(std::span<const std::uint8_t> bits);

}  // namespace ntn::tx
