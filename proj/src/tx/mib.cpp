#include "ntn/tx/mib.hpp"

#include <stdexcept>
#include <string>

namespace ntn::tx {
namespace {

void check_range(const char* field, int value, int lo, int hi) {
  if (value < lo || value > hi) {
    throw std::invalid_argument(std::string("MIB field ") + field + " out of range: " +
                                std::to_string(value));
  }
}

void put_msb_first(Bits& out, int pos, unsigned value, int width) {
  for (int i = 0; i < width; ++i) {
    out[pos + i] = static_cast<std::uint8_t>((value >> (width - 1 - i)) & 1U);
  }
}

unsigned get_msb_first(std::span<const std::uint8_t> in, int pos, int width) {
  unsigned v = 0;
  for (int i = 0; i < width; ++i) v = (v << 1) | (in[pos + i] & 1U);
  return v;
}

}  // namespace

void validate(const MibPayload& mib) {
  check_range("sfn", mib.sfn, 0, 1023);
  check_range("scs_common", static_cast<int>(mib.scs_common), 0, 1);
  check_range("ssb_subcarrier_offset", mib.ssb_subcarrier_offset, 0, 31);
  check_range("dmrs_type_a_pos", static_cast<int>(mib.dmrs_type_a_pos), 0, 1);
  check_range("pdcch_config_sib1", mib.pdcch_config_sib1, 0, 255);
  check_range("cell_barred", static_cast<int>(mib.cell_barred), 0, 1);
  check_range("intra_freq_reselection", static_cast<int>(mib.intra_freq_reselection), 0, 1);
}

Bits build_mib_payload(const MibPayload& mib) {
  using namespace payload_bit;
  validate(mib);
  Bits bits(kPayloadBits, 0);
  const auto sfn = static_cast<unsigned>(mib.sfn);
  const auto kssb = static_cast<unsigned>(mib.ssb_subcarrier_offset);
  bits[kChoice] = 0;
  put_msb_first(bits, kSfnMsb, sfn >> 4, 6);
  bits[kScs] = static_cast<std::uint8_t>(mib.scs_common);
  put_msb_first(bits, kSsbOffsetLsb, kssb & 0xFU, 4);
  bits[kDmrsPos] = static_cast<std::uint8_t>(mib.dmrs_type_a_pos);
  put_msb_first(bits, kPdcch, static_cast<unsigned>(mib.pdcch_config_sib1), 8);
  bits[kCellBarred] = static_cast<std::uint8_t>(mib.cell_barred);
  bits[kIntraFreq] = static_cast<std::uint8_t>(mib.intra_freq_reselection);
  bits[kSpare] = mib.spare ? 1 : 0;
  put_msb_first(bits, kSfnLsb, sfn & 0xFU, 4);
  bits[kHalfFrame] = mib.half_frame_bit ? 1 : 0;
  bits[kSsbOffsetMsb] = static_cast<std::uint8_t>((kssb >> 4) & 1U);
  return bits;
}

MibPayload parse_mib_payload(std::span<const std::uint8_t> bits) {
  using namespace payload_bit;
  if (bits.size() != kPayloadBits) {
    throw std::invalid_argument("MIB payload must be 32 bits, got " +
                                std::to_string(bits.size()));
  }
  if (bits[kChoice] != 0) {
    throw std::invalid_argument("payload carries messageClassExtension, not a MIB");
  }
  MibPayload mib;
  mib.sfn = static_cast<int>((get_msb_first(bits, kSfnMsb, 6) << 4) |
                             get_msb_first(bits, kSfnLsb, 4));
  mib.scs_common = static_cast<ScsCommon>(bits[kScs] & 1U);
  mib.ssb_subcarrier_offset = static_cast<int>(((bits[kSsbOffsetMsb] & 1U) << 4) |
                                               get_msb_first(bits, kSsbOffsetLsb, 4));
  mib.dmrs_type_a_pos = static_cast<DmrsTypeAPosition>(bits[kDmrsPos] & 1U);
  mib.pdcch_config_sib1 = static_cast<int>(get_msb_first(bits, kPdcch, 8));
  mib.cell_barred = static_cast<CellBarred>(bits[kCellBarred] & 1U);
  mib.intra_freq_reselection = static_cast<IntraFreqReselection>(bits[kIntraFreq] & 1U);
  mib.spare = bits[kSpare] != 0;
  mib.half_frame_bit = bits[kHalfFrame] != 0;
  return mib;
}

}  // namespace ntn::tx
