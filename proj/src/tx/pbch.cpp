#include "ntn/tx/pbch.hpp"

#include <array>
#include <stdexcept>
#include <string>

#include "ntn/tx/crc.hpp"
#include "ntn/tx/gold.hpp"
#include "ntn/tx/mib.hpp"
#include "ntn/tx/polar.hpp"

namespace ntn::tx {
namespace {

constexpr std::array<int, 32> kPayloadInterleaver = {16, 23, 18, 17, 8,  30, 10, 6,
                                                     24, 7,  0,  5,  3,  2,  1,  4,
                                                     9,  11, 12, 13, 14, 15, 19, 20,
                                                     21, 22, 25, 26, 27, 28, 29, 31};

bool is_sfn_bit(int i) {
  using namespace payload_bit;
  return (i >= kSfnMsb && i < kSfnMsb + 6) || (i >= kSfnLsb && i < kSfnLsb + 4);
}

// Destination index of every a-bar bit.
std::array<int, 32> interleaver_targets() {
  std::array<int, 32> target{};
  int j_sfn = 0;
  int j_other = 14;
  int j_ssb = 11;
  for (int i = 0; i < kPayloadBits; ++i) {
    if (is_sfn_bit(i)) {
      target[i] = kPayloadInterleaver[j_sfn++];
    } else if (i == payload_bit::kHalfFrame) {
      target[i] = kPayloadInterleaver[10];
    } else if (i >= payload_bit::kSsbOffsetMsb) {
      target[i] = kPayloadInterleaver[j_ssb++];
    } else {
      target[i] = kPayloadInterleaver[j_other++];
    }
  }
  return target;
}

void require_length(std::span<const std::uint8_t> bits, std::size_t n, const char* what) {
  if (bits.size() != n) {
    throw std::invalid_argument(std::string(what) + " expects " + std::to_string(n) +
                                " bits, got " + std::to_string(bits.size()));
  }
}

}  // namespace

PayloadLayout payload_layout(const PbchConfig& cfg) {
  PayloadLayout layout{};
  if (cfg.strict_standard) {
    const auto t = interleaver_targets();
    layout.sfn_3rd_lsb = t[payload_bit::kSfnLsb + 1];
    layout.sfn_2nd_lsb = t[payload_bit::kSfnLsb + 2];
    layout.half_frame = t[payload_bit::kHalfFrame];
    if (cfg.l_max == 64) {
      for (int i = payload_bit::kSsbOffsetMsb; i < kPayloadBits; ++i) {
        layout.ssb_index.push_back(t[i]);
      }
    }
  } else {
    layout.sfn_3rd_lsb = payload_bit::kSfnLsb + 1;
    layout.sfn_2nd_lsb = payload_bit::kSfnLsb + 2;
    layout.half_frame = payload_bit::kHalfFrame;
    if (cfg.l_max == 64) layout.ssb_index = {29, 30, 31};
  }
  return layout;
}

Bits interleave_payload(std::span<const std::uint8_t> bits32) {
  require_length(bits32, kPayloadBits, "interleave_payload");
  const auto target = interleaver_targets();
  Bits out(kPayloadBits);
  for (int i = 0; i < kPayloadBits; ++i) out[target[i]] = bits32[i];
  return out;
}

Bits deinterleave_payload(std::span<const std::uint8_t> bits32) {
  require_length(bits32, kPayloadBits, "deinterleave_payload");
  const auto target = interleaver_targets();
  Bits out(kPayloadBits);
  for (int i = 0; i < kPayloadBits; ++i) out[i] = bits32[target[i]];
  return out;
}

Bits scramble_payload(std::span<const std::uint8_t> bits32, CellIdentity cell,
                      const PbchConfig& cfg) {
  require_length(bits32, kPayloadBits, "scramble_payload");
  if (cfg.l_max != 4 && cfg.l_max != 8 && cfg.l_max != 64) {
    throw std::invalid_argument("l_max must be 4, 8 or 64");
  }
  const PayloadLayout layout = payload_layout(cfg);
  const int m = cfg.l_max == 64 ? kPayloadBits - 6 : kPayloadBits - 3;
  const int v = 2 * bits32[layout.sfn_3rd_lsb] + bits32[layout.sfn_2nd_lsb];
  const Bits c = gold_sequence(static_cast<std::uint32_t>(cell.id()), kPayloadBits,
                               static_cast<std::size_t>(v * m));
  auto exempt = [&](int i) {
    if (i == layout.sfn_3rd_lsb || i == layout.sfn_2nd_lsb || i == layout.half_frame) {
      return true;
    }
    for (const int s : layout.ssb_index) {
      if (s == i) return true;
    }
    return false;
  };
  Bits out(bits32.begin(), bits32.end());
  int j = 0;
  for (int i = 0; i < kPayloadBits; ++i) {
    if (!exempt(i)) out[i] ^= c[j++];
  }
  return out;
}

Bits scramble(std::span<const std::uint8_t> bits, CellIdentity cell, int v) {
  if (v < 0 || v > 7) throw std::invalid_argument("scrambling offset index out of range");
  const Bits c = gold_sequence(static_cast<std::uint32_t>(cell.id()), bits.size(),
                               static_cast<std::size_t>(v) * bits.size());
  Bits out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) out[i] = (bits[i] & 1U) ^ c[i];
  return out;
}

CVec qpsk_modulate(std::span<const std::uint8_t> bits) {
  if (bits.size() % 2 != 0) {
    throw std::invalid_argument("QPSK needs an even number of bits, got " +
                                std::to_string(bits.size()));
  }
  CVec out(bits.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = cf64((1.0 - 2.0 * (bits[2 * i] & 1U)) * kInvSqrt2,
                  (1.0 - 2.0 * (bits[2 * i + 1] & 1U)) * kInvSqrt2);
  }
  return out;
}

PbchTransmission encode_pbch(std::span<const std::uint8_t> payload32, CellIdentity cell,
                             int issb, const PbchConfig& cfg) {
  require_length(payload32, kPayloadBits, "encode_pbch");
  if (issb < 0 || issb >= cfg.l_max) {
    throw std::invalid_argument("SSB index out of range: " + std::to_string(issb));
  }
  PbchTransmission tx;
  tx.payload.assign(payload32.begin(), payload32.end());
  const Bits ordered = cfg.strict_standard ? interleave_payload(payload32) : tx.payload;
  tx.block = attach_crc24(scramble_payload(ordered, cell, cfg));
  tx.coded = pbch_encode(tx.block);
  const int v = cfg.l_max == 4 ? (issb & 0x3) : (issb & 0x7);
  tx.scrambled = scramble(tx.coded, cell, v);
  tx.symbols = qpsk_modulate(tx.scrambled);
  return tx;
}

}  // namespace ntn::tx
