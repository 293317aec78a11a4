#pragma once

#include <cstdint>

#include "ntn/types.hpp"

namespace ntn::tx {

/// gCRC24C(D) = D^24+D^23+D^21+D^20+D^17+D^15+D^13+D^12+D^8+D^4+D^2+D+1.
inline constexpr std::uint32_t kCrc24cPoly = 0xB2B117;

/// 24 parity bits over `bits`, MSB first, zero initial register.
Bits crc24c(std::span<const std::uint8_t> bits);

/// Appends CRC24C parity to a 32-bit payload.
Bits attach_crc24(std::span<const std::uint8_t> payload);

/// True when the trailing 24 bits are the CRC24C of the leading ones.
bool crc24_check(std::span<const std::uint8_t> block);

}  // namespace ntn::tx
