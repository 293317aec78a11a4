#include "ntn/tx/crc.hpp"

#include <stdexcept>
#include <string>

namespace ntn::tx {

Bits crc24c(std::span<const std::uint8_t> bits) {
  std::uint32_t reg = 0;
  for (const auto b : bits) {
    const std::uint32_t feedback = ((reg >> 23) & 1U) ^ (b & 1U);
    reg = (reg << 1) & 0xFFFFFFU;
    if (feedback) reg ^= kCrc24cPoly;
  }
  Bits parity(kCrcBits);
  for (int i = 0; i < kCrcBits; ++i) {
    parity[i] = static_cast<std::uint8_t>((reg >> (kCrcBits - 1 - i)) & 1U);
  }
  return parity;
}

Bits attach_crc24(std::span<const std::uint8_t> payload) {
  if (payload.size() != kPayloadBits) {
    throw std::invalid_argument("attach_crc24 expects 32 payload bits, got " +
                                std::to_string(payload.size()));
  }
  Bits out(payload.begin(), payload.end());
  const Bits parity = crc24c(payload);
  out.insert(out.end(), parity.begin(), parity.end());
  return out;
}

bool crc24_check(std::span<const std::uint8_t> block) {
  if (block.size() < static_cast<std::size_t>(kCrcBits)) return false;
  const auto data = block.first(block.size() - kCrcBits);
  const Bits parity = crc24c(data);
  for (int i = 0; i < kCrcBits; ++i) {
    if ((block[data.size() + i] & 1U) != parity[i]) return false;
  }
  return true;
}

}  // namespace ntn::tx
