#include "ntn/tx/gold.hpp"

namespace ntn::tx {

Bits gold_sequence(std::uint32_t c_init, std::size_t length, std::size_t offset) {
  constexpr std::size_t kNc = 1600;
  const std::size_t total = kNc + offset + length;
  std::vector<std::uint8_t> x1(total + 31, 0);
  std::vector<std::uint8_t> x2(total + 31, 0);
  x1[0] = 1;
  for (int i = 0; i < 31; ++i) x2[i] = static_cast<std::uint8_t>((c_init >> i) & 1U);
  for (std::size_t n = 0; n < total; ++n) {
    x1[n + 31] = x1[n + 3] ^ x1[n];
    x2[n + 31] = x2[n + 3] ^ x2[n + 2] ^ x2[n + 1] ^ x2[n];
  }
  Bits c(length);
  for (std::size_t n = 0; n < length; ++n) {
    const std::size_t m = n + offset + kNc;
    c[n] = x1[m] ^ x2[m];
  }
  return c;
}

}  // namespace ntn::tx
