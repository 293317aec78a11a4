#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace ntn {

using cf64 = std::complex<double>;
using CVec = std::vector<cf64>;

/// One bit per byte, values 0 or 1.
using Bits = std::vector<std::uint8_t>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInvSqrt2 = 0.70710678118654752440;

/// SSB geometry shared by the transmitter, receiver and models.
inline constexpr int kSsbSubcarriers = 240;
inline constexpr int kSsbSymbols = 4;
inline constexpr int kSsbRes = kSsbSubcarriers * kSsbSymbols;
inline constexpr int kPbchDataRes = 432;
inline constexpr int kPbchDmrsRes = 144;
inline constexpr int kPbchRes = kPbchDataRes + kPbchDmrsRes;
inline constexpr int kPbchCodedBits = 2 * kPbchDataRes;
inline constexpr int kPayloadBits = 32;
inline constexpr int kCrcBits = 24;
inline constexpr int kSyncSeqLen = 127;
inline constexpr int kMaxCellId = 1007;

/// splitmix64 finaliser; used to derive independent per-example seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t stream,
                                 std::uint64_t index = 0) {
  return mix_seed(mix_seed(mix_seed(seed) ^ stream) + index);
}

}  // namespace ntn
