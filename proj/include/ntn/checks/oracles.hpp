#pragma once

#include <cstdint>
#include <string>

namespace ntn::checks {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// 1000 random payloads over 100 random cells, noiseless encode/decode.
CheckResult codec_round_trip(std::uint64_t seed);

/// Hard-decision QPSK BER through the AWGN channel against Q(sqrt(Es/N0))
/// at 0, 5 and 10 dB, 1.2e6 bits each, +-15 % relative.
CheckResult ber_oracle(std::uint64_t seed);

/// 100 bursts at 0 dB with random CFO and delay: timing within 2 samples
/// with the right N_ID^(2), and |CFO error| < 7.5 kHz, each in >= 95.
CheckResult sync_robustness(std::uint64_t seed);

/// 500 bursts at 20 dB: CRC pass with the transmitted MIB in >= 99 %.
CheckResult decoder_margin(std::uint64_t seed);

/// Backprop against central differences on 20 random architectures.
CheckResult gradient_check(std::uint64_t seed);

/// 1000 bursts over the default SNR grid, a third of them also decoded
/// from corrupted LLRs: CRC-passing labels equal the transmitted symbols
/// exactly; CRC failures yield no labels.
CheckResult regeneration_integrity(std::uint64_t seed);

}  // namespace ntn::checks
