#pragma once

#include <functional>

#include "ntn/types.hpp"

namespace ntn::tx {

/// Downlink polar code with input bit interleaving, sub-block interleaving
/// and bit selection (no channel interleaver). The PBCH instance is
/// K = 56, E = 864, which selects a mother code of N = 512.
class PolarCode {
 public:
  PolarCode(int k, int e, int n_max = 9);

  int k() const { return k_; }
  int e() const { return e_; }
  int n() const { return n_; }

  /// Encodes K bits to E rate-matched bits.
  Bits encode(std::span<const std::uint8_t> bits) const;

  /// Successive-cancellation list decoding of E channel LLRs (positive
  /// favours bit 0). list_size 1 is plain SC. When `accept` is given, the
  /// most likely surviving path it accepts wins (CRC-aided selection).
  Bits decode(std::span<const double> llrs, int list_size = 1,
              const std::function<bool(const Bits&)>& accept = {}) const;

  /// Sorted indices of the K information positions in the mother code.
  const std::vector<int>& info_positions() const { return info_positions_; }
  const std::vector<std::uint8_t>& frozen_mask() const { return frozen_; }

 private:
  Bits interleave_input(std::span<const std::uint8_t> c) const;
  Bits deinterleave_input(std::span<const std::uint8_t> c) const;

  int k_;
  int e_;
  int n_;
  std::vector<int> input_perm_;       // c'_k = c_{input_perm_[k]}
  std::vector<int> subblock_perm_;    // y_n = d_{subblock_perm_[n]}
  std::vector<int> info_positions_;
  std::vector<std::uint8_t> frozen_;  // 1 = frozen
};

/// The PBCH instance, built once.
const PolarCode& pbch_polar_code();

/// Polar-encodes and rate-matches 56 bits (payload + CRC) to 864 bits.
Bits pbch_encode(std::span<const std::uint8_t> bits56);

/// Inverse of pbch_encode from LLRs; returns the 56 decoded bits.
Bits pbch_decode(std::span<const double> llrs864, int list_size = 1,
                 const std::function<bool(const Bits&)>& accept = {});

/// Hard-input convenience wrapper (bits mapped to +-1 LLRs).
Bits pbch_decode_bits(std::span<const std::uint8_t> bits864);

/// The 1024-entry reliability sequence, ascending reliability.
std::span<const int> polar_reliability_sequence();

}  // namespace ntn::tx
