#pragma once

#include "ntn/tx/ssb_grid.hpp"

namespace ntn::rx {

/// Channel over the 576 PBCH REs (432 data then 144 DMRS, the order of
/// tx::pbch_re_indices) plus the per-RE noise variance.
struct ChannelEstimate {
  CVec h = CVec(kPbchRes);
  double noise_var = 0.0;
};

enum class Stage { post_sync, post_mmse, post_nn };

struct EqualizedBlock {
  CVec symbols = CVec(kPbchDataRes);
  Stage stage = Stage::post_mmse;
};

/// LS at the DMRS, linear interpolation in frequency within each symbol
/// (nearest pilot at the edges), noise from the pilot second differences.
ChannelEstimate estimate_channel(const tx::SsbGrid& grid, std::span<const cf64> dmrs144);

/// x = conj(h) y / (|h|^2 + noise_var), denominator floored at 1e-12.
EqualizedBlock mmse_equalize(const tx::SsbGrid& grid, const ChannelEstimate& est);

/// The 432 data REs as received, before any equalization.
EqualizedBlock post_sync_symbols(const tx::SsbGrid& grid);

/// Sign decisions, two bits per symbol.
Bits qpsk_demod_hard(std::span<const cf64> symbols);

/// Max-log LLRs (positive favours 0) of symbols with AWGN variance noise_var.
std::vector<double> qpsk_llrs(std::span<const cf64> symbols, double noise_var);

/// LLRs of MMSE outputs, using the per-RE post-equalization SINR.
std::vector<double> mmse_llrs(const EqualizedBlock& block, const ChannelEstimate& est);

/// Nominal noise variance used to scale LLRs of network outputs.
inline constexpr double kNominalNoiseVar = 0.1;

double compute_ber(std::span<const std::uint8_t> tx_bits, std::span<const std::uint8_t> rx_bits);

/// Mean |a - b|^2.
double symbol_mse(std::span<const cf64> a, std::span<const cf64> b);

}  // namespace ntn::rx
