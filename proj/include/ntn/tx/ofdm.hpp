#pragma once

#include "ntn/iq_frame.hpp"
#include "ntn/tx/ssb_grid.hpp"

namespace ntn::tx {

/// OFDM numerology for the SSB. Normal cyclic prefix: 160 or 144 samples
/// per 2048-point symbol, scaled to fft_size.
struct OfdmConfig {
  int fft_size = 256;
  double scs_hz = 15e3;

  double sample_rate_hz() const { return fft_size * scs_hz; }
  void validate() const;

  /// CP length of OFDM symbol `symbol` (counted from the subframe start).
  int cp_length(int symbol) const;
};

/// First OFDM symbol of SSB candidate `issb` in a half frame (Case A).
int ssb_first_symbol(int issb);

/// Samples spanned by the four SSB symbols, CPs included.
int ssb_length(const OfdmConfig& cfg, int issb = 0);

/// Sample offset of SSB symbol l (0..3) from the SSB start.
int ssb_symbol_offset(const OfdmConfig& cfg, int issb, int l);

/// FFT bin carrying SSB subcarrier k; the SSB is centred on DC.
int ssb_bin(const OfdmConfig& cfg, int k);

/// Time-domain waveform of the four SSB symbols (unitary IFFT + CP).
IqFrame ofdm_modulate(const SsbGrid& grid, const OfdmConfig& cfg = {});

/// Demodulates four SSB symbols starting at `start` (first CP sample).
/// Throws std::out_of_range when the SSB does not fit in the frame.
SsbGrid ofdm_demodulate(const IqFrame& frame, long start, CellIdentity cell, int issb = 0,
                        const OfdmConfig& cfg = {});

/// One OFDM symbol (no CP) of FFT output, all bins, in natural FFT order.
CVec demodulate_symbol(std::span<const cf64> samples, long start, const OfdmConfig& cfg);

/// Places `ssb` at `offset` in a zero frame of `total_length` samples.
IqFrame frame_ssb_burst(const IqFrame& ssb, long offset, long total_length);

}  // namespace ntn::tx
