#include "ntn/tx/ofdm.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "ntn/fft.hpp"

namespace ntn::tx {

void OfdmConfig::validate() const {
  if (fft_size < kSsbSubcarriers + 16 || fft_size % 128 != 0) {
    throw std::invalid_argument("FFT size " + std::to_string(fft_size) +
                                " too small or not a multiple of 128");
  }
  if (scs_hz != 15e3) throw std::invalid_argument("only 15 kHz SCS (Case A) is supported");
}

int OfdmConfig::cp_length(int symbol) const {
  const int base = (symbol % 7 == 0) ? 160 : 144;
  return base * fft_size / 2048;
}

int ssb_first_symbol(int issb) {
  if (issb < 0 || issb > 3) throw std::invalid_argument("Case A issb must be in 0..3");
  static constexpr int kFirst[4] = {2, 8, 16, 22};
  return kFirst[issb];
}

int ssb_symbol_offset(const OfdmConfig& cfg, int issb, int l) {
  const int first = ssb_first_symbol(issb);
  int off = 0;
  for (int s = 0; s < l; ++s) off += cfg.fft_size + cfg.cp_length(first + s);
  return off;
}

int ssb_length(const OfdmConfig& cfg, int issb) { return ssb_symbol_offset(cfg, issb, kSsbSymbols); }

int ssb_bin(const OfdmConfig& cfg, int k) {
  const int rel = k - kSsbSubcarriers / 2;
  return rel >= 0 ? rel : cfg.fft_size + rel;
}

IqFrame ofdm_modulate(const SsbGrid& grid, const OfdmConfig& cfg) {
  cfg.validate();
  const int first = ssb_first_symbol(grid.issb);
  IqFrame frame;
  frame.sample_rate_hz = cfg.sample_rate_hz();
  frame.samples.reserve(static_cast<std::size_t>(ssb_length(cfg, grid.issb)));
  for (int l = 0; l < kSsbSymbols; ++l) {
    CVec bins(static_cast<std::size_t>(cfg.fft_size));
    for (int k = 0; k < kSsbSubcarriers; ++k) bins[ssb_bin(cfg, k)] = grid.at(k, l);
    fft_inplace(bins, true);
    const int cp = cfg.cp_length(first + l);
    frame.samples.insert(frame.samples.end(), bins.end() - cp, bins.end());
    frame.samples.insert(frame.samples.end(), bins.begin(), bins.end());
  }
  return frame;
}

CVec demodulate_symbol(std::span<const cf64> samples, long start, const OfdmConfig& cfg) {
  if (start < 0 || start + cfg.fft_size > static_cast<long>(samples.size())) {
    throw std::out_of_range("OFDM symbol at " + std::to_string(start) + " exceeds frame");
  }
  CVec bins(samples.begin() + start, samples.begin() + start + cfg.fft_size);
  fft_inplace(bins, false);
  return bins;
}

SsbGrid ofdm_demodulate(const IqFrame& frame, long start, CellIdentity cell, int issb,
                        const OfdmConfig& cfg) {
  cfg.validate();
  const int first = ssb_first_symbol(issb);
  if (start < 0 || start + ssb_length(cfg, issb) > static_cast<long>(frame.size())) {
    throw std::out_of_range("SSB at sample " + std::to_string(start) + " exceeds frame of " +
                            std::to_string(frame.size()) + " samples");
  }
  SsbGrid grid = make_grid(cell, issb);
  for (int l = 0; l < kSsbSymbols; ++l) {
    const long sym = start + ssb_symbol_offset(cfg, issb, l) + cfg.cp_length(first + l);
    const CVec bins = demodulate_symbol(frame.samples, sym, cfg);
    for (int k = 0; k < kSsbSubcarriers; ++k) grid.at(k, l) = bins[ssb_bin(cfg, k)];
  }
  return grid;
}

IqFrame frame_ssb_burst(const IqFrame& ssb, long offset, long total_length) {
  if (offset < 0 || offset + static_cast<long>(ssb.size()) > total_length) {
    throw std::invalid_argument("SSB does not fit in the burst frame");
  }
  IqFrame out = ssb;
  out.samples.assign(static_cast<std::size_t>(total_length), cf64{});
  std::copy(ssb.samples.begin(), ssb.samples.end(), out.samples.begin() + offset);
  return out;
}

}  // namespace ntn::tx
