#include "ntn/rx/pbch_rx.hpp"

#include <algorithm>
#include <stdexcept>

#include "ntn/tx/crc.hpp"
#include "ntn/tx/polar.hpp"
#include "ntn/tx/sequences.hpp"

namespace ntn::rx {

DmrsHypothesis detect_dmrs(const tx::SsbGrid& grid, tx::CellIdentity cell, int l_max) {
  if (l_max != 4) throw std::invalid_argument("DMRS detection implemented for l_max 4 only");
  const auto idx = tx::pbch_dmrs_indices(cell);
  DmrsHypothesis best;
  best.metric = -1.0;
  for (int hf = 0; hf < 2; ++hf) {
    for (int issb = 0; issb < 4; ++issb) {
      const CVec ref = tx::gen_dmrs(cell, issb, hf != 0, l_max);
      cf64 acc{};
      for (std::size_t p = 0; p + 1 < idx.size(); ++p) {
        // Neighbours in the same symbol, four subcarriers apart.
        if (idx[p + 1] - idx[p] != 4) continue;
        const cf64 z0 = grid.res[idx[p]] * std::conj(ref[p]);
        const cf64 z1 = grid.res[idx[p + 1]] * std::conj(ref[p + 1]);
        acc += std::conj(z0) * z1;
      }
      const double m = std::abs(acc);
      if (m > best.metric) best = {issb, hf != 0, m};
    }
  }
  return best;
}

PbchDecodeResult decode_pbch(std::span<const double> llrs864, tx::CellIdentity cell, int issb,
                             const tx::PbchConfig& cfg) {
  if (llrs864.size() != kPbchCodedBits) {
    throw std::invalid_argument("decode_pbch expects 864 LLRs, got " +
                                std::to_string(llrs864.size()));
  }
  const int v = cfg.l_max == 4 ? (issb & 0x3) : (issb & 0x7);
  const Bits c = tx::scramble(Bits(kPbchCodedBits, 0), cell, v);
  std::vector<double> llr(llrs864.begin(), llrs864.end());
  for (int i = 0; i < kPbchCodedBits; ++i) {
    if (c[i]) llr[i] = -llr[i];
  }

  PbchDecodeResult r;
  // All-zero LLRs carry nothing, yet would decode to the all-zero block,
  // which satisfies a zero-initialised CRC.
  if (std::all_of(llr.begin(), llr.end(), [](double x) { return x == 0.0; })) return r;
  r.block = tx::pbch_decode(llr, cfg.list_size,
                            [](const Bits& b) { return tx::crc24_check(b); });
  r.crc_pass = tx::crc24_check(r.block);
  if (!r.crc_pass) return r;

  const Bits scrambled(r.block.begin(), r.block.begin() + kPayloadBits);
  const Bits ordered = tx::scramble_payload(scrambled, cell, cfg);
  r.payload = cfg.strict_standard ? tx::deinterleave_payload(ordered) : ordered;
  try {
    r.mib = tx::parse_mib_payload(r.payload);
  } catch (const std::invalid_argument&) {
    r.mib.reset();
  }
  return r;
}

PbchDecodeResult decode_symbols(std::span<const cf64> symbols432, tx::CellIdentity cell, int issb,
                                const tx::PbchConfig& cfg, double noise_var) {
  if (symbols432.size() != kPbchDataRes) {
    throw std::invalid_argument("decode_symbols expects 432 symbols, got " +
                                std::to_string(symbols432.size()));
  }
  return decode_pbch(qpsk_llrs(symbols432, noise_var), cell, issb, cfg);
}

ReceivedBurst receive_burst(const IqFrame& frame, const RxConfig& cfg) {
  ReceivedBurst b;
  b.sync = synchronize(frame, cfg.sync);
  b.cell = b.sync.cell();
  b.grid = extract_ssb(frame, b.sync, 0, cfg.sync.ofdm);
  b.dmrs_hypothesis = detect_dmrs(b.grid, b.cell, cfg.pbch.l_max);
  b.grid.issb = b.dmrs_hypothesis.issb;
  b.dmrs = tx::gen_dmrs(b.cell, b.dmrs_hypothesis.issb, b.dmrs_hypothesis.half_frame,
                        cfg.pbch.l_max);
  b.estimate = estimate_channel(b.grid, b.dmrs);
  b.post_sync = post_sync_symbols(b.grid);
  b.post_mmse = mmse_equalize(b.grid, b.estimate);
  b.llrs = mmse_llrs(b.post_mmse, b.estimate);
  b.decode = decode_pbch(b.llrs, b.cell, b.dmrs_hypothesis.issb, cfg.pbch);
  return b;
}

}  // namespace ntn::rx
