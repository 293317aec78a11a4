#include "ntn/tx/ssb_tx.hpp"

#include "ntn/tx/sequences.hpp"

namespace ntn::tx {

SsbTransmission generate_ssb(const MibPayload& mib, CellIdentity cell, const SsbTxConfig& cfg) {
  SsbTransmission out;
  out.cell = cell;
  out.mib = mib;
  out.pbch = encode_pbch(build_mib_payload(mib), cell, cfg.issb, cfg.pbch);
  out.dmrs = gen_dmrs(cell, cfg.issb, mib.half_frame_bit, cfg.pbch.l_max);
  out.grid = map_ssb_grid(out.pbch.symbols, out.dmrs, gen_pss(cell.n_id_2()), gen_sss(cell),
                          cell, cfg.issb);
  out.waveform = ofdm_modulate(out.grid, cfg.ofdm);
  return out;
}

}  // namespace ntn::tx
