#include "ntn/models/regenerate.hpp"

#include <cmath>

#include "ntn/models/realify.hpp"

namespace ntn::models {

std::optional<CVec> regenerate_labels(const rx::PbchDecodeResult& decode, tx::CellIdentity cell,
                                      int issb, const tx::PbchConfig& cfg) {
  if (!decode.crc_pass || !decode.mib || decode.payload.size() != kPayloadBits) return std::nullopt;
  return tx::encode_pbch(decode.payload, cell, issb, cfg).symbols;
}

LabelOutcome label_received_frame(const IqFrame& frame, const rx::RxConfig& cfg) {
  LabelOutcome out;
  try {
    out.rx = rx::receive_burst(frame, cfg);
  } catch (const rx::SyncError& e) {
    out.failure = e.what();
    return out;
  }
  out.synced = true;
  out.labels = regenerate_labels(out.rx->decode, out.rx->cell, out.rx->dmrs_hypothesis.issb,
                                 cfg.pbch);
  out.accepted = out.labels.has_value();
  if (!out.accepted) out.failure = "CRC check failed";
  return out;
}

double estimated_snr_db(const rx::ReceivedBurst& burst) {
  double p = 0.0;
  for (const auto& h : burst.estimate.h) p += std::norm(h);
  p /= static_cast<double>(burst.estimate.h.size());
  const double nv = std::max(burst.estimate.noise_var, 1e-12);
  return 10.0 * std::log10(p / nv);
}

SymbolDataset build_captured_dataset(const std::vector<IqFrame>& frames, DatasetStage stage,
                                     const rx::RxConfig& cfg) {
  SymbolDataset ds;
  ds.stage = stage;
  ds.origin = Origin::captured;
  ds.input_dim = stage_input_dim(stage);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const LabelOutcome o = label_received_frame(frames[i], cfg);
    if (!o.accepted) {
      ++ds.rejected;
      continue;
    }
    ds.append(stage_input(*o.rx, stage), realify(*o.labels),
              {estimated_snr_db(*o.rx), i, o.rx->cell.id(), o.rx->dmrs_hypothesis.issb, std::nullopt});
  }
  return ds;
}

}  // namespace ntn::models
