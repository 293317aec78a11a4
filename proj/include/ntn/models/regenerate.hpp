#pragma once

#include <optional>

#include "ntn/models/dataset.hpp"

namespace ntn::models {

/// Labels by re-encoding a CRC-verified payload: the 432 symbols that were
/// transmitted. Empty when the CRC failed or the MIB did not parse.
std::optional<CVec> regenerate_labels(const rx::PbchDecodeResult& decode, tx::CellIdentity cell,
                                      int issb, const tx::PbchConfig& cfg = {});

/// Per-burst outcome of labelling a received frame.
struct LabelOutcome {
  bool synced = false;
  bool accepted = false;
  std::optional<rx::ReceivedBurst> rx;
  std::optional<CVec> labels;
  std::string failure;
};

LabelOutcome label_received_frame(const IqFrame& frame, const rx::RxConfig& cfg = {});

/// Post-equalization SNR estimate of a received burst, dB.
double estimated_snr_db(const rx::ReceivedBurst& burst);

/// Dataset from received frames (one SSB each) labelled through the CRC
/// gate. Rejected bursts are counted, never kept.
SymbolDataset build_captured_dataset(const std::vector<IqFrame>& frames, DatasetStage stage,
                                     const rx::RxConfig& cfg = {});

}  // namespace ntn::models
