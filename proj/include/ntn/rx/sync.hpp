#pragma once

#include <stdexcept>

#include "ntn/iq_frame.hpp"
#include "ntn/tx/ofdm.hpp"

namespace ntn::rx {

/// Raised when no PSS clears the threshold or the SSS is ambiguous.
class SyncError : public std::runtime_error {
 public:
  enum class Kind { not_found, ambiguous_cell };
  SyncError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct SyncConfig {
  tx::OfdmConfig ofdm;
  double pss_threshold = 6.0;  // correlation peak / median
  double sss_threshold = 3.0;  // best SSS metric / median over candidates
};

struct SyncResult {
  long timing_offset_samples = 0;  // first sample of the SSB (PSS cyclic prefix)
  double coarse_cfo_hz = 0.0;
  int n_id_2 = 0;
  int n_id_1 = -1;  // -1 until detect_sss
  double correlation_peak = 0.0;
  double peak_to_side = 0.0;

  tx::CellIdentity cell() const { return tx::CellIdentity::from_parts(n_id_1, n_id_2); }
};

/// Time-domain PSS (one useful symbol, no CP) for n_id_2.
CVec pss_time_template(int n_id_2, const tx::OfdmConfig& cfg = {});

/// Searches every lag and the three PSS roots. The correlation is split in
/// two halves: their magnitudes add up for detection and the phase between
/// them gives the coarse CFO.
SyncResult detect_pss(const IqFrame& frame, const SyncConfig& cfg = {});

/// Fills n_id_1 by correlating the SSS symbol against the 336 candidates,
/// using the PSS symbol as the phase reference.
SyncResult detect_sss(const IqFrame& frame, SyncResult sync, const SyncConfig& cfg = {});

/// detect_pss followed by detect_sss.
SyncResult synchronize(const IqFrame& frame, const SyncConfig& cfg = {});

/// Removes the coarse CFO and demodulates the four SSB symbols.
tx::SsbGrid extract_ssb(const IqFrame& frame, const SyncResult& sync, int issb = 0,
                        const tx::OfdmConfig& cfg = {});

}  // namespace ntn::rx
