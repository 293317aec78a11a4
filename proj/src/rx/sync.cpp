#include "ntn/rx/sync.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ntn/fft.hpp"
#include "ntn/tx/sequences.hpp"

namespace ntn::rx {

namespace {

// SSB symbols of Case A never start a half subframe, so the CP is the same
// for all four.
int ssb_cp(const tx::OfdmConfig& cfg) { return cfg.cp_length(tx::ssb_first_symbol(0)); }

double median(std::vector<double> v) {
  const auto mid = v.begin() + static_cast<long>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

// c[t] = sum_n conj(tmpl[n]) x[t + n] for t = 0..x.size()-tmpl.size().
CVec cross_correlate(const CVec& x, std::span<const cf64> tmpl) {
  const std::size_t m = x.size() + tmpl.size();
  CVec a(m), b(m);
  std::copy(x.begin(), x.end(), a.begin());
  std::copy(tmpl.begin(), tmpl.end(), b.begin());
  fft_inplace(a, false);
  fft_inplace(b, false);
  for (std::size_t i = 0; i < m; ++i) a[i] *= std::conj(b[i]);
  fft_inplace(a, true);
  const double scale = std::sqrt(static_cast<double>(m));
  CVec c(x.size() - tmpl.size() + 1);
  for (std::size_t t = 0; t < c.size(); ++t) c[t] = a[t] * scale;
  return c;
}

CVec derotate(std::span<const cf64> x, long first, long count, double cfo_hz, double fs) {
  CVec out(static_cast<std::size_t>(count));
  const double w = -2.0 * kPi * cfo_hz / fs;
  for (long i = 0; i < count; ++i) {
    const double phase = std::remainder(w * static_cast<double>(first + i), 2.0 * kPi);
    out[i] = x[first + i] * cf64(std::cos(phase), std::sin(phase));
  }
  return out;
}

}  // namespace

CVec pss_time_template(int n_id_2, const tx::OfdmConfig& cfg) {
  cfg.validate();
  const auto pss = tx::gen_pss(n_id_2);
  CVec bins(static_cast<std::size_t>(cfg.fft_size));
  for (int n = 0; n < kSyncSeqLen; ++n) {
    bins[tx::ssb_bin(cfg, tx::kSyncFirstSubcarrier + n)] = pss[n];
  }
  fft_inplace(bins, true);
  return bins;
}

SyncResult detect_pss(const IqFrame& frame, const SyncConfig& cfg) {
  frame.validate();
  cfg.ofdm.validate();
  const int n = cfg.ofdm.fft_size;
  const int cp = ssb_cp(cfg.ofdm);
  const long len = static_cast<long>(frame.size());
  if (len < n + cp) throw SyncError(SyncError::Kind::not_found, "frame shorter than one symbol");

  SyncResult best;
  bool found = false;
  std::vector<double> best_metric;
  for (int nid2 = 0; nid2 < 3; ++nid2) {
    const CVec tmpl = pss_time_template(nid2, cfg.ofdm);
    const std::span<const cf64> t(tmpl);
    const CVec c1 = cross_correlate(frame.samples, t.first(n / 2));
    const CVec c2 = cross_correlate(CVec(frame.samples.begin() + n / 2, frame.samples.end()),
                                    t.last(n / 2));
    // Distance between the energy centroids of the two template halves.
    double e1 = 0.0, m1 = 0.0, e2 = 0.0, m2 = 0.0;
    for (int i = 0; i < n / 2; ++i) {
      e1 += std::norm(tmpl[i]);
      m1 += i * std::norm(tmpl[i]);
      e2 += std::norm(tmpl[i + n / 2]);
      m2 += (i + n / 2) * std::norm(tmpl[i + n / 2]);
    }
    const double lag = m2 / e2 - m1 / e1;
    // Lag tau is the first useful sample of the PSS symbol.
    const long taus = len - n + 1;
    std::vector<double> metric(static_cast<std::size_t>(taus));
    for (long tau = 0; tau < taus; ++tau) metric[tau] = std::abs(c1[tau]) + std::abs(c2[tau]);
    for (long tau = cp; tau < taus; ++tau) {
      if (!found || metric[tau] > best.correlation_peak) {
        found = true;
        best.correlation_peak = metric[tau];
        best.timing_offset_samples = tau - cp;
        best.n_id_2 = nid2;
        best.coarse_cfo_hz = std::arg(c2[tau] * std::conj(c1[tau])) /
                             (2.0 * kPi * lag / frame.sample_rate_hz);
        best_metric = metric;
      }
    }
  }
  const double med = median(best_metric);
  best.peak_to_side = med > 0.0 ? best.correlation_peak / med : 0.0;
  if (!found || !(best.peak_to_side >= cfg.pss_threshold)) {
    throw SyncError(SyncError::Kind::not_found,
                    "no PSS above threshold (peak/median " + std::to_string(best.peak_to_side) +
                        ")");
  }
  return best;
}

SyncResult detect_sss(const IqFrame& frame, SyncResult sync, const SyncConfig& cfg) {
  cfg.ofdm.validate();
  const int n = cfg.ofdm.fft_size;
  const int cp = ssb_cp(cfg.ofdm);
  const long pss_start = sync.timing_offset_samples + cp;
  const long sss_start = sync.timing_offset_samples + tx::ssb_symbol_offset(cfg.ofdm, 0, 2) + cp;
  if (sync.timing_offset_samples < 0 || sss_start + n > static_cast<long>(frame.size())) {
    throw std::out_of_range("frame too short to contain the SSS symbol");
  }
  const CVec pss_sym = derotate(frame.samples, pss_start, n, sync.coarse_cfo_hz,
                                frame.sample_rate_hz);
  const CVec sss_sym = derotate(frame.samples, sss_start, n, sync.coarse_cfo_hz,
                                frame.sample_rate_hz);
  const CVec yp = demodulate_symbol(pss_sym, 0, cfg.ofdm);
  const CVec ys = demodulate_symbol(sss_sym, 0, cfg.ofdm);
  const auto pss = tx::gen_pss(sync.n_id_2);

  // z_k = y_sss,k * conj(h_k), h_k = y_pss,k * pss_k.
  CVec z(kSyncSeqLen);
  for (int i = 0; i < kSyncSeqLen; ++i) {
    const int bin = tx::ssb_bin(cfg.ofdm, tx::kSyncFirstSubcarrier + i);
    z[i] = ys[bin] * std::conj(yp[bin] * pss[i]);
  }
  std::vector<double> metric(336);
  int best = 0;
  for (int n1 = 0; n1 < 336; ++n1) {
    const auto sss = tx::gen_sss(tx::CellIdentity::from_parts(n1, sync.n_id_2));
    cf64 acc{};
    for (int i = 0; i < kSyncSeqLen; ++i) acc += z[i] * sss[i];
    metric[n1] = std::abs(acc);
    if (metric[n1] > metric[best]) best = n1;
  }
  const double peak = metric[best];
  const double med = median(metric);
  const double ratio = med > 0.0 ? peak / med : 0.0;
  if (!(ratio >= cfg.sss_threshold)) {
    throw SyncError(SyncError::Kind::ambiguous_cell,
                    "SSS detection ambiguous (peak/median " + std::to_string(ratio) + ")");
  }
  sync.n_id_1 = best;
  sync.correlation_peak = peak;
  sync.peak_to_side = ratio;
  return sync;
}

SyncResult synchronize(const IqFrame& frame, const SyncConfig& cfg) {
  return detect_sss(frame, detect_pss(frame, cfg), cfg);
}

tx::SsbGrid extract_ssb(const IqFrame& frame, const SyncResult& sync, int issb,
                        const tx::OfdmConfig& cfg) {
  cfg.validate();
  const long start = sync.timing_offset_samples;
  const long len = tx::ssb_length(cfg, issb);
  if (start < 0 || start + len > static_cast<long>(frame.size())) {
    throw std::out_of_range("SSB at sample " + std::to_string(start) + " exceeds frame of " +
                            std::to_string(frame.size()) + " samples");
  }
  IqFrame ssb;
  ssb.sample_rate_hz = frame.sample_rate_hz;
  ssb.samples = derotate(frame.samples, start, len, sync.coarse_cfo_hz, frame.sample_rate_hz);
  return tx::ofdm_demodulate(ssb, 0, sync.cell(), issb, cfg);
}

}  // namespace ntn::rx
