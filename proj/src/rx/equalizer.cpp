#include "ntn/rx/equalizer.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ntn::rx {

namespace {

constexpr double kDenominatorFloor = 1e-12;

struct Pilot {
  int k;
  cf64 h;
};

// Pilots closer than this belong to the same contiguous run.
constexpr int kMaxPilotGap = 4;

cf64 interpolate(const std::vector<Pilot>& run, int k) {
  if (k <= run.front().k) return run.front().h;
  if (k >= run.back().k) return run.back().h;
  const auto hi = std::lower_bound(run.begin(), run.end(), k,
                                   [](const Pilot& p, int kk) { return p.k < kk; });
  const auto lo = hi - 1;
  const double t = static_cast<double>(k - lo->k) / (hi->k - lo->k);
  return lo->h + t * (hi->h - lo->h);
}

}  // namespace

ChannelEstimate estimate_channel(const tx::SsbGrid& grid, std::span<const cf64> dmrs144) {
  if (dmrs144.size() != kPbchDmrsRes) {
    throw std::invalid_argument("estimate_channel expects 144 DMRS values, got " +
                                std::to_string(dmrs144.size()));
  }
  // LS estimates grouped per symbol into contiguous runs.
  std::vector<std::vector<std::vector<Pilot>>> runs(kSsbSymbols);
  CVec h_full(kSsbRes);
  int p = 0;
  for (int l = 0; l < kSsbSymbols; ++l) {
    for (int k = 0; k < kSsbSubcarriers; ++k) {
      const int re = tx::re_index(k, l);
      if (!grid.dmrs_mask.test(re)) continue;
      const cf64 h = grid.res[re] * std::conj(dmrs144[p]) / std::norm(dmrs144[p]);
      ++p;
      h_full[re] = h;
      auto& sym = runs[l];
      if (sym.empty() || k - sym.back().back().k > kMaxPilotGap) sym.emplace_back();
      sym.back().push_back({k, h});
    }
  }

  double resid = 0.0;
  int count = 0;
  for (const auto& sym : runs) {
    for (const auto& run : sym) {
      for (std::size_t i = 1; i + 1 < run.size(); ++i) {
        resid += std::norm(run[i].h - 0.5 * (run[i - 1].h + run[i + 1].h));
        ++count;
      }
    }
  }

  for (int l = 0; l < kSsbSymbols; ++l) {
    for (int k = 0; k < kSsbSubcarriers; ++k) {
      const int re = tx::re_index(k, l);
      if (!grid.data_mask.test(re)) continue;
      const auto& sym = runs[l];
      if (sym.empty()) throw std::invalid_argument("data RE in a symbol without DMRS");
      // Run whose span is closest to k.
      const std::vector<Pilot>* nearest = &sym.front();
      int best = 1 << 30;
      for (const auto& run : sym) {
        const int d = k < run.front().k ? run.front().k - k
                      : k > run.back().k ? k - run.back().k
                                         : 0;
        if (d < best) {
          best = d;
          nearest = &run;
        }
      }
      h_full[re] = interpolate(*nearest, k);
    }
  }

  ChannelEstimate est;
  int out = 0;
  for (int l = 0; l < kSsbSymbols; ++l)
    for (int k = 0; k < kSsbSubcarriers; ++k)
      if (grid.data_mask.test(tx::re_index(k, l))) est.h[out++] = h_full[tx::re_index(k, l)];
  for (int l = 0; l < kSsbSymbols; ++l)
    for (int k = 0; k < kSsbSubcarriers; ++k)
      if (grid.dmrs_mask.test(tx::re_index(k, l))) est.h[out++] = h_full[tx::re_index(k, l)];
  est.noise_var = count > 0 ? resid / count / 1.5 : 0.0;
  return est;
}

EqualizedBlock post_sync_symbols(const tx::SsbGrid& grid) {
  EqualizedBlock b;
  b.stage = Stage::post_sync;
  int i = 0;
  for (int re = 0; re < kSsbRes; ++re)
    if (grid.data_mask.test(re)) b.symbols[i++] = grid.res[re];
  if (i != kPbchDataRes) throw std::invalid_argument("grid does not carry 432 PBCH data REs");
  return b;
}

EqualizedBlock mmse_equalize(const tx::SsbGrid& grid, const ChannelEstimate& est) {
  EqualizedBlock b = post_sync_symbols(grid);
  b.stage = Stage::post_mmse;
  for (int i = 0; i < kPbchDataRes; ++i) {
    const cf64 h = est.h[i];
    const double den = std::max(std::norm(h) + est.noise_var, kDenominatorFloor);
    b.symbols[i] = std::conj(h) * b.symbols[i] / den;
  }
  return b;
}

Bits qpsk_demod_hard(std::span<const cf64> symbols) {
  Bits bits(2 * symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    bits[2 * i] = symbols[i].real() < 0.0;
    bits[2 * i + 1] = symbols[i].imag() < 0.0;
  }
  return bits;
}

std::vector<double> qpsk_llrs(std::span<const cf64> symbols, double noise_var) {
  const double scale = 2.0 * std::sqrt(2.0) / std::max(noise_var, kDenominatorFloor);
  std::vector<double> llr(2 * symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    llr[2 * i] = scale * symbols[i].real();
    llr[2 * i + 1] = scale * symbols[i].imag();
  }
  return llr;
}

std::vector<double> mmse_llrs(const EqualizedBlock& block, const ChannelEstimate& est) {
  const double nv = std::max(est.noise_var, kDenominatorFloor);
  std::vector<double> llr(2 * kPbchDataRes);
  for (int i = 0; i < kPbchDataRes; ++i) {
    const double scale = 2.0 * std::sqrt(2.0) * (std::norm(est.h[i]) + nv) / nv;
    llr[2 * i] = scale * block.symbols[i].real();
    llr[2 * i + 1] = scale * block.symbols[i].imag();
  }
  return llr;
}

double compute_ber(std::span<const std::uint8_t> tx_bits, std::span<const std::uint8_t> rx_bits) {
  if (tx_bits.size() != rx_bits.size()) {
    throw std::invalid_argument("compute_ber: length mismatch " + std::to_string(tx_bits.size()) +
                                " vs " + std::to_string(rx_bits.size()));
  }
  if (tx_bits.empty()) throw std::invalid_argument("compute_ber: empty input");
  std::size_t errors = 0;
  for (std::size_t i = 0; i < tx_bits.size(); ++i) errors += (tx_bits[i] & 1U) != (rx_bits[i] & 1U);
  return static_cast<double>(errors) / static_cast<double>(tx_bits.size());
}

double symbol_mse(std::span<const cf64> a, std::span<const cf64> b) {
  if (a.size() != b.size() || a.empty()) throw std::invalid_argument("symbol_mse: bad lengths");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::norm(a[i] - b[i]);
  return acc / static_cast<double>(a.size());
}

}  // namespace ntn::rx
