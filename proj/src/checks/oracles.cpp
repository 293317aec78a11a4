#include "ntn/checks/oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "ntn/models/regenerate.hpp"
#include "ntn/nn/mlp.hpp"

namespace ntn::checks {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

CheckResult finish(std::string name, bool passed, std::string detail, Clock::time_point t0) {
  return {std::move(name), passed, std::move(detail),
          std::chrono::duration<double>(Clock::now() - t0).count()};
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

}  // namespace

CheckResult codec_round_trip(std::uint64_t seed) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(sub_seed(seed, 0xC0DE));
  std::uniform_int_distribution<int> cell_dist(0, kMaxCellId);
  std::bernoulli_distribution bit;
  std::vector<int> cells(100);
  for (auto& c : cells) c = cell_dist(rng);
  int ok = 0;
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    Bits payload(kPayloadBits);
    for (auto& b : payload) b = bit(rng);
    const tx::CellIdentity cell(cells[static_cast<std::size_t>(i % 100)]);
    const auto txb = tx::encode_pbch(payload, cell, 0);
    const auto d = rx::decode_symbols(txb.symbols, cell, 0);
    ok += d.crc_pass && d.payload == payload;
  }
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();
  return finish("codec round trip", ok == n && s < 30.0,
                fmt("%d/%d recovered with CRC pass, %.2f s (limit 30 s)", ok, n, s), t0);
}

CheckResult ber_oracle(std::uint64_t seed) {
  const auto t0 = Clock::now();
  const std::size_t nsym = 600000;
  std::mt19937_64 rng(sub_seed(seed, 0xBE5));
  std::bernoulli_distribution bit;
  Bits bits(2 * nsym);
  for (auto& b : bits) b = bit(rng);
  IqFrame f;
  f.sample_rate_hz = 3.84e6;
  f.samples = tx::qpsk_modulate(bits);
  bool pass = true;
  std::string detail;
  for (const double esn0 : {0.0, 5.0, 10.0}) {
    const IqFrame y = channel::apply_awgn(f, esn0, sub_seed(seed, 0xBE5, static_cast<std::uint64_t>(esn0)));
    const double ber = rx::compute_ber(bits, rx::qpsk_demod_hard(y.samples));
    const double ref = q_function(std::sqrt(std::pow(10.0, esn0 / 10.0)));
    const double rel = ber / ref - 1.0;
    pass = pass && std::abs(rel) <= 0.15;
    detail += fmt("%g dB: %.4g vs %.4g (%+.1f%%); ", esn0, ber, ref, 100.0 * rel);
  }
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();
  detail += fmt("%zu bits each, %.2f s (limit 60 s)", bits.size(), s);
  return finish("BER oracle", pass && s < 60.0, detail, t0);
}

CheckResult sync_robustness(std::uint64_t seed) {
  const auto t0 = Clock::now();
  models::BurstConfig cfg;
  cfg.offset = 400;
  std::mt19937_64 rng(sub_seed(seed, 0x5C));
  int timing_ok = 0;
  int cfo_ok = 0;
  double worst_cfo = 0.0;
  for (int i = 0; i < 100; ++i) {
    const tx::MibPayload mib = models::random_mib(rng);
    const tx::CellIdentity cell(std::uniform_int_distribution<int>(0, kMaxCellId)(rng));
    const auto ssb = tx::generate_ssb(mib, cell);
    const auto p = channel::draw_profile(sub_seed(seed, 0x5C, static_cast<std::uint64_t>(i)),
                                         cfg.ofdm.scs_hz, cfg.ofdm.sample_rate_hz(), cfg.delay, 0.0);
    const IqFrame frame = models::burst_frame(ssb, p, cfg);
    try {
      const auto s = rx::detect_pss(frame, cfg.sync);
      const long expect = cfg.offset + p.integer_delay_samples;
      if (std::abs(s.timing_offset_samples - expect) <= 2 && s.n_id_2 == cell.n_id_2()) ++timing_ok;
      const double err = std::abs(s.coarse_cfo_hz - p.cfo_hz);
      worst_cfo = std::max(worst_cfo, err);
      if (err < 7500.0) ++cfo_ok;
    } catch (const rx::SyncError&) {
    }
  }
  return finish("sync robustness", timing_ok >= 95 && cfo_ok >= 95,
                fmt("timing+N_ID2 %d/100, CFO within 7.5 kHz %d/100 at 0 dB (need 95)",
                    timing_ok, cfo_ok),
                t0);
}

CheckResult decoder_margin(std::uint64_t seed) {
  const auto t0 = Clock::now();
  int pass = 0;
  const int n = 500;
  for (int i = 0; i < n; ++i) {
    const auto b = models::simulate_burst(sub_seed(seed, 0xDEC, static_cast<std::uint64_t>(i)), 20.0);
    if (b.synced() && b.rx->decode.crc_pass && b.rx->decode.mib == b.tx.mib) ++pass;
  }
  return finish("decoder margin", pass * 100 >= 99 * n,
                fmt("CRC pass %d/%d at 20 dB (need 99%%)", pass, n), t0);
}

CheckResult gradient_check(std::uint64_t seed) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(sub_seed(seed, 0x6AD));
  std::uniform_int_distribution<int> dim(1, 9);
  std::normal_distribution<double> g;
  auto random_matrix = [&](Eigen::Index r, Eigen::Index c, double scale) {
    nn::Matrix m(r, c);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = scale * g(rng);
    return m;
  };
  auto loss = [](const nn::MlpModel& m, const nn::Matrix& x, const nn::Matrix& y) {
    return 0.5 * (m.forward_batch(x) - y).squaredNorm() / static_cast<double>(y.size());
  };
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int d_in = dim(rng), k = dim(rng), d_out = dim(rng), batch = dim(rng);
    nn::MlpModel m = nn::init_mlp(d_in, k, d_out, sub_seed(seed, 0x6AD, static_cast<std::uint64_t>(trial)));
    for (auto& l : m.layers()) l.b = random_matrix(l.b.size(), 1, 0.3);
    const nn::Matrix x = random_matrix(d_in, batch, 1.0);
    const nn::Matrix y = random_matrix(d_out, batch, 1.0);
    const nn::Gradients grad = nn::backward(m, x, y);
    const double h = 1e-5;
    auto probe = [&](double& p, double analytic) {
      const double saved = p;
      p = saved + h;
      const double up = loss(m, x, y);
      p = saved - h;
      const double down = loss(m, x, y);
      p = saved;
      const double fd = (up - down) / (2.0 * h);
      // Gradients below 1e-6 are compared in absolute terms.
      worst = std::max(worst, std::abs(fd - analytic) / std::max({std::abs(fd), std::abs(analytic), 1e-6}));
    };
    for (std::size_t l = 0; l < m.layers().size(); ++l) {
      auto& layer = m.layers()[l];
      for (Eigen::Index i = 0; i < layer.w.size(); ++i) probe(layer.w.data()[i], grad.layers[l].w.data()[i]);
      for (Eigen::Index i = 0; i < layer.b.size(); ++i) probe(layer.b.data()[i], grad.layers[l].b.data()[i]);
    }
  }
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();
  return finish("gradient check", worst < 1e-4 && s < 60.0,
                fmt("max relative error %.3g over 20 architectures (limit 1e-4), %.2f s", worst, s), t0);
}

CheckResult regeneration_integrity(std::uint64_t seed) {
  const auto t0 = Clock::now();
  const auto& grid = models::kDefaultSnrGrid;
  std::mt19937_64 rng(sub_seed(seed, 0x4E7));
  int accepted = 0, rejected = 0, unsynced = 0, mislabeled = 0, leaked = 0;
  int corrupt_rejected = 0, corrupt_pass = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto b = models::simulate_burst(sub_seed(seed, 0x4E6, i), grid[i % grid.size()]);
    if (!b.rx) {
      ++unsynced;
      continue;
    }
    const auto& r = *b.rx;
    const int issb = r.dmrs_hypothesis.issb;
    const auto labels = models::regenerate_labels(r.decode, r.cell, issb);
    if (r.decode.crc_pass) {
      ++accepted;
      if (!labels || !b.synced() || *labels != b.tx.pbch.symbols) ++mislabeled;
    } else {
      ++rejected;
      if (labels) ++leaked;
    }
    // The grid rarely fails the CRC, so every third burst is also decoded
    // from LLRs buried in noise to exercise the reject path.
    if (i % 3 == 0) {
      double scale = 0.0;
      for (const double l : r.llrs) scale += std::abs(l);
      std::normal_distribution<double> g(0.0, 4.0 * scale / static_cast<double>(r.llrs.size()));
      std::vector<double> noisy(r.llrs.begin(), r.llrs.end());
      for (auto& l : noisy) l += g(rng);
      const auto d = rx::decode_pbch(noisy, r.cell, issb);
      const auto l2 = models::regenerate_labels(d, r.cell, issb);
      if (d.crc_pass) {
        ++corrupt_pass;
        if (!l2 || *l2 != b.tx.pbch.symbols) ++mislabeled;
      } else {
        ++corrupt_rejected;
        if (l2) ++leaked;
      }
    }
  }
  return finish("regeneration integrity",
                mislabeled == 0 && leaked == 0 && accepted > 0 && corrupt_rejected > 0,
                fmt("1000 bursts: %d CRC pass (%d mislabeled), %d CRC fail, %d unsynchronised; "
                    "corrupted LLRs: %d rejected, %d passed; labels on a failed CRC: %d",
                    accepted, mislabeled, rejected, unsynced, corrupt_rejected, corrupt_pass, leaked),
                t0);
}

}  // namespace ntn::checks
