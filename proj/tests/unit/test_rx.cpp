#include <cmath>
#include <random>

#include "doctest.h"
#include "ntn/channel/ntn_channel.hpp"
#include "ntn/fft.hpp"
#include "ntn/rx/pbch_rx.hpp"
#include "ntn/tx/sequences.hpp"
#include "ntn/tx/ssb_tx.hpp"

using namespace ntn;
using namespace ntn::rx;

namespace {

// Offset up to 400, SSB, 1 ms of delay and one symbol of tail.
constexpr long kFrameLen = 400 + 1096 + 3840 + 256;

tx::MibPayload random_mib(std::mt19937_64& rng) {
  auto u = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  tx::MibPayload m;
  m.sfn = u(0, 1023);
  m.ssb_subcarrier_offset = u(0, 31);
  m.pdcch_config_sib1 = u(0, 255);
  m.half_frame_bit = u(0, 1) != 0;
  m.cell_barred = static_cast<tx::CellBarred>(u(0, 1));
  return m;
}

struct Burst {
  tx::SsbTransmission tx;
  IqFrame frame;
  long offset;
};

Burst make_burst(std::mt19937_64& rng, const channel::ChannelProfile& profile, int issb = 0) {
  Burst b;
  const int cell = std::uniform_int_distribution<int>(0, kMaxCellId)(rng);
  tx::SsbTxConfig cfg;
  cfg.issb = issb;
  b.tx = tx::generate_ssb(random_mib(rng), tx::CellIdentity(cell), cfg);
  b.offset = std::uniform_int_distribution<long>(0, 400)(rng);
  b.frame = channel::simulate(tx::frame_ssb_burst(b.tx.waveform, b.offset, kFrameLen), profile);
  return b;
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

}  // namespace

TEST_CASE("PSS correlation matches brute force") {
  std::mt19937_64 rng(1);
  const Burst b = make_burst(rng, {});
  const CVec tmpl = pss_time_template(b.tx.cell.n_id_2());
  long best_tau = 0;
  double best = -1.0;
  for (long tau = 0; tau + 256 <= kFrameLen; ++tau) {
    cf64 c1{}, c2{};
    for (int n = 0; n < 128; ++n) c1 += std::conj(tmpl[n]) * b.frame.samples[tau + n];
    for (int n = 128; n < 256; ++n) c2 += std::conj(tmpl[n]) * b.frame.samples[tau + n];
    const double m = std::abs(c1) + std::abs(c2);
    if (m > best) {
      best = m;
      best_tau = tau;
    }
  }
  const SyncResult s = detect_pss(b.frame);
  CHECK(s.timing_offset_samples + 18 == best_tau);
  CHECK(s.correlation_peak == doctest::Approx(best).epsilon(1e-9));
}

TEST_CASE("detect_pss") {
  std::mt19937_64 rng(2);
  SUBCASE("noiseless: exact timing and root") {
    for (int i = 0; i < 100; ++i) {
      channel::ChannelProfile p;
      p.integer_delay_samples = std::uniform_int_distribution<long>(0, 3000)(rng);
      const Burst b = make_burst(rng, p);
      const SyncResult s = detect_pss(b.frame);
      REQUIRE(s.timing_offset_samples == b.offset + p.integer_delay_samples);
      REQUIRE(s.n_id_2 == b.tx.cell.n_id_2());
      CHECK(std::abs(s.coarse_cfo_hz) < 1.0);
    }
  }
  SUBCASE("0 dB with CFO and fractional delay") {
    int timing_ok = 0;
    int cfo_ok = 0;
    for (int i = 0; i < 100; ++i) {
      const auto p = channel::draw_profile(1000 + i, 15e3, 3.84e6, {}, 0.0);
      const Burst b = make_burst(rng, p);
      try {
        const SyncResult s = detect_pss(b.frame);
        const long expect = b.offset + p.integer_delay_samples;
        if (std::abs(s.timing_offset_samples - expect) <= 2 && s.n_id_2 == b.tx.cell.n_id_2())
          ++timing_ok;
        if (std::abs(s.coarse_cfo_hz - p.cfo_hz) < 7500.0) ++cfo_ok;
      } catch (const SyncError&) {
      }
    }
    CHECK(timing_ok >= 95);
    CHECK(cfo_ok >= 95);
  }
  SUBCASE("pure noise is rejected") {
    IqFrame noise;
    noise.sample_rate_hz = 3.84e6;
    std::normal_distribution<double> g;
    for (int i = 0; i < kFrameLen; ++i) noise.samples.emplace_back(g(rng), g(rng));
    try {
      detect_pss(noise);
      FAIL("expected SyncError");
    } catch (const SyncError& e) {
      CHECK(e.kind() == SyncError::Kind::not_found);
    }
  }
}

TEST_CASE("detect_sss") {
  std::mt19937_64 rng(3);
  SUBCASE("noiseless: 50 random cells") {
    for (int i = 0; i < 50; ++i) {
      const Burst b = make_burst(rng, {});
      const SyncResult s = synchronize(b.frame);
      CHECK(s.cell() == b.tx.cell);
    }
  }
  SUBCASE("wrong n_id_2 gives a lower peak") {
    SyncConfig loose;
    loose.sss_threshold = 0.0;
    for (int i = 0; i < 20; ++i) {
      const Burst b = make_burst(rng, {});
      const SyncResult pss = detect_pss(b.frame);
      const SyncResult good = detect_sss(b.frame, pss, loose);
      SyncResult wrong = pss;
      wrong.n_id_2 = (pss.n_id_2 + 1) % 3;
      CHECK(detect_sss(b.frame, wrong, loose).correlation_peak < good.correlation_peak);
    }
  }
  SUBCASE("frame too short") {
    const Burst b = make_burst(rng, {});
    SyncResult s = detect_pss(b.frame);
    IqFrame cut = b.frame;
    cut.samples.resize(static_cast<std::size_t>(s.timing_offset_samples + 600));
    CHECK_THROWS_AS(detect_sss(cut, s), std::out_of_range);
  }
}

TEST_CASE("extract_ssb") {
  std::mt19937_64 rng(4);
  const Burst b = make_burst(rng, {});
  const SyncResult s = synchronize(b.frame);
  const tx::SsbGrid g = extract_ssb(b.frame, s);
  double err = 0.0;
  for (int i = 0; i < kSsbRes; ++i) err += std::norm(g.res[i] - b.tx.grid.res[i]);
  CHECK(std::sqrt(err / kSsbRes) < 1e-6);

  channel::ChannelProfile p;
  p.cfo_hz = 3000.0;
  const Burst c = make_burst(rng, p);
  const SyncResult sc = synchronize(c.frame);
  CHECK(std::abs(sc.coarse_cfo_hz - 3000.0) < 1.0);
  const tx::SsbGrid gc = extract_ssb(c.frame, sc);
  for (int i = 0; i < kSsbRes; ++i) {
    const double ref = std::abs(c.tx.grid.res[i]);
    if (ref > 0.0) CHECK(std::abs(std::abs(gc.res[i]) - ref) / ref < 0.02);
  }

  SyncResult late = s;
  late.timing_offset_samples = kFrameLen - 100;
  CHECK_THROWS_AS(extract_ssb(b.frame, late), std::out_of_range);
}

TEST_CASE("estimate_channel") {
  std::mt19937_64 rng(5);
  const auto t = tx::generate_ssb(random_mib(rng), tx::CellIdentity(404));
  SUBCASE("flat unit channel") {
    const ChannelEstimate e = estimate_channel(t.grid, t.dmrs);
    for (const auto& h : e.h) CHECK(std::abs(h - 1.0) < 1e-6);
    CHECK(e.noise_var < 1e-20);
  }
  SUBCASE("rotated channel at 20 dB") {
    const cf64 h0 = std::polar(1.0, kPi / 4);
    std::normal_distribution<double> g(0.0, std::sqrt(0.01 / 2));
    cf64 mean_ratio{};
    for (int trial = 0; trial < 50; ++trial) {
      tx::SsbGrid y = t.grid;
      for (auto& v : y.res) v = h0 * v + cf64(g(rng), g(rng));
      const ChannelEstimate e = estimate_channel(y, t.dmrs);
      for (int i = 0; i < kPbchDataRes; ++i) mean_ratio += e.h[i] / h0;
    }
    // Mean phase error (estimator bias) over all data REs.
    CHECK(std::abs(std::arg(mean_ratio)) * 180.0 / kPi < 2.0);
  }
  SUBCASE("noise variance at 10 dB") {
    std::normal_distribution<double> g(0.0, std::sqrt(0.1 / 2));
    double acc = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      tx::SsbGrid y = t.grid;
      for (auto& v : y.res) v += cf64(g(rng), g(rng));
      acc += estimate_channel(y, t.dmrs).noise_var;
    }
    CHECK(std::abs(acc / 200 / 0.1 - 1.0) < 0.25);
  }
  CHECK_THROWS_AS(estimate_channel(t.grid, CVec(10)), std::invalid_argument);
}

TEST_CASE("mmse_equalize") {
  std::mt19937_64 rng(6);
  const auto t = tx::generate_ssb(random_mib(rng), tx::CellIdentity(7));
  ChannelEstimate e;
  std::fill(e.h.begin(), e.h.end(), cf64(1.0));
  e.noise_var = 0.0;
  const EqualizedBlock zf = mmse_equalize(t.grid, e);
  CHECK(zf.symbols == post_sync_symbols(t.grid).symbols);
  CHECK(zf.symbols == t.pbch.symbols);

  std::fill(e.h.begin(), e.h.end(), cf64(2.0));
  const EqualizedBlock half = mmse_equalize(t.grid, e);
  for (int i = 0; i < kPbchDataRes; ++i) CHECK(std::abs(half.symbols[i] - t.pbch.symbols[i] / 2.0) < 1e-15);

  e.noise_var = 1e-12;
  const EqualizedBlock near = mmse_equalize(t.grid, e);
  for (int i = 0; i < kPbchDataRes; ++i) CHECK(std::abs(near.symbols[i] - half.symbols[i]) < 1e-12);

  e.noise_var = 1e12;
  for (const auto& v : mmse_equalize(t.grid, e).symbols) CHECK(std::abs(v) < 1e-11);

  std::fill(e.h.begin(), e.h.end(), cf64{});
  e.noise_var = 0.0;
  for (const auto& v : mmse_equalize(t.grid, e).symbols) CHECK(v == cf64{});
}

TEST_CASE("demodulation and BER") {
  std::mt19937_64 rng(7);
  std::bernoulli_distribution bit;
  Bits b(864);
  for (auto& v : b) v = bit(rng);
  const CVec s = tx::qpsk_modulate(b);
  CHECK(qpsk_demod_hard(s) == b);
  const auto llr = qpsk_llrs(s, 0.1);
  for (int i = 0; i < 864; ++i) CHECK((llr[i] < 0) == (b[i] == 1));

  CHECK(compute_ber(b, b) == 0.0);
  Bits flipped = b;
  for (auto& v : flipped) v ^= 1;
  CHECK(compute_ber(b, flipped) == 1.0);
  CHECK_THROWS_AS(compute_ber(b, Bits(863)), std::invalid_argument);

  SUBCASE("uncoded QPSK at 10 dB") {
    const int nsym = 500000;
    std::normal_distribution<double> g(0.0, std::sqrt(0.1 / 2));
    Bits tx_bits(2 * nsym);
    for (auto& v : tx_bits) v = bit(rng);
    CVec y = tx::qpsk_modulate(tx_bits);
    for (auto& v : y) v += cf64(g(rng), g(rng));
    const double ber = compute_ber(tx_bits, qpsk_demod_hard(y));
    CHECK(std::abs(ber / q_function(std::sqrt(10.0)) - 1.0) < 0.15);
  }
}

TEST_CASE("PBCH decode") {
  std::mt19937_64 rng(8);
  SUBCASE("clean chain, 100 random MIBs") {
    for (int i = 0; i < 100; ++i) {
      const Burst b = make_burst(rng, {});
      const ReceivedBurst r = receive_burst(b.frame);
      REQUIRE(r.decode.crc_pass);
      REQUIRE(r.decode.mib.has_value());
      CHECK(*r.decode.mib == b.tx.mib);
      CHECK(r.decode.payload == b.tx.pbch.payload);
    }
  }
  SUBCASE("other SSB indices and half frames") {
    for (int issb = 0; issb < 4; ++issb) {
      const Burst b = make_burst(rng, {}, issb);
      const ReceivedBurst r = receive_burst(b.frame);
      CHECK(r.dmrs_hypothesis.issb == issb);
      CHECK(r.dmrs_hypothesis.half_frame == b.tx.mib.half_frame_bit);
      CHECK(r.decode.crc_pass);
      CHECK(*r.decode.mib == b.tx.mib);
    }
  }
  SUBCASE("decode_symbols on clean symbols") {
    const Burst b = make_burst(rng, {});
    const auto d = decode_symbols(b.tx.pbch.symbols, b.tx.cell, 0);
    CHECK(d.crc_pass);
    CHECK(d.payload == b.tx.pbch.payload);
  }
  SUBCASE("20 dB synthetic channel, 500 bursts") {
    int pass = 0;
    for (int i = 0; i < 500; ++i) {
      const auto p = channel::draw_profile(5000 + i, 15e3, 3.84e6, {}, 20.0);
      const Burst b = make_burst(rng, p);
      try {
        const ReceivedBurst r = receive_burst(b.frame);
        if (r.decode.crc_pass && r.decode.mib && *r.decode.mib == b.tx.mib) ++pass;
      } catch (const SyncError&) {
      }
    }
    CHECK(pass >= 495);
  }
  SUBCASE("random symbols never pass the CRC") {
    std::normal_distribution<double> g;
    int pass = 0;
    for (int i = 0; i < 2000; ++i) {
      CVec s(432);
      for (auto& v : s) v = cf64(g(rng), g(rng));
      pass += decode_symbols(s, tx::CellIdentity(i % 1008), 0).crc_pass;
    }
    CHECK(pass == 0);
  }
  CHECK_THROWS_AS(decode_pbch(std::vector<double>(100), tx::CellIdentity(1), 0), std::invalid_argument);
  CHECK_FALSE(decode_pbch(std::vector<double>(864, 0.0), tx::CellIdentity(1), 0).crc_pass);
  CHECK_FALSE(decode_symbols(CVec(432), tx::CellIdentity(5), 0).crc_pass);
}
