#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "doctest.h"
#include "ntn/tx/crc.hpp"
#include "ntn/tx/gold.hpp"
#include "ntn/tx/mib.hpp"
#include "ntn/tx/ofdm.hpp"
#include "ntn/tx/pbch.hpp"
#include "ntn/tx/polar.hpp"
#include "ntn/tx/sequences.hpp"
#include "ntn/tx/ssb_grid.hpp"
#include "ntn/tx/ssb_tx.hpp"

using namespace ntn;
using namespace ntn::tx;

namespace {

Bits random_bits(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> bit(0, 1);
  Bits b(n);
  for (auto& v : b) v = static_cast<std::uint8_t>(bit(rng));
  return b;
}

Bits from_string(const std::string& s) {
  Bits b;
  for (char c : s) b.push_back(static_cast<std::uint8_t>(c - '0'));
  return b;
}

MibPayload random_mib(std::mt19937_64& rng) {
  auto u = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  MibPayload m;
  m.sfn = u(0, 1023);
  m.scs_common = static_cast<ScsCommon>(u(0, 1));
  m.ssb_subcarrier_offset = u(0, 31);
  m.dmrs_type_a_pos = static_cast<DmrsTypeAPosition>(u(0, 1));
  m.pdcch_config_sib1 = u(0, 255);
  m.cell_barred = static_cast<CellBarred>(u(0, 1));
  m.intra_freq_reselection = static_cast<IntraFreqReselection>(u(0, 1));
  m.spare = u(0, 1) != 0;
  m.half_frame_bit = u(0, 1) != 0;
  return m;
}

// Remainder of message(x) * x^24 modulo g(x) by schoolbook long division.
Bits crc_by_long_division(const Bits& message) {
  // g(x) coefficients, highest degree first.
  const Bits g = from_string("1101100101011000100010111");
  Bits work(message);
  work.resize(message.size() + 24, 0);
  for (std::size_t i = 0; i < message.size(); ++i) {
    if (!work[i]) continue;
    for (std::size_t j = 0; j < g.size(); ++j) work[i + j] ^= g[j];
  }
  return Bits(work.end() - 24, work.end());
}

// Gold sequence from two 31-bit integer LFSRs clocked 1600 times.
Bits gold_by_registers(std::uint32_t c_init, std::size_t n) {
  std::uint32_t x1 = 1;
  std::uint32_t x2 = c_init & 0x7FFFFFFFU;
  auto step = [&] {
    const std::uint32_t f1 = (x1 ^ (x1 >> 3)) & 1U;
    const std::uint32_t f2 = (x2 ^ (x2 >> 1) ^ (x2 >> 2) ^ (x2 >> 3)) & 1U;
    x1 = (x1 >> 1) | (f1 << 30);
    x2 = (x2 >> 1) | (f2 << 30);
  };
  for (int i = 0; i < 1600; ++i) step();
  Bits out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = static_cast<std::uint8_t>((x1 ^ x2) & 1U);
    step();
  }
  return out;
}

}  // namespace

TEST_CASE("MIB packing") {
  SUBCASE("all-zero fields pack to zero bits") {
    const Bits b = build_mib_payload(MibPayload{});
    CHECK(b.size() == 32);
    CHECK(std::count(b.begin(), b.end(), 1) == 0);
  }
  SUBCASE("sfn = 1 sets only the SFN LSB at bit 27") {
    MibPayload m;
    m.sfn = 1;
    const Bits b = build_mib_payload(m);
    CHECK(std::count(b.begin(), b.end(), 1) == 1);
    CHECK(b[27] == 1);
  }
  SUBCASE("sfn = 512 sets bit 1, k_SSB = 16 sets bit 29") {
    MibPayload m;
    m.sfn = 512;
    m.ssb_subcarrier_offset = 16;
    const Bits b = build_mib_payload(m);
    CHECK(std::count(b.begin(), b.end(), 1) == 2);
    CHECK(b[1] == 1);
    CHECK(b[29] == 1);
  }
  SUBCASE("round trip for 1000 random payloads and all SFNs") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 1000; ++i) {
      const MibPayload m = random_mib(rng);
      CHECK(parse_mib_payload(build_mib_payload(m)) == m);
    }
    for (int sfn = 0; sfn < 1024; ++sfn) {
      MibPayload m;
      m.sfn = sfn;
      REQUIRE(parse_mib_payload(build_mib_payload(m)).sfn == sfn);
    }
  }
  SUBCASE("out-of-range field names the field") {
    MibPayload m;
    m.pdcch_config_sib1 = 256;
    CHECK_THROWS_WITH_AS(build_mib_payload(m), doctest::Contains("pdcch_config_sib1"),
                         std::invalid_argument);
    m = MibPayload{};
    m.sfn = 1024;
    CHECK_THROWS_WITH_AS(build_mib_payload(m), doctest::Contains("sfn"), std::invalid_argument);
  }
  SUBCASE("messageClassExtension is rejected") {
    Bits b(32, 0);
    b[0] = 1;
    CHECK_THROWS_AS(parse_mib_payload(b), std::invalid_argument);
  }
}

TEST_CASE("CRC24C") {
  SUBCASE("zero payload gives zero parity") {
    const Bits block = attach_crc24(Bits(32, 0));
    CHECK(block.size() == 56);
    CHECK(std::all_of(block.begin() + 32, block.end(), [](auto b) { return b == 0; }));
  }
  SUBCASE("matches long division") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 200; ++i) {
      const Bits p = random_bits(rng, 32);
      const Bits block = attach_crc24(p);
      CHECK(Bits(block.begin() + 32, block.end()) == crc_by_long_division(p));
    }
  }
  SUBCASE("every single-bit error is detected") {
    std::mt19937_64 rng(3);
    const Bits block = attach_crc24(random_bits(rng, 32));
    CHECK(crc24_check(block));
    for (int pos = 0; pos < 56; ++pos) {
      Bits bad = block;
      bad[pos] ^= 1;
      CHECK_FALSE(crc24_check(bad));
    }
  }
  SUBCASE("wrong payload length") { CHECK_THROWS_AS(attach_crc24(Bits(31)), std::invalid_argument); }
}

TEST_CASE("Gold sequence matches register oracle") {
  for (std::uint32_t c_init : {0U, 1U, 17U, 1007U, 0x12345U}) {
    CHECK(gold_sequence(c_init, 900) == gold_by_registers(c_init, 900));
  }
  const Bits longer = gold_by_registers(5, 164);
  CHECK(gold_sequence(5, 100, 64) == Bits(longer.begin() + 64, longer.end()));
}

TEST_CASE("polar code parameters") {
  const PolarCode& code = pbch_polar_code();
  CHECK(code.n() == 512);
  CHECK(code.k() == 56);
  CHECK(code.e() == 864);
  CHECK(code.info_positions().size() == 56);
  CHECK(std::count(code.frozen_mask().begin(), code.frozen_mask().end(), 1) == 512 - 56);
  const auto q = polar_reliability_sequence();
  std::vector<int> sorted(q.begin(), q.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> iota(1024);
  std::iota(iota.begin(), iota.end(), 0);
  CHECK(sorted == iota);
  // The most reliable channel is always information.
  CHECK(code.frozen_mask()[511] == 0);
  CHECK(code.frozen_mask()[0] == 1);
}

TEST_CASE("CRC + polar chain matches reference vectors") {
  // Generated with an independent implementation of the downlink polar
  // chain (CRC24C, input interleaving, N = 512, repetition to 864).
  const std::pair<std::string, std::string> vectors[] = {
      {"11111110000110010100100010100111",
       "011000010001000011101111100100011111001001001111010000000011000110000011001100011100111010110000110100110110111010100010000100001010001011010011000001111000100100101100010100101000100100001000001100011000110010010100110101100100000011110010111001011010100010000011111100100010011010101000000011010111001110101000001010010001000010101101101101011111011101100001110100111100010010001001110001000100101001001010110010110101011100010101111001010110101100100110011010110110101111101010011101100011010000000111010010100110000100010000111011111001000111110010010011110100000000110001100000110011000111001110101100001101001101101110101000100001000010100010110100110000011110001001001011000101001010001001000010000011000110001100100101001101011001000000111100101110010110101000100000111111001000100110101010000000110101110011101010000010100100010000101011011011010111110111"},
      {"11111101001011000001101111010000",
       "001001110110111100111001010000101001100100101110010011010000010101111000111111001010110011010111111100110100010011101101011010011110101101011100010000011111011000001010100011100101111111011011010101010001110111111111101101110100101100110000000111100110010110000001001101100010101110011100100111110001101111001010010011100011111101110111100101011101110111011110101001011000101111110000100011011100010101101100000101110011001110000100111001111010111100101101101010011111100110000010010110011110111010111000001111000010011101101111001110010100001010011001001011100100110100000101011110001111110010101100110101111111001101000100111011010110100111101011010111000100000111110110000010101000111001011111110110110101010100011101111111111011011101001011001100000001111001100101100000010011011000101011100111001001111100011011110010100100111000111111011101111001010111011101"},
  };
  for (const auto& [u, c] : vectors) {
    CHECK(pbch_encode(attach_crc24(from_string(u))) == from_string(c));
  }
}

TEST_CASE("pbch_encode / pbch_decode") {
  std::mt19937_64 rng(4);
  SUBCASE("length and noiseless loopback") {
    for (int i = 0; i < 1000; ++i) {
      const Bits b = random_bits(rng, 56);
      const Bits coded = pbch_encode(b);
      REQUIRE(coded.size() == 864);
      REQUIRE(pbch_decode_bits(coded) == b);
    }
  }
  SUBCASE("deterministic") {
    const Bits b = random_bits(rng, 56);
    CHECK(pbch_encode(b) == pbch_encode(b));
  }
  SUBCASE("list decoding agrees on clean input") {
    const Bits b = random_bits(rng, 56);
    const Bits coded = pbch_encode(b);
    std::vector<double> llr(coded.size());
    for (std::size_t i = 0; i < coded.size(); ++i) llr[i] = coded[i] ? -2.0 : 2.0;
    CHECK(pbch_decode(llr, 8, [](const Bits& c) { return crc24_check(c); }) == b);
  }
  SUBCASE("wrong lengths") {
    CHECK_THROWS_AS(pbch_encode(Bits(55)), std::invalid_argument);
    CHECK_THROWS_AS(pbch_decode(std::vector<double>(863)), std::invalid_argument);
  }
}

TEST_CASE("scrambling") {
  std::mt19937_64 rng(5);
  SUBCASE("involution") {
    const Bits b = random_bits(rng, 864);
    const CellIdentity cell(321);
    CHECK(scramble(scramble(b, cell, 2), cell, 2) == b);
    const Bits p = random_bits(rng, 32);
    CHECK(scramble_payload(scramble_payload(p, cell), cell) == p);
  }
  SUBCASE("zero input yields the Gold sequence") {
    for (int v = 0; v < 4; ++v) {
      const Bits s = scramble(Bits(864, 0), CellIdentity(77), v);
      const Bits ref = gold_by_registers(77, 864 * (v + 1));
      CHECK(s == Bits(ref.end() - 864, ref.end()));
    }
  }
  SUBCASE("different cells give different sequences") {
    std::uniform_int_distribution<int> id(0, kMaxCellId);
    for (int i = 0; i < 100; ++i) {
      const int a = id(rng);
      int b = id(rng);
      if (b == a) b = (a + 1) % (kMaxCellId + 1);
      const Bits sa = scramble(Bits(864, 0), CellIdentity(a), 0);
      const Bits sb = scramble(Bits(864, 0), CellIdentity(b), 0);
      int hamming = 0;
      for (int j = 0; j < 864; ++j) hamming += sa[j] != sb[j];
      CHECK(hamming > 0);
    }
  }
  SUBCASE("payload scrambler leaves SFN 2nd/3rd LSB and half-frame bits clear") {
    const PayloadLayout layout = payload_layout({});
    const Bits s = scramble_payload(Bits(32, 0), CellIdentity(500));
    CHECK(s[layout.sfn_2nd_lsb] == 0);
    CHECK(s[layout.sfn_3rd_lsb] == 0);
    CHECK(s[layout.half_frame] == 0);
    CHECK(layout.sfn_3rd_lsb == 6);
    CHECK(layout.sfn_2nd_lsb == 24);
    CHECK(layout.half_frame == 0);
  }
  SUBCASE("payload interleaver is a permutation") {
    const Bits p = random_bits(rng, 32);
    CHECK(deinterleave_payload(interleave_payload(p)) == p);
  }
}

TEST_CASE("QPSK mapping") {
  const CVec s = qpsk_modulate(Bits{0, 0, 1, 1, 0, 1});
  CHECK(s[0].real() == doctest::Approx(0.7071).epsilon(1e-4));
  CHECK(s[0].imag() == doctest::Approx(0.7071).epsilon(1e-4));
  CHECK(s[1] == cf64(-kInvSqrt2, -kInvSqrt2));
  CHECK(s[2] == cf64(kInvSqrt2, -kInvSqrt2));
  std::mt19937_64 rng(6);
  const CVec many = qpsk_modulate(random_bits(rng, 864));
  CHECK(many.size() == 432);
  double energy = 0.0;
  for (const auto& v : many) energy += std::norm(v);
  CHECK(std::abs(energy / 432.0 - 1.0) < 1e-12);
  CHECK_THROWS_AS(qpsk_modulate(Bits(3)), std::invalid_argument);
}

TEST_CASE("synchronisation sequences") {
  std::array<std::vector<double>, 3> pss;
  for (int n = 0; n < 3; ++n) {
    pss[n] = gen_pss(n);
    CHECK(pss[n].size() == 127);
    CHECK(std::all_of(pss[n].begin(), pss[n].end(), [](double v) { return v == 1.0 || v == -1.0; }));
  }
  // Frequency-aligned correlation: the three sequences are cyclic shifts
  // of one m-sequence, so only the aligned product separates them.
  auto corr = [](const std::vector<double>& a, const std::vector<double>& b) {
    return std::abs(std::inner_product(a.begin(), a.end(), b.begin(), 0.0));
  };
  for (int a = 0; a < 3; ++a) {
    CHECK(corr(pss[a], pss[a]) == 127.0);
    for (int b = 0; b < 3; ++b) {
      if (a != b) CHECK(corr(pss[a], pss[a]) > 4.0 * corr(pss[a], pss[b]));
    }
  }
  CHECK_THROWS_AS(gen_pss(3), std::invalid_argument);

  const auto sss = gen_sss(CellIdentity(0));
  CHECK(sss.size() == 127);
  CHECK(std::all_of(sss.begin(), sss.end(), [](double v) { return v == 1.0 || v == -1.0; }));
  CHECK(gen_sss(CellIdentity(3)) != sss);

  const CVec dmrs = gen_dmrs(CellIdentity(123), 0, false);
  CHECK(dmrs.size() == 144);
  for (const auto& v : dmrs) CHECK(std::abs(std::norm(v) - 1.0) < 1e-12);
  CHECK(gen_dmrs(CellIdentity(123), 1, false) != dmrs);
  CHECK(gen_dmrs(CellIdentity(123), 0, true) != dmrs);
  CHECK_THROWS_AS(gen_dmrs(CellIdentity(1), 4, false), std::invalid_argument);
  CHECK_THROWS_AS(CellIdentity(1008), std::invalid_argument);
  CHECK(CellIdentity::from_parts(335, 2).id() == 1007);
}

TEST_CASE("SSB grid mapping") {
  std::mt19937_64 rng(7);
  SUBCASE("mask sizes and partition") {
    for (int id = 0; id < 4; ++id) {
      const CellIdentity cell(id);
      const SsbMask data = pbch_data_mask(cell);
      const SsbMask dmrs = pbch_dmrs_mask(cell);
      CHECK(data.count() == 432);
      CHECK(dmrs.count() == 144);
      CHECK((data & dmrs).none());
      for (int i = 0; i < kSsbRes; ++i) {
        if (dmrs.test(i)) CHECK(i % kSsbSubcarriers % 4 == id);
      }
    }
  }
  SUBCASE("four distinct DMRS patterns") {
    std::set<std::string> patterns;
    for (int id = 0; id < 8; ++id) patterns.insert(pbch_dmrs_mask(CellIdentity(id)).to_string());
    CHECK(patterns.size() == 4);
    CHECK(pbch_dmrs_mask(CellIdentity(1)) != pbch_dmrs_mask(CellIdentity(2)));
    CHECK(pbch_dmrs_mask(CellIdentity(1)) == pbch_dmrs_mask(CellIdentity(5)));
  }
  SUBCASE("map then gather is the identity") {
    const CellIdentity cell(901);
    const CVec data = qpsk_modulate(random_bits(rng, 864));
    const CVec dmrs = gen_dmrs(cell, 0, false);
    const SsbGrid g = map_ssb_grid(data, dmrs, gen_pss(cell.n_id_2()), gen_sss(cell), cell);
    CHECK(gather(g, pbch_data_indices(cell)) == data);
    CHECK(gather(g, pbch_dmrs_indices(cell)) == dmrs);
    const auto pss = gen_pss(cell.n_id_2());
    for (int n = 0; n < 127; ++n) CHECK(g.at(56 + n, 0).real() == pss[n]);
    CHECK(g.at(55, 0) == cf64{});
    CHECK(g.at(183, 2) == cf64{});
  }
  SUBCASE("length mismatch") {
    const CellIdentity cell(1);
    CHECK_THROWS_AS(map_ssb_grid(CVec(431), CVec(144), gen_pss(1), gen_sss(cell), cell),
                    std::invalid_argument);
  }
}

TEST_CASE("OFDM") {
  std::mt19937_64 rng(8);
  const CellIdentity cell(42);
  const OfdmConfig cfg;
  SsbGrid g = make_grid(cell);
  std::normal_distribution<double> n01;
  for (auto& v : g.res) v = cf64(n01(rng), n01(rng));

  const IqFrame f = ofdm_modulate(g, cfg);
  CHECK(f.sample_rate_hz == 256 * 15e3);
  CHECK(f.size() == static_cast<std::size_t>(4 * (256 + 18)));
  const SsbGrid back = ofdm_demodulate(f, 0, cell, 0, cfg);
  double err = 0.0;
  for (int i = 0; i < kSsbRes; ++i) err += std::norm(back.res[i] - g.res[i]);
  CHECK(std::sqrt(err / kSsbRes) < 1e-9);

  const IqFrame zero = ofdm_modulate(make_grid(cell), cfg);
  CHECK(std::all_of(zero.samples.begin(), zero.samples.end(), [](cf64 v) { return v == cf64{}; }));

  CHECK_THROWS_AS(ofdm_modulate(g, OfdmConfig{128, 15e3}), std::invalid_argument);
  CHECK_THROWS_AS(ofdm_demodulate(f, 1, cell, 0, cfg), std::out_of_range);

  const OfdmConfig wide{1024, 15e3};
  const IqFrame fw = ofdm_modulate(g, wide);
  const SsbGrid bw = ofdm_demodulate(fw, 0, cell, 0, wide);
  err = 0.0;
  for (int i = 0; i < kSsbRes; ++i) err += std::norm(bw.res[i] - g.res[i]);
  CHECK(std::sqrt(err / kSsbRes) < 1e-9);
}

TEST_CASE("transmitter is pure") {
  std::mt19937_64 rng(9);
  const MibPayload m = random_mib(rng);
  const auto a = generate_ssb(m, CellIdentity(17));
  const auto b = generate_ssb(m, CellIdentity(17));
  CHECK(a.waveform.samples == b.waveform.samples);
  CHECK(a.pbch.scrambled == b.pbch.scrambled);
  for (const auto& s : a.pbch.symbols) {
    CHECK(std::abs(std::abs(s.real()) - kInvSqrt2) < 1e-15);
    CHECK(std::abs(std::abs(s.imag()) - kInvSqrt2) < 1e-15);
  }
}
