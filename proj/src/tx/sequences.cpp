#include "ntn/tx/sequences.hpp"

#include <array>
#include <stdexcept>
#include <string>

#include "ntn/tx/gold.hpp"

namespace ntn::tx {
namespace {

template <typename Recurrence>
std::array<std::uint8_t, kSyncSeqLen> m_sequence(std::array<std::uint8_t, 7> init,
                                                 Recurrence next) {
  std::array<std::uint8_t, kSyncSeqLen> x{};
  for (int i = 0; i < 7; ++i) x[i] = init[i];
  for (int i = 0; i + 7 < kSyncSeqLen; ++i) x[i + 7] = next(x, i);
  return x;
}

}  // namespace

std::vector<double> gen_pss(int n_id_2) {
  if (n_id_2 < 0 || n_id_2 > 2) {
    throw std::invalid_argument("n_id_2 out of range: " + std::to_string(n_id_2));
  }
  // x(0..6) = 0 1 1 0 1 1 1
  const auto x = m_sequence({0, 1, 1, 0, 1, 1, 1},
                            [](const auto& s, int i) { return s[i + 4] ^ s[i]; });
  std::vector<double> d(kSyncSeqLen);
  for (int n = 0; n < kSyncSeqLen; ++n) d[n] = 1.0 - 2.0 * x[(n + 43 * n_id_2) % kSyncSeqLen];
  return d;
}

std::vector<double> gen_sss(CellIdentity cell) {
  const auto x0 = m_sequence({1, 0, 0, 0, 0, 0, 0},
                             [](const auto& s, int i) { return s[i + 4] ^ s[i]; });
  const auto x1 = m_sequence({1, 0, 0, 0, 0, 0, 0},
                             [](const auto& s, int i) { return s[i + 1] ^ s[i]; });
  const int n1 = cell.n_id_1();
  const int n2 = cell.n_id_2();
  const int m0 = 15 * (n1 / 112) + 5 * n2;
  const int m1 = n1 % 112;
  std::vector<double> d(kSyncSeqLen);
  for (int n = 0; n < kSyncSeqLen; ++n) {
    d[n] = (1.0 - 2.0 * x0[(n + m0) % kSyncSeqLen]) * (1.0 - 2.0 * x1[(n + m1) % kSyncSeqLen]);
  }
  return d;
}

CVec gen_dmrs(CellIdentity cell, int issb, bool half_frame, int l_max) {
  if (issb < 0 || issb >= l_max) {
    throw std::invalid_argument("SSB index out of range: " + std::to_string(issb));
  }
  const int issb_bar = l_max == 4 ? issb + 4 * (half_frame ? 1 : 0) : issb & 0x7;
  const auto c_init = static_cast<std::uint32_t>(
      (1U << 11) * static_cast<unsigned>(issb_bar + 1) * static_cast<unsigned>(cell.id() / 4 + 1) +
      (1U << 6) * static_cast<unsigned>(issb_bar + 1) + static_cast<unsigned>(cell.id() % 4));
  const Bits c = gold_sequence(c_init, 2 * kPbchDmrsRes);
  CVec r(kPbchDmrsRes);
  for (int m = 0; m < kPbchDmrsRes; ++m) {
    r[m] = cf64((1.0 - 2.0 * c[2 * m]) * kInvSqrt2, (1.0 - 2.0 * c[2 * m + 1]) * kInvSqrt2);
  }
  return r;
}

}  // namespace ntn::tx
