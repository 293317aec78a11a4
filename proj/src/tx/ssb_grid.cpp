#include "ntn/tx/ssb_grid.hpp"

#include <stdexcept>
#include <string>

namespace ntn::tx {
namespace {

void require(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw std::invalid_argument(std::string(what) + " length " + std::to_string(got) +
                                ", expected " + std::to_string(want));
  }
}

}  // namespace

bool is_pbch_re(int k, int l) {
  if (l == 1 || l == 3) return true;
  if (l == 2) return k < 48 || k >= 192;
  return false;
}

SsbMask pbch_dmrs_mask(CellIdentity cell) {
  SsbMask m;
  for (int l = 1; l < kSsbSymbols; ++l) {
    for (int k = cell.dmrs_shift(); k < kSsbSubcarriers; k += 4) {
      if (is_pbch_re(k, l)) m.set(re_index(k, l));
    }
  }
  return m;
}

SsbMask pbch_data_mask(CellIdentity cell) {
  SsbMask m;
  for (int l = 1; l < kSsbSymbols; ++l) {
    for (int k = 0; k < kSsbSubcarriers; ++k) {
      if (is_pbch_re(k, l)) m.set(re_index(k, l));
    }
  }
  return m & ~pbch_dmrs_mask(cell);
}

namespace {
std::vector<int> indices_of(const SsbMask& m) {
  std::vector<int> out;
  for (int i = 0; i < kSsbRes; ++i) {
    if (m.test(i)) out.push_back(i);
  }
  return out;
}
}  // namespace

std::vector<int> pbch_data_indices(CellIdentity cell) { return indices_of(pbch_data_mask(cell)); }
std::vector<int> pbch_dmrs_indices(CellIdentity cell) { return indices_of(pbch_dmrs_mask(cell)); }

std::vector<int> pbch_re_indices(CellIdentity cell) {
  auto idx = pbch_data_indices(cell);
  const auto dmrs = pbch_dmrs_indices(cell);
  idx.insert(idx.end(), dmrs.begin(), dmrs.end());
  return idx;
}

SsbGrid make_grid(CellIdentity cell, int issb) {
  SsbGrid g;
  g.issb = issb;
  g.dmrs_mask = pbch_dmrs_mask(cell);
  g.data_mask = pbch_data_mask(cell);
  return g;
}

SsbGrid map_ssb_grid(std::span<const cf64> symbols432, std::span<const cf64> dmrs144,
                     std::span<const double> pss127, std::span<const double> sss127,
                     CellIdentity cell, int issb) {
  require(symbols432.size(), kPbchDataRes, "PBCH symbol vector");
  require(dmrs144.size(), kPbchDmrsRes, "DMRS vector");
  require(pss127.size(), kSyncSeqLen, "PSS");
  require(sss127.size(), kSyncSeqLen, "SSS");
  SsbGrid g = make_grid(cell, issb);
  for (int n = 0; n < kSyncSeqLen; ++n) {
    g.at(kSyncFirstSubcarrier + n, 0) = pss127[n];
    g.at(kSyncFirstSubcarrier + n, 2) = sss127[n];
  }
  std::size_t d = 0;
  std::size_t p = 0;
  for (int i = 0; i < kSsbRes; ++i) {
    if (g.data_mask.test(i)) g.res[i] = symbols432[d++];
    if (g.dmrs_mask.test(i)) g.res[i] = dmrs144[p++];
  }
  return g;
}

CVec gather(const SsbGrid& grid, std::span<const int> indices) {
  CVec out;
  out.reserve(indices.size());
  for (const int i : indices) out.push_back(grid.res[i]);
  return out;
}

}  // namespace ntn::tx
