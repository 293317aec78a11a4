#pragma once

#include <bitset>

#include "ntn/tx/cell.hpp"
#include "ntn/types.hpp"

namespace ntn::tx {

using SsbMask = std::bitset<kSsbRes>;

/// RE index of subcarrier k (0..239) in SSB symbol l (0..3).
constexpr int re_index(int k, int l) { return l * kSsbSubcarriers + k; }

inline constexpr int kSyncFirstSubcarrier = 56;

/// 240 x 4 SSB resource grid with the PBCH data/DMRS masks of its cell.
struct SsbGrid {
  CVec res = CVec(kSsbRes);
  int issb = 0;
  SsbMask dmrs_mask;
  SsbMask data_mask;

  cf64& at(int k, int l) { return res[re_index(k, l)]; }
  const cf64& at(int k, int l) const { return res[re_index(k, l)]; }
};

bool is_pbch_re(int k, int l);
SsbMask pbch_dmrs_mask(CellIdentity cell);
SsbMask pbch_data_mask(CellIdentity cell);

/// RE indices in mapping order (subcarrier first, then symbol).
std::vector<int> pbch_data_indices(CellIdentity cell);
std::vector<int> pbch_dmrs_indices(CellIdentity cell);
/// The 576 PBCH REs: the 432 data REs followed by the 144 DMRS REs.
std::vector<int> pbch_re_indices(CellIdentity cell);

SsbGrid map_ssb_grid(std::span<const cf64> symbols432, std::span<const cf64> dmrs144,
                     std::span<const double> pss127, std::span<const double> sss127,
                     CellIdentity cell, int issb = 0);

/// Empty grid carrying only the masks of `cell`.
SsbGrid make_grid(CellIdentity cell, int issb = 0);

CVec gather(const SsbGrid& grid, std::span<const int> indices);

}  // namespace ntn::tx
