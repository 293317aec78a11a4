#pragma once

#include "ntn/tx/cell.hpp"
#include "ntn/types.hpp"

namespace ntn::tx {

/// BPSK m-sequence, entries in {+1, -1}.
std::vector<double> gen_pss(int n_id_2);

/// Product of two cyclically shifted m-sequences, entries in {+1, -1}.
std::vector<double> gen_sss(CellIdentity cell);

/// PBCH DMRS, 144 unit-power QPSK values. For l_max 4 the sequence is
/// indexed by issb + 4 * half_frame.
CVec gen_dmrs(CellIdentity cell, int issb, bool half_frame, int l_max = 4);

}  // namespace ntn::tx
