#pragma once

#include <cstdint>

#include "ntn/types.hpp"

namespace ntn::tx {

/// Length-31 Gold sequence c(n), n in [offset, offset + length), with
/// Nc = 1600 and x2 initialised from c_init.
Bits gold_sequence(std::uint32_t c_init, std::size_t length, std::size_t offset = 0);

}  // namespace ntn::tx
