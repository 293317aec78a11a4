#pragma once

#include "ntn/types.hpp"

namespace ntn::models {

/// [re0, im0, re1, im1, ...]
std::vector<double> realify(std::span<const cf64> symbols);

/// Inverse of realify; throws on odd length.
CVec complexify(std::span<const double> values);

}  // namespace ntn::models
