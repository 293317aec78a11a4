#pragma once

#include "ntn/types.hpp"

namespace ntn {

/// Unitary DFT (scaled by 1/sqrt(n)) of any length, backed by FFTW.
/// Plans are cached per (length, direction); execution is re-entrant.
void fft_inplace(std::span<cf64> data, bool inverse);

inline CVec fft(CVec x) {
  fft_inplace(x, false);
  return x;
}
inline CVec ifft(CVec x) {
  fft_inplace(x, true);
  return x;
}

}  // namespace ntn
