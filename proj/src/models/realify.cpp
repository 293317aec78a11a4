#include "ntn/models/realify.hpp"

#include <stdexcept>
#include <string>

namespace ntn::models {

std::vector<double> realify(std::span<const cf64> symbols) {
  std::vector<double> out(2 * symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    out[2 * i] = symbols[i].real();
    out[2 * i + 1] = symbols[i].imag();
  }
  return out;
}

CVec complexify(std::span<const double> values) {
  if (values.size() % 2 != 0) {
    throw std::invalid_argument("complexify: odd length " + std::to_string(values.size()));
  }
  CVec out(values.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = cf64(values[2 * i], values[2 * i + 1]);
  return out;
}

}  // namespace ntn::models
