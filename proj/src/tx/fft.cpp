#include "ntn/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace ntn {
namespace {

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

fftw_plan plan_for(int n, bool inverse) {
  static std::mutex mu;
  static std::map<std::pair<int, bool>, Plan> cache;
  std::lock_guard lock(mu);
  auto it = cache.find({n, inverse});
  if (it != cache.end()) return it->second.get();
  CVec scratch(static_cast<std::size_t>(n));
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan p = fftw_plan_dft_1d(n, buf, buf, inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(std::make_pair(n, inverse), Plan(p));
  return p;
}

}  // namespace

void fft_inplace(std::span<cf64> data, bool inverse) {
  if (data.empty()) return;
  const int n = static_cast<int>(data.size());
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan_for(n, inverse), buf, buf);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& v : data) v *= scale;
}

}  // namespace ntn
