#include "ntn/models/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ntn/models/realify.hpp"

namespace ntn::models {

std::string to_string(DatasetStage s) { return s == DatasetStage::post_mmse ? "post_mmse" : "post_sync"; }
std::string to_string(Origin o) { return o == Origin::synthetic ? "synthetic" : "captured"; }

DatasetStage parse_stage(const std::string& s) {
  if (s == "post_mmse") return DatasetStage::post_mmse;
  if (s == "post_sync") return DatasetStage::post_sync;
  throw std::invalid_argument("unknown stage '" + s + "' (post_mmse | post_sync)");
}

Origin parse_origin(const std::string& s) {
  if (s == "synthetic") return Origin::synthetic;
  if (s == "captured") return Origin::captured;
  throw std::invalid_argument("unknown origin '" + s + "' (synthetic | captured)");
}

int stage_input_dim(DatasetStage s) {
  return s == DatasetStage::post_mmse ? 2 * kPbchDataRes : 2 * kPbchRes;
}

std::span<const double> SymbolDataset::input(std::size_t i) const {
  return std::span<const double>(inputs).subspan(i * input_dim, input_dim);
}

std::span<const double> SymbolDataset::target(std::size_t i) const {
  return std::span<const double>(targets).subspan(i * target_dim, target_dim);
}

void SymbolDataset::append(std::span<const double> in, std::span<const double> tgt,
                           const ExampleMeta& m) {
  if (static_cast<int>(in.size()) != input_dim || static_cast<int>(tgt.size()) != target_dim) {
    throw std::invalid_argument("SymbolDataset::append: dims " + std::to_string(in.size()) + "/" +
                                std::to_string(tgt.size()) + " do not match " +
                                std::to_string(input_dim) + "/" + std::to_string(target_dim));
  }
  inputs.insert(inputs.end(), in.begin(), in.end());
  targets.insert(targets.end(), tgt.begin(), tgt.end());
  meta.push_back(m);
}

void SymbolDataset::validate() const {
  if (input_dim != stage_input_dim(stage) || target_dim != kTargetDim)
    throw std::invalid_argument("dataset dims " + std::to_string(input_dim) + "/" +
                                std::to_string(target_dim) + " do not match stage " +
                                to_string(stage));
  if (inputs.size() != meta.size() * input_dim || targets.size() != meta.size() * target_dim)
    throw std::invalid_argument("dataset blob sizes do not match the example count");
}

std::vector<double> SymbolDataset::distinct_snrs() const {
  std::vector<double> s;
  for (const auto& m : meta) s.push_back(m.snr_db);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

std::vector<double> stage_input(const rx::ReceivedBurst& burst, DatasetStage stage) {
  if (stage == DatasetStage::post_mmse) return realify(burst.post_mmse.symbols);
  std::vector<double> in = realify(burst.post_sync.symbols);
  const auto idx = tx::pbch_dmrs_indices(burst.cell);
  CVec pilots(idx.size());
  for (std::size_t p = 0; p < idx.size(); ++p) pilots[p] = burst.grid.res[idx[p]] * std::conj(burst.dmrs[p]);
  const auto tail = realify(pilots);
  in.insert(in.end(), tail.begin(), tail.end());
  return in;
}

std::uint64_t example_seed(std::uint64_t seed, std::size_t index, int attempt) {
  return sub_seed(seed, 0xDA7A0000ULL + static_cast<std::uint64_t>(attempt), index);
}

SymbolDataset build_synthetic_dataset(const DatasetSpec& spec) {
  if (spec.n_examples <= 0) throw std::invalid_argument("n_examples must be positive");
  if (spec.snr_grid.empty()) throw std::invalid_argument("empty SNR grid");
  SymbolDataset ds;
  ds.stage = spec.stage;
  ds.origin = Origin::synthetic;
  ds.input_dim = stage_input_dim(spec.stage);
  ds.seed = spec.seed;
  ds.inputs.reserve(static_cast<std::size_t>(spec.n_examples) * ds.input_dim);
  ds.targets.reserve(static_cast<std::size_t>(spec.n_examples) * ds.target_dim);

  for (int i = 0; i < spec.n_examples; ++i) {
    const double snr = spec.snr_grid[static_cast<std::size_t>(i) % spec.snr_grid.size()];
    for (int attempt = 0;; ++attempt) {
      if (attempt > spec.max_redraws) {
        throw std::runtime_error("example " + std::to_string(i) + " failed to synchronise " +
                                 std::to_string(attempt) + " times at " + std::to_string(snr) +
                                 " dB");
      }
      const std::uint64_t s = example_seed(spec.seed, static_cast<std::size_t>(i), attempt);
      const SimulatedBurst b = simulate_burst(s, snr, spec.burst);
      if (!b.synced()) {
        ++ds.redraws;
        continue;
      }
      ds.append(stage_input(*b.rx, spec.stage), realify(b.tx.pbch.symbols),
                {snr, s, b.tx.cell.id(), b.rx->dmrs_hypothesis.issb, b.profile});
      break;
    }
  }
  return ds;
}

}  // namespace ntn::models
