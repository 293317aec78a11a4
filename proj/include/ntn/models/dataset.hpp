#pragma once

#include <optional>
#include <string>

#include "ntn/models/burst.hpp"

namespace ntn::models {

/// post_mmse feeds the Symbol Enhancement NN, post_sync the Equalization NN.
enum class DatasetStage { post_mmse, post_sync };
enum class Origin { synthetic, captured };

std::string to_string(DatasetStage s);
std::string to_string(Origin o);
DatasetStage parse_stage(const std::string& s);
Origin parse_origin(const std::string& s);

/// 864 for post_mmse; 1152 for post_sync (432 data REs then 144 DMRS REs).
int stage_input_dim(DatasetStage s);
inline constexpr int kTargetDim = 2 * kPbchDataRes;

inline const std::vector<double> kDefaultSnrGrid = {0, 2, 5, 7, 10, 15, 20};

struct ExampleMeta {
  double snr_db = 0.0;
  std::uint64_t seed = 0;
  int cell_id = 0;
  int issb = 0;
  std::optional<channel::ChannelProfile> profile;  // synthetic only
};

/// Examples stored row-major: inputs[i * input_dim + j].
struct SymbolDataset {
  DatasetStage stage = DatasetStage::post_mmse;
  Origin origin = Origin::synthetic;
  int input_dim = 864;
  int target_dim = kTargetDim;
  std::vector<double> inputs;
  std::vector<double> targets;
  std::vector<ExampleMeta> meta;
  std::uint64_t seed = 0;
  long redraws = 0;   // synthetic: examples re-drawn after a sync failure
  long rejected = 0;  // captured: bursts dropped by the CRC gate

  std::size_t size() const { return meta.size(); }
  std::span<const double> input(std::size_t i) const;
  std::span<const double> target(std::size_t i) const;
  void append(std::span<const double> in, std::span<const double> tgt, const ExampleMeta& m);
  void validate() const;
  std::vector<double> distinct_snrs() const;
};

/// Network input for one received burst. The DMRS REs of the post_sync
/// stage are multiplied by the conjugate of the known pilot sequence.
std::vector<double> stage_input(const rx::ReceivedBurst& burst, DatasetStage stage);

struct DatasetSpec {
  DatasetStage stage = DatasetStage::post_mmse;
  std::vector<double> snr_grid = {20.0};  // examples cycle through the grid
  int n_examples = 3024;
  std::uint64_t seed = 0;
  BurstConfig burst;
  int max_redraws = 1000;  // per example
};

/// Random MIB and cell per example; target = transmitted 432 QPSK symbols.
/// Bursts the receiver cannot synchronise are re-drawn and counted.
SymbolDataset build_synthetic_dataset(const DatasetSpec& spec);

/// Seed of attempt `attempt` of example `index`.
std::uint64_t example_seed(std::uint64_t seed, std::size_t index, int attempt);

}  // namespace ntn::models
