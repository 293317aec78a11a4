#pragma once

#include <optional>

#include "ntn/models/layout.hpp"

namespace ntn::models {

struct ModelConfig {
  std::optional<RowLayout> layout;  // default_layout(stage) when empty
  int hidden_width = 0;             // default_hidden_width(layout) when 0
};

/// An MLP with everything needed to apply it and to trace where it came from.
struct TrainedModel {
  nn::MlpModel mlp;
  DatasetStage stage = DatasetStage::post_mmse;
  RowLayout layout = RowLayout::symbol;
  std::string scheme;              // per_snr | snr_range | fixed_20db | custom
  std::vector<double> train_snrs;  // distinct SNR tags of the training data
  std::uint64_t seed = 0;
  nn::TrainConfig train_config;
  nn::LearningCurve curve;
};

/// Initialises (seeded from cfg.seed) and trains one model.
TrainedModel train_model(const SymbolDataset& ds, const ModelConfig& mc, const nn::TrainConfig& cfg,
                         const SymbolDataset* validation = nullptr,
                         const nn::EpochCallback& on_epoch = {});

/// Network output for one example, as 432 symbols.
CVec apply_model(const TrainedModel& model, std::span<const double> input, int cell_id);

enum class SchemeMode { per_snr, snr_range, fixed_20db };
std::string to_string(SchemeMode m);
SchemeMode parse_scheme(const std::string& s);

struct TrainScheme {
  SchemeMode mode = SchemeMode::per_snr;
  std::vector<double> snr_grid = kDefaultSnrGrid;
};

/// SNRs for which a scheme needs its own dataset; snr_range needs one
/// dataset pooled over the whole grid.
std::vector<std::vector<double>> scheme_dataset_grids(const TrainScheme& scheme);

/// per_snr: one model per grid point; snr_range: one model on the dataset
/// covering the grid; fixed_20db: one model on the 20 dB dataset.
std::vector<TrainedModel> train_scheme(const std::vector<SymbolDataset>& datasets,
                                       const TrainScheme& scheme, const ModelConfig& mc,
                                       const nn::TrainConfig& cfg,
                                       const nn::EpochCallback& on_epoch = {});

}  // namespace ntn::models
