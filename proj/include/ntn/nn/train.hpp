#pragma once

#include <functional>

#include "ntn/nn/adam.hpp"

namespace ntn::nn {

/// Training rows, column-major. An example may span several consecutive
/// columns (rows_per_example); shuffling, splitting and batching work on
/// whole examples.
struct TrainData {
  Matrix inputs;   // d_in x rows
  Matrix targets;  // d_out x rows
  int rows_per_example = 1;

  Eigen::Index rows() const { return inputs.cols(); }
  Eigen::Index examples() const { return rows_per_example > 0 ? rows() / rows_per_example : 0; }
  void validate() const;

  /// Columns of the listed examples, in the given order.
  TrainData select(const std::vector<Eigen::Index>& example_ids) const;
};

struct TrainConfig {
  double learning_rate = 1e-3;
  int batch_size = 50;  // examples per mini-batch
  int epochs = 40;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  std::uint64_t seed = 0;
  double validation_fraction = 0.1;  // ignored when a validation set is passed

  void validate() const;
};

struct LearningCurve {
  double initial_train_mse = 0.0;
  double initial_val_mse = 0.0;
  std::vector<double> train_mse;  // mean over the epoch's mini-batches, before each update
  std::vector<double> val_mse;    // after each epoch
};

/// Seeded 90/10-style split of example indices: (train, validation).
std::pair<std::vector<Eigen::Index>, std::vector<Eigen::Index>> split_examples(
    Eigen::Index examples, double validation_fraction, std::uint64_t seed);

using EpochCallback = std::function<void(int epoch, double train_mse, double val_mse)>;

/// Mini-batch Adam on 1/2 * MSE. Without an explicit validation set the data
/// are split by cfg.validation_fraction. Throws if a parameter becomes
/// non-finite.
LearningCurve train(MlpModel& model, const TrainData& data, const TrainConfig& cfg,
                    const TrainData* validation = nullptr, const EpochCallback& on_epoch = {});

}  // namespace ntn::nn
