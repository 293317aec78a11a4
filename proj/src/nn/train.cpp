#include "ntn/nn/train.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace ntn::nn {

void TrainData::validate() const {
  if (rows_per_example <= 0) throw std::invalid_argument("rows_per_example must be positive");
  if (inputs.cols() != targets.cols())
    throw std::invalid_argument("TrainData: inputs and targets differ in row count");
  if (inputs.cols() % rows_per_example != 0)
    throw std::invalid_argument("TrainData: row count is not a multiple of rows_per_example");
}

TrainData TrainData::select(const std::vector<Eigen::Index>& example_ids) const {
  const Eigen::Index r = rows_per_example;
  TrainData out;
  out.rows_per_example = rows_per_example;
  out.inputs.resize(inputs.rows(), static_cast<Eigen::Index>(example_ids.size()) * r);
  out.targets.resize(targets.rows(), static_cast<Eigen::Index>(example_ids.size()) * r);
  for (std::size_t i = 0; i < example_ids.size(); ++i) {
    const Eigen::Index dst = static_cast<Eigen::Index>(i) * r;
    const Eigen::Index src = example_ids[i] * r;
    out.inputs.middleCols(dst, r) = inputs.middleCols(src, r);
    out.targets.middleCols(dst, r) = targets.middleCols(src, r);
  }
  return out;
}

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0) || batch_size <= 0 || epochs <= 0 || !(adam_eps > 0.0) ||
      !(adam_beta1 > 0.0 && adam_beta1 < 1.0) || !(adam_beta2 > 0.0 && adam_beta2 < 1.0)) {
    throw std::invalid_argument("TrainConfig: parameters must be positive (betas in (0,1))");
  }
  if (!(validation_fraction >= 0.0 && validation_fraction < 1.0))
    throw std::invalid_argument("TrainConfig: validation_fraction outside [0,1)");
}

std::pair<std::vector<Eigen::Index>, std::vector<Eigen::Index>> split_examples(
    Eigen::Index examples, double validation_fraction, std::uint64_t seed) {
  std::vector<Eigen::Index> ids(static_cast<std::size_t>(examples));
  std::iota(ids.begin(), ids.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(ids.begin(), ids.end(), rng);
  const auto n_val = static_cast<std::size_t>(std::llround(validation_fraction * examples));
  std::vector<Eigen::Index> val(ids.begin(), ids.begin() + static_cast<long>(n_val));
  std::vector<Eigen::Index> tr(ids.begin() + static_cast<long>(n_val), ids.end());
  std::sort(val.begin(), val.end());
  std::sort(tr.begin(), tr.end());
  return {tr, val};
}

LearningCurve train(MlpModel& model, const TrainData& data, const TrainConfig& cfg,
                    const TrainData* validation, const EpochCallback& on_epoch) {
  cfg.validate();
  data.validate();
  model.validate();
  if (data.examples() == 0) throw std::invalid_argument("train: empty dataset");
  if (data.inputs.rows() != model.input_dim() || data.targets.rows() != model.output_dim()) {
    throw std::invalid_argument("train: dataset dims (" + std::to_string(data.inputs.rows()) +
                                ", " + std::to_string(data.targets.rows()) +
                                ") do not match the model");
  }

  TrainData train_set;
  TrainData val_set;
  if (validation != nullptr) {
    validation->validate();
    train_set = data;
    val_set = *validation;
  } else {
    const auto [tr, va] = split_examples(data.examples(), cfg.validation_fraction,
                                         cfg.seed ^ 0x5EEDULL);
    train_set = data.select(tr);
    val_set = data.select(va);
  }
  if (train_set.examples() == 0) throw std::invalid_argument("train: no training examples");

  auto val_mse = [&] {
    return val_set.rows() > 0 ? mse(model, val_set.inputs, val_set.targets) : 0.0;
  };

  LearningCurve curve;
  curve.initial_train_mse = mse(model, train_set.inputs, train_set.targets);
  curve.initial_val_mse = val_mse();

  const AdamConfig adam{cfg.learning_rate, cfg.adam_beta1, cfg.adam_beta2, cfg.adam_eps};
  AdamState state(model);
  std::mt19937_64 rng(cfg.seed);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(train_set.examples()));
  std::iota(order.begin(), order.end(), 0);

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + static_cast<std::size_t>(cfg.batch_size));
      const TrainData batch = train_set.select(
          std::vector<Eigen::Index>(order.begin() + static_cast<long>(start),
                                    order.begin() + static_cast<long>(end)));
      const Gradients g = backward(model, batch.inputs, batch.targets);
      loss_sum += 2.0 * g.loss * static_cast<double>(batch.targets.size());
      adam_step(model, g, state, adam);
    }
    try {
      model.validate();
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error("training diverged in epoch " + std::to_string(epoch + 1) + ": " +
                               e.what());
    }
    curve.train_mse.push_back(loss_sum / static_cast<double>(train_set.targets.size()));
    curve.val_mse.push_back(val_mse());
    if (on_epoch) on_epoch(epoch + 1, curve.train_mse.back(), curve.val_mse.back());
  }
  return curve;
}

}  // namespace ntn::nn
