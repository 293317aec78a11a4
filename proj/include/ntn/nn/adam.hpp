#pragma once

#include "ntn/nn/mlp.hpp"

namespace ntn::nn {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  std::vector<Layer> m;
  std::vector<Layer> v;
  long t = 0;

  AdamState() = default;
  explicit AdamState(const MlpModel& model);
};

/// One bias-corrected Adam update of every parameter.
void adam_step(MlpModel& model, const Gradients& grads, AdamState& state,
               const AdamConfig& cfg = {});

}  // namespace ntn::nn
