#include "ntn/nn/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace ntn::nn {

AdamState::AdamState(const MlpModel& model) {
  for (const auto& l : model.layers()) {
    m.push_back({Matrix::Zero(l.w.rows(), l.w.cols()), Vector::Zero(l.b.size())});
    v.push_back({Matrix::Zero(l.w.rows(), l.w.cols()), Vector::Zero(l.b.size())});
  }
}

namespace {

template <typename P, typename G>
void update(P& param, const G& grad, P& m, P& v, double b1, double b2, double step, double eps,
            double bc2) {
  m = b1 * m + (1.0 - b1) * grad;
  v = b2 * v + (1.0 - b2) * grad.cwiseAbs2();
  param.array() -= step * m.array() / ((v.array() / bc2).sqrt() + eps);
}

}  // namespace

void adam_step(MlpModel& model, const Gradients& grads, AdamState& state, const AdamConfig& cfg) {
  auto& layers = model.layers();
  if (grads.layers.size() != layers.size() || state.m.size() != layers.size()) {
    throw std::invalid_argument("adam_step: gradient/state shape mismatch");
  }
  state.t += 1;
  const double t = static_cast<double>(state.t);
  const double bc1 = 1.0 - std::pow(cfg.beta1, t);
  const double bc2 = 1.0 - std::pow(cfg.beta2, t);
  const double step = cfg.learning_rate / bc1;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (grads.layers[i].w.rows() != layers[i].w.rows() ||
        grads.layers[i].w.cols() != layers[i].w.cols()) {
      throw std::invalid_argument("adam_step: gradient shape mismatch");
    }
    update(layers[i].w, grads.layers[i].w, state.m[i].w, state.v[i].w, cfg.beta1, cfg.beta2, step,
           cfg.eps, bc2);
    update(layers[i].b, grads.layers[i].b, state.m[i].b, state.v[i].b, cfg.beta1, cfg.beta2, step,
           cfg.eps, bc2);
  }
}

}  // namespace ntn::nn
