#include "ntn/nn/mlp.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace ntn::nn {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

MlpModel::MlpModel(std::vector<int> dims) : dims_(std::move(dims)) {
  require(dims_.size() >= 2, "MLP needs at least input and output dims");
  for (const int d : dims_) require(d > 0, "MLP dims must be positive");
  for (std::size_t i = 0; i + 1 < dims_.size(); ++i) {
    layers_.push_back({Matrix::Zero(dims_[i + 1], dims_[i]), Vector::Zero(dims_[i + 1])});
  }
}

std::size_t MlpModel::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += static_cast<std::size_t>(l.w.size() + l.b.size());
  return n;
}

void tanh_inplace(Matrix& z) {
  // tanh(z) = 1 - 2 / (exp(2z) + 1); saturates cleanly at +-1.
  z.array() = 1.0 - 2.0 / ((2.0 * z.array()).exp() + 1.0);
}

Matrix tanh_activation(const Matrix& z) {
  Matrix out = z;
  tanh_inplace(out);
  return out;
}

namespace {

Matrix affine(const Layer& l, const Matrix& a) {
  Matrix z(l.w.rows(), a.cols());
  z.noalias() = l.w * a;
  z.colwise() += l.b;
  return z;
}

}  // namespace

Vector MlpModel::forward(const Vector& x) const { return forward_batch(x); }

Matrix MlpModel::forward_batch(const Matrix& x) const {
  require(!layers_.empty(), "forward on an empty model");
  require(x.rows() == input_dim(), "forward: input has " + std::to_string(x.rows()) +
                                       " rows, model expects " + std::to_string(input_dim()));
  require(!x.hasNaN(), "forward: NaN input");
  Matrix a = affine(layers_[0], x);
  for (std::size_t i = 1; i < layers_.size(); ++i) {
    tanh_inplace(a);
    a = affine(layers_[i], a);
  }
  return a;
}

void MlpModel::validate() const {
  require(layers_.size() + 1 == dims_.size(), "MLP layer count does not match dims");
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const auto& l = layers_[i];
    require(l.w.rows() == dims_[i + 1] && l.w.cols() == dims_[i] && l.b.size() == dims_[i + 1],
            "MLP layer " + std::to_string(i) + " has inconsistent shape");
    require(l.w.allFinite() && l.b.allFinite(),
            "MLP layer " + std::to_string(i) + " has non-finite parameters");
  }
}

bool operator==(const MlpModel& a, const MlpModel& b) {
  if (a.dims_ != b.dims_) return false;
  for (std::size_t i = 0; i < a.layers_.size(); ++i) {
    if (a.layers_[i].w != b.layers_[i].w || a.layers_[i].b != b.layers_[i].b) return false;
  }
  return true;
}

MlpModel init_mlp(int d_in, int k, int d_out, std::uint64_t seed) {
  require(d_in > 0 && k > 0 && d_out > 0, "init_mlp: dims must be positive");
  std::vector<int> dims{d_in};
  for (int i = 0; i < kHiddenLayers; ++i) dims.push_back(k);
  dims.push_back(d_out);
  MlpModel m(dims);
  std::mt19937_64 rng(seed);
  for (auto& l : m.layers()) {
    const double limit = std::sqrt(6.0 / static_cast<double>(l.w.rows() + l.w.cols()));
    std::uniform_real_distribution<double> u(-limit, limit);
    // Row-major fill so the draw order does not depend on Eigen's storage.
    for (Eigen::Index r = 0; r < l.w.rows(); ++r)
      for (Eigen::Index c = 0; c < l.w.cols(); ++c) l.w(r, c) = u(rng);
  }
  return m;
}

Gradients backward(const MlpModel& model, const Matrix& x, const Matrix& y) {
  require(x.cols() == y.cols() && x.cols() > 0, "backward: batch size mismatch");
  require(x.rows() == model.input_dim(), "backward: input dim mismatch");
  require(y.rows() == model.output_dim(), "backward: target dim mismatch");
  const auto& layers = model.layers();
  const std::size_t n = layers.size();

  // Forward, keeping every activation (acts[0] = input).
  std::vector<Matrix> acts;
  acts.reserve(n + 1);
  acts.push_back(x);
  for (std::size_t i = 0; i < n; ++i) {
    acts.push_back(affine(layers[i], acts.back()));
    if (i + 1 < n) tanh_inplace(acts.back());
  }

  const double count = static_cast<double>(y.size());
  Matrix delta = acts.back() - y;
  Gradients g;
  g.loss = 0.5 * delta.squaredNorm() / count;
  delta /= count;

  g.layers.resize(n);
  for (std::size_t i = n; i-- > 0;) {
    g.layers[i].w.noalias() = delta * acts[i].transpose();
    g.layers[i].b = delta.rowwise().sum();
    if (i > 0) {
      Matrix back(layers[i].w.cols(), delta.cols());
      back.noalias() = layers[i].w.transpose() * delta;
      back.array() *= 1.0 - acts[i].array().square();
      delta.swap(back);
    }
  }
  return g;
}

double mse(const MlpModel& model, const Matrix& x, const Matrix& y) {
  require(y.rows() == model.output_dim() && x.cols() == y.cols(), "mse: shape mismatch");
  if (x.cols() == 0) return 0.0;
  return (model.forward_batch(x) - y).squaredNorm() / static_cast<double>(y.size());
}

}  // namespace ntn::nn
