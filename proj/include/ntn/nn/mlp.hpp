#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace ntn::nn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct Layer {
  Matrix w;  // out x in
  Vector b;  // out
};

/// Fully connected network: tanh on every hidden layer, linear output.
/// Batches are column-major: one column per sample.
class MlpModel {
 public:
  MlpModel() = default;
  /// Zero-initialised layers for dims [d_in, h1, ..., d_out].
  explicit MlpModel(std::vector<int> dims);

  const std::vector<int>& dims() const { return dims_; }
  int input_dim() const { return dims_.front(); }
  int output_dim() const { return dims_.back(); }
  int hidden_width() const { return dims_.size() > 2 ? dims_[1] : 0; }
  std::size_t parameter_count() const;

  std::vector<Layer>& layers() { return layers_; }
  const std::vector<Layer>& layers() const { return layers_; }

  Vector forward(const Vector& x) const;
  Matrix forward_batch(const Matrix& x) const;

  /// Throws if any weight or bias is not finite or shapes disagree.
  void validate() const;

  friend bool operator==(const MlpModel& a, const MlpModel& b);

 private:
  std::vector<int> dims_;
  std::vector<Layer> layers_;
};

inline constexpr int kHiddenLayers = 3;

/// [d_in, k, k, k, d_out] with Xavier-uniform weights and zero biases.
MlpModel init_mlp(int d_in, int k, int d_out, std::uint64_t seed);

/// Elementwise tanh through the exp identity, which Eigen vectorises.
Matrix tanh_activation(const Matrix& z);
void tanh_inplace(Matrix& z);

struct Gradients {
  std::vector<Layer> layers;
  double loss = 0.0;  // 1/2 * mean squared error over batch and outputs
};

/// Gradients of 1/2 * mean((forward(x) - y)^2) for a batch.
Gradients backward(const MlpModel& model, const Matrix& x, const Matrix& y);

/// Mean squared error over all samples and outputs (no 1/2 factor).
double mse(const MlpModel& model, const Matrix& x, const Matrix& y);

}  // namespace ntn::nn
