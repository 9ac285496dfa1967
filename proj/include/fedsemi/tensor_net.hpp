#pragma once

#include <cstdint>
#include <vector>

#include "fedsemi/rng.hpp"

namespace fedsemi {

using Vec = std::vector<double>;

// Row-major dense matrix. For batches, rows are samples.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  Vec a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

  double& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
  const double* row(std::size_t r) const { return a.data() + r * cols; }
  double* row(std::size_t r) { return a.data() + r * cols; }

  static Matrix from_rows(const std::vector<Vec>& rows_in);
  Vec row_vec(std::size_t r) const { return Vec(row(r), row(r) + cols); }
};

// Dense ReLU network shape: layer_dims = [input, hidden..., classes].
// Layers [0, encoder_split) form the encoder; the rest are the head, with
// the final layer emitting pre-softmax logits (no activation).
struct Architecture {
  std::vector<int> layer_dims;
  int encoder_split = 0;

  Architecture() = default;
  Architecture(std::vector<int> dims, int split) : layer_dims(std::move(dims)), encoder_split(split) {}

  // Default split: head = final linear layer only.
  static Architecture with_default_split(std::vector<int> dims);

  int layer_count() const { return static_cast<int>(layer_dims.size()) - 1; }
  int input_dim() const { return layer_dims.front(); }
  int class_count() const { return layer_dims.back(); }
  int feature_dim() const { return layer_dims[encoder_split]; }

  void validate() const;  // throws ConfigError
  bool operator==(const Architecture&) const = default;
};

struct ModelParams {
  Architecture arch;
  std::vector<Matrix> weights;  // weights[l] is (out x in) for layer l
  std::vector<Vec> biases;

  std::size_t param_count() const;
  bool is_finite() const;
  bool operator==(const ModelParams&) const = default;
};

// Same shape family as ModelParams; per-parameter partials of a scalar loss.
struct Gradient {
  std::vector<Matrix> weights;
  std::vector<Vec> biases;

  static Gradient zeros_like(const ModelParams& p);
  bool is_finite() const;
  void scaled_add(const Gradient& other, double scale);
};

struct ForwardResult {
  Matrix features;  // activations at the encoder boundary
  Matrix logits;    // final-layer pre-softmax outputs
};

struct LossGrad {
  double loss = 0.0;
  Gradient grad;
};

// Kaiming-normal weights (std = sqrt(2 / fan_in)), zero biases. Identical
// (arch, seed) pairs reproduce bit-identical parameters.
ModelParams init_params(const Architecture& arch, std::uint64_t seed);

ForwardResult forward(const ModelParams& params, const Matrix& inputs);

// Encoder part only; equals forward(...).features.
Matrix encoder_forward(const ModelParams& params, const Matrix& inputs);

// Mean masked softmax cross-entropy and its exact gradient. class_offsets
// (empty = none) are added to the logits inside the loss only. All samples
// masked yields loss 0 and a zero gradient.
LossGrad loss_and_grad(const ModelParams& params, const Matrix& inputs,
                       const std::vector<int>& targets,
                       const std::vector<std::uint8_t>& sample_mask,
                       const Vec& class_offsets = {});

// params' = params - lr * (grad + weight_decay * params). Decay never touches
// biases, and skips head weights when decay_head is false. Refuses non-finite
// gradients.
ModelParams sgd_step(const ModelParams& params, const Gradient& grad, double lr,
                     double weight_decay, bool decay_head);

// Layer-major packing: for each layer, weights row-major then biases.
Vec flatten(const ModelParams& params);
ModelParams unflatten(const Architecture& arch, const Vec& flat);

}  // namespace fedsemi
