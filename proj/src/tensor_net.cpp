#include "fedsemi/tensor_net.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fedsemi/errors.hpp"

namespace fedsemi {

Matrix Matrix::from_rows(const std::vector<Vec>& rows_in) {
  if (rows_in.empty()) return Matrix(0, 0);
  Matrix m(rows_in.size(), rows_in.front().size());
  for (std::size_t r = 0; r < rows_in.size(); ++r) {
    if (rows_in[r].size() != m.cols) throw ShapeError("from_rows: ragged rows");
    std::copy(rows_in[r].begin(), rows_in[r].end(), m.row(r));
  }
  return m;
}

Architecture Architecture::with_default_split(std::vector<int> dims) {
  Architecture a(std::move(dims), 0);
  a.encoder_split = static_cast<int>(a.layer_dims.size()) - 2;
  if (a.encoder_split < 1) a.encoder_split = 1;
  return a;
}

void Architecture::validate() const {
  if (layer_dims.size() < 2) throw ConfigError("architecture needs at least input and output dims");
  for (int d : layer_dims)
    if (d < 1) throw ConfigError("architecture dims must be >= 1");
  if (encoder_split < 1 || encoder_split > layer_count() - 1)
    throw ConfigError("encoder_split must be in [1, layer_count), head keeps the final layer");
}

std::size_t ModelParams::param_count() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) n += weights[l].a.size() + biases[l].size();
  return n;
}

bool ModelParams::is_finite() const {
  for (const auto& w : weights)
    for (double v : w.a)
      if (!std::isfinite(v)) return false;
  for (const auto& b : biases)
    for (double v : b)
      if (!std::isfinite(v)) return false;
  return true;
}

Gradient Gradient::zeros_like(const ModelParams& p) {
  Gradient g;
  g.weights.reserve(p.weights.size());
  g.biases.reserve(p.biases.size());
  for (const auto& w : p.weights) g.weights.emplace_back(w.rows, w.cols);
  for (const auto& b : p.biases) g.biases.emplace_back(b.size(), 0.0);
  return g;
}

bool Gradient::is_finite() const {
  for (const auto& w : weights)
    for (double v : w.a)
      if (!std::isfinite(v)) return false;
  for (const auto& b : biases)
    for (double v : b)
      if (!std::isfinite(v)) return false;
  return true;
}

void Gradient::scaled_add(const Gradient& other, double scale) {
  for (std::size_t l = 0; l < weights.size(); ++l) {
    for (std::size_t i = 0; i < weights[l].a.size(); ++i) weights[l].a[i] += scale * other.weights[l].a[i];
    for (std::size_t i = 0; i < biases[l].size(); ++i) biases[l][i] += scale * other.biases[l][i];
  }
}

ModelParams init_params(const Architecture& arch, std::uint64_t seed) {
  arch.validate();
  RngStream rng(seed);
  ModelParams p;
  p.arch = arch;
  const int L = arch.layer_count();
  p.weights.reserve(L);
  p.biases.reserve(L);
  for (int l = 0; l < L; ++l) {
    const int fan_in = arch.layer_dims[l];
    const int fan_out = arch.layer_dims[l + 1];
    const double std_dev = std::sqrt(2.0 / static_cast<double>(fan_in));
    Matrix w(fan_out, fan_in);
    for (auto& v : w.a) v = rng.normal(0.0, std_dev);
    p.weights.push_back(std::move(w));
    p.biases.emplace_back(fan_out, 0.0);
  }
  return p;
}

namespace {

void check_input(const ModelParams& params, const Matrix& inputs) {
  if (inputs.cols != static_cast<std::size_t>(params.arch.input_dim()))
    throw ShapeError("input dim " + std::to_string(inputs.cols) + " does not match architecture dim " +
                     std::to_string(params.arch.input_dim()));
}

// z = W x + b for every row of x.
Matrix linear(const Matrix& w, const Vec& b, const Matrix& x) {
  Matrix z(x.rows, w.rows);
  for (std::size_t n = 0; n < x.rows; ++n) {
    const double* xi = x.row(n);
    double* zi = z.row(n);
    for (std::size_t o = 0; o < w.rows; ++o) {
      double acc = b[o];
      const double* wo = w.row(o);
      for (std::size_t i = 0; i < w.cols; ++i) acc += wo[i] * xi[i];
      zi[o] = acc;
    }
  }
  return z;
}

void relu_inplace(Matrix& m) {
  for (auto& v : m.a) v = v > 0.0 ? v : 0.0;
}

}  // namespace

ForwardResult forward(const ModelParams& params, const Matrix& inputs) {
  check_input(params, inputs);
  const int L = params.arch.layer_count();
  ForwardResult out;
  Matrix h = inputs;
  for (int l = 0; l < L; ++l) {
    h = linear(params.weights[l], params.biases[l], h);
    if (l < L - 1) relu_inplace(h);
    if (l == params.arch.encoder_split - 1) out.features = h;
  }
  out.logits = std::move(h);
  return out;
}

Matrix encoder_forward(const ModelParams& params, const Matrix& inputs) {
  check_input(params, inputs);
  Matrix h = inputs;
  for (int l = 0; l < params.arch.encoder_split; ++l) {
    h = linear(params.weights[l], params.biases[l], h);
    relu_inplace(h);
  }
  return h;
}

LossGrad loss_and_grad(const ModelParams& params, const Matrix& inputs,
                       const std::vector<int>& targets,
                       const std::vector<std::uint8_t>& sample_mask,
                       const Vec& class_offsets) {
  check_input(params, inputs);
  const int L = params.arch.layer_count();
  const int C = params.arch.class_count();
  const std::size_t n = inputs.rows;
  if (targets.size() != n || sample_mask.size() != n)
    throw ShapeError("targets/mask length must equal the batch size");
  if (!class_offsets.empty() && class_offsets.size() != static_cast<std::size_t>(C))
    throw ShapeError("class_offsets length must equal the class count");
  for (std::size_t i = 0; i < n; ++i)
    if (sample_mask[i] && (targets[i] < 0 || targets[i] >= C))
      throw DataError("target " + std::to_string(targets[i]) + " out of range [0, " + std::to_string(C) + ")");

  LossGrad out;
  out.grad = Gradient::zeros_like(params);

  std::size_t m = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (sample_mask[i]) ++m;
  if (m == 0 || n == 0) return out;  // empty-mean convention

  // Forward pass keeping pre- and post-activation values per layer.
  std::vector<Matrix> acts;  // acts[l] is the input of layer l
  acts.reserve(L + 1);
  acts.push_back(inputs);
  std::vector<Matrix> pre;  // pre[l] = z_l
  pre.reserve(L);
  for (int l = 0; l < L; ++l) {
    pre.push_back(linear(params.weights[l], params.biases[l], acts.back()));
    Matrix a = pre.back();
    if (l < L - 1) relu_inplace(a);
    acts.push_back(std::move(a));
  }
  const Matrix& logits = acts.back();

  // Softmax cross-entropy on masked samples; delta = dLoss/dlogits.
  Matrix delta(n, C);
  const double inv_m = 1.0 / static_cast<double>(m);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!sample_mask[i]) continue;
    const double* z = logits.row(i);
    double zmax = -HUGE_VAL;
    for (int c = 0; c < C; ++c) {
      double v = z[c] + (class_offsets.empty() ? 0.0 : class_offsets[c]);
      if (v > zmax) zmax = v;
    }
    double denom = 0.0;
    for (int c = 0; c < C; ++c) {
      double v = z[c] + (class_offsets.empty() ? 0.0 : class_offsets[c]);
      denom += std::exp(v - zmax);
    }
    const double log_denom = std::log(denom);
    const int t = targets[i];
    const double zt = z[t] + (class_offsets.empty() ? 0.0 : class_offsets[t]);
    total += -(zt - zmax - log_denom);
    for (int c = 0; c < C; ++c) {
      double v = z[c] + (class_offsets.empty() ? 0.0 : class_offsets[c]);
      double p = std::exp(v - zmax - log_denom);
      delta.at(i, c) = (p - (c == t ? 1.0 : 0.0)) * inv_m;
    }
  }
  out.loss = total * inv_m;

  // Backward pass.
  for (int l = L - 1; l >= 0; --l) {
    const Matrix& x = acts[l];
    Matrix& dw = out.grad.weights[l];
    Vec& db = out.grad.biases[l];
    for (std::size_t i = 0; i < n; ++i) {
      if (!sample_mask[i]) continue;
      const double* d = delta.row(i);
      const double* xi = x.row(i);
      for (std::size_t o = 0; o < dw.rows; ++o) {
        const double dv = d[o];
        if (dv == 0.0) continue;
        double* dwo = dw.row(o);
        for (std::size_t c = 0; c < dw.cols; ++c) dwo[c] += dv * xi[c];
        db[o] += dv;
      }
    }
    if (l == 0) break;
    // delta for the previous layer: (W^T delta) * relu'(z_{l-1})
    const Matrix& w = params.weights[l];
    Matrix prev(n, w.cols);
    for (std::size_t i = 0; i < n; ++i) {
      if (!sample_mask[i]) continue;
      const double* d = delta.row(i);
      double* pd = prev.row(i);
      for (std::size_t o = 0; o < w.rows; ++o) {
        const double dv = d[o];
        if (dv == 0.0) continue;
        const double* wo = w.row(o);
        for (std::size_t c = 0; c < w.cols; ++c) pd[c] += dv * wo[c];
      }
      const double* z = pre[l - 1].row(i);
      for (std::size_t c = 0; c < w.cols; ++c)
        if (z[c] <= 0.0) pd[c] = 0.0;
    }
    delta = std::move(prev);
  }
  return out;
}

ModelParams sgd_step(const ModelParams& params, const Gradient& grad, double lr,
                     double weight_decay, bool decay_head) {
  if (!(lr > 0.0)) throw ConfigError("sgd_step: lr must be positive");
  if (weight_decay < 0.0) throw ConfigError("sgd_step: weight_decay must be non-negative");
  if (grad.weights.size() != params.weights.size()) throw ShapeError("sgd_step: layer count mismatch");
  if (!grad.is_finite()) throw NumericError("sgd_step: non-finite gradient, step refused");

  ModelParams next = params;
  const int L = params.arch.layer_count();
  for (int l = 0; l < L; ++l) {
    if (grad.weights[l].rows != params.weights[l].rows || grad.weights[l].cols != params.weights[l].cols)
      throw ShapeError("sgd_step: weight shape mismatch");
    const bool decayed = weight_decay > 0.0 && (decay_head || l < params.arch.encoder_split);
    for (std::size_t i = 0; i < next.weights[l].a.size(); ++i) {
      double g = grad.weights[l].a[i];
      if (decayed) g += weight_decay * params.weights[l].a[i];
      next.weights[l].a[i] -= lr * g;
    }
    for (std::size_t i = 0; i < next.biases[l].size(); ++i)
      next.biases[l][i] -= lr * grad.biases[l][i];  // biases never decayed
  }
  return next;
}

Vec flatten(const ModelParams& params) {
  Vec flat;
  flat.reserve(params.param_count());
  for (std::size_t l = 0; l < params.weights.size(); ++l) {
    flat.insert(flat.end(), params.weights[l].a.begin(), params.weights[l].a.end());
    flat.insert(flat.end(), params.biases[l].begin(), params.biases[l].end());
  }
  return flat;
}

ModelParams unflatten(const Architecture& arch, const Vec& flat) {
  arch.validate();
  ModelParams p;
  p.arch = arch;
  std::size_t pos = 0;
  for (int l = 0; l < arch.layer_count(); ++l) {
    const std::size_t rows = arch.layer_dims[l + 1];
    const std::size_t cols = arch.layer_dims[l];
    if (pos + rows * cols + rows > flat.size()) throw ShapeError("unflatten: vector too short");
    Matrix w(rows, cols);
    std::copy(flat.begin() + pos, flat.begin() + pos + rows * cols, w.a.begin());
    pos += rows * cols;
    Vec b(flat.begin() + pos, flat.begin() + pos + rows);
    pos += rows;
    p.weights.push_back(std::move(w));
    p.biases.push_back(std::move(b));
  }
  if (pos != flat.size()) throw ShapeError("unflatten: vector length does not match architecture");
  return p;
}

}  // namespace fedsemi
