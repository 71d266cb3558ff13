/*
 Copyright 2026 The golfputt Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "golfputt/simd/kernels.hpp"

namespace golfputt {

/// Per-dimension affine map to zero mean and unit variance.
struct Normalizer {
  std::vector<double> mean;
  std::vector<double> scale;  // standard deviation; never zero

  /// Statistics of `data` (dims x n, feature-major). Dimensions without
  /// spread get scale 1 so the map stays invertible.
  static Normalizer fit(std::span<const double> data, std::size_t dims, std::size_t n);

  double normalize(std::size_t d, double v) const { return (v - mean[d]) / scale[d]; }
  double denormalize(std::size_t d, double v) const { return v * scale[d] + mean[d]; }
  std::size_t dims() const { return mean.size(); }
};

/// One-hidden-layer perceptron: tanh hidden layer, identity output, with
/// input/output normalizers. Parameters are stored flat as
///   [W1 (hidden x in, row-major), b1, W2 (out x hidden, row-major), b2].
class MlpModel {
 public:
  MlpModel() = default;
  MlpModel(std::size_t inputs, std::size_t hidden, std::size_t outputs);

  std::size_t inputs() const { return inputs_; }
  std::size_t hidden() const { return hidden_; }
  std::size_t outputs() const { return outputs_; }
  std::size_t parameter_count() const { return params_.size(); }

  std::span<double> params() { return params_; }
  std::span<const double> params() const { return params_; }
  const double* w1() const { return params_.data(); }
  const double* b1() const { return w1() + hidden_ * inputs_; }
  const double* w2() const { return b1() + hidden_; }
  const double* b2() const { return w2() + outputs_ * hidden_; }

  /// Seeded uniform initialization in +-1/sqrt(fan_in).
  void initialize(std::uint64_t seed);

  /// Physical-units prediction for one input vector.
  std::vector<double> predict(std::span<const double> input) const;

  /// Batch evaluation in normalized units. `in` is inputs x n, `out` is
  /// outputs x n and `hidden_act` (optional) receives hidden x n tanh values.
  void forward_normalized(const double* in, std::size_t n, double* out, double* hidden_act,
                          const simd::KernelTable& k = simd::active()) const;

  /// True when every input lies within twice the span of the training inputs
  /// (centered on that span).
  bool in_range(std::span<const double> input) const;

  Normalizer input_norm;
  Normalizer output_norm;
  std::vector<double> input_min;
  std::vector<double> input_max;
  std::vector<double> validation_rmse;  // per output, physical units
  std::string role;

 private:
  std::size_t inputs_ = 0;
  std::size_t hidden_ = 0;
  std::size_t outputs_ = 0;
  std::vector<double> params_;
};

/// Mean squared error over all outputs and samples (normalized units) and,
/// when `grad` is given, its gradient with respect to params() by backprop.
double mse_and_gradient(const MlpModel& m, const double* in, const double* target, std::size_t n,
                        std::vector<double>* grad, const simd::KernelTable& k = simd::active());

enum class Trainer { kLevenbergMarquardt, kMomentum };

struct TrainConfig {
  Trainer trainer = Trainer::kLevenbergMarquardt;
  std::size_t hidden = 30;
  int epochs = 400;
  int patience = 30;              // epochs without validation improvement before stopping
  double validation_fraction = 0.15;
  std::uint64_t seed = 7;
  // momentum trainer
  double learning_rate = 1e-2;
  double momentum = 0.9;
  std::size_t batch_size = 0;     // 0 = full batch
  // Levenberg-Marquardt damping schedule
  double damping_init = 1e-3;
  double damping_up = 10.0;
  double damping_down = 0.1;
  double damping_max = 1e10;

  void validate() const;
};

struct TrainReport {
  int epochs_run = 0;
  int best_epoch = 0;
  std::vector<double> train_loss;       // normalized MSE after each epoch
  std::vector<double> validation_loss;  // normalized MSE after each epoch
};

/// Fits a model to (inputs x n, outputs x n) physical-units data held
/// feature-major. The validation split is drawn with cfg.seed; normalizers come
/// from the training split. Returns the weights with the best validation loss.
/// Throws ConfigError for fewer than 100 samples and NumericalError if the
/// loss diverges.
MlpModel train_mlp(std::span<const double> inputs, std::size_t n_inputs, std::span<const double> targets,
                   std::size_t n_outputs, std::size_t n, const TrainConfig& cfg, TrainReport* report = nullptr);

}  // namespace golfputt
