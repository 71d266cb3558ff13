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

#include "golfputt/mlp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fmt/core.h>
#include <numeric>

#include "golfputt/error.hpp"
#include "golfputt/random.hpp"

namespace golfputt {

Normalizer Normalizer::fit(std::span<const double> data, std::size_t dims, std::size_t n) {
  Normalizer nz;
  nz.mean.assign(dims, 0.0);
  nz.scale.assign(dims, 1.0);
  for (std::size_t d = 0; d < dims; ++d) {
    const auto row = data.subspan(d * n, n);
    const double mean = std::accumulate(row.begin(), row.end(), 0.0) / static_cast<double>(n);
    double var = 0.0;
    for (double v : row) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);
    nz.mean[d] = mean;
    const double sd = std::sqrt(var);
    nz.scale[d] = sd > 1e-12 * std::max(1.0, std::abs(mean)) ? sd : 1.0;
  }
  return nz;
}

MlpModel::MlpModel(std::size_t inputs, std::size_t hidden, std::size_t outputs)
    : inputs_(inputs), hidden_(hidden), outputs_(outputs),
      params_(hidden * inputs + hidden + outputs * hidden + outputs, 0.0) {
  if (inputs == 0 || hidden == 0 || outputs == 0) throw ConfigError("network layer sizes must be positive");
  input_norm = {std::vector<double>(inputs, 0.0), std::vector<double>(inputs, 1.0)};
  output_norm = {std::vector<double>(outputs, 0.0), std::vector<double>(outputs, 1.0)};
  input_min.assign(inputs, -1.0);
  input_max.assign(inputs, 1.0);
}

void MlpModel::initialize(std::uint64_t seed) {
  Rng rng(seed);
  const double a1 = 1.0 / std::sqrt(static_cast<double>(inputs_));
  const double a2 = 1.0 / std::sqrt(static_cast<double>(hidden_));
  std::size_t i = 0;
  for (; i < hidden_ * inputs_ + hidden_; ++i) params_[i] = rng.uniform(-a1, a1);
  for (; i < params_.size(); ++i) params_[i] = rng.uniform(-a2, a2);
}

void MlpModel::forward_normalized(const double* in, std::size_t n, double* out, double* hidden_act,
                                  const simd::KernelTable& k) const {
  std::vector<double> scratch;
  double* z = hidden_act;
  if (!z) {
    scratch.resize(hidden_ * n);
    z = scratch.data();
  }
  k.affine(w1(), b1(), hidden_, inputs_, in, n, z);
  for (std::size_t i = 0; i < hidden_ * n; ++i) z[i] = std::tanh(z[i]);
  k.affine(w2(), b2(), outputs_, hidden_, z, n, out);
}

std::vector<double> MlpModel::predict(std::span<const double> input) const {
  if (input.size() != inputs_)
    throw ConfigError(fmt::format("network expects {} inputs, got {}", inputs_, input.size()));
  std::vector<double> in(inputs_);
  for (std::size_t d = 0; d < inputs_; ++d) in[d] = input_norm.normalize(d, input[d]);
  std::vector<double> out(outputs_);
  forward_normalized(in.data(), 1, out.data(), nullptr, simd::scalar_kernels());
  for (std::size_t d = 0; d < outputs_; ++d) out[d] = output_norm.denormalize(d, out[d]);
  return out;
}

bool MlpModel::in_range(std::span<const double> input) const {
  for (std::size_t d = 0; d < std::min(input.size(), inputs_); ++d) {
    const double center = 0.5 * (input_min[d] + input_max[d]);
    const double span = input_max[d] - input_min[d];
    if (std::abs(input[d] - center) > span) return false;
  }
  return input.size() == inputs_;
}

double mse_and_gradient(const MlpModel& m, const double* in, const double* target, std::size_t n,
                        std::vector<double>* grad, const simd::KernelTable& k) {
  const std::size_t ni = m.inputs(), nh = m.hidden(), no = m.outputs();
  std::vector<double> z(nh * n), out(no * n);
  m.forward_normalized(in, n, out.data(), z.data(), k);

  const double norm = 1.0 / static_cast<double>(n * no);
  double loss = 0.0;
  for (std::size_t i = 0; i < no * n; ++i) {
    out[i] -= target[i];
    loss += out[i] * out[i];
  }
  loss *= norm;
  if (!grad) return loss;

  grad->assign(m.parameter_count(), 0.0);
  double* g_w1 = grad->data();
  double* g_b1 = g_w1 + nh * ni;
  double* g_w2 = g_b1 + nh;
  double* g_b2 = g_w2 + no * nh;

  // dL/dout = 2 (out - target) / (n * no)
  for (double& e : out) e *= 2.0 * norm;
  const std::vector<double> ones(n, 1.0);
  std::vector<double> dz(nh * n, 0.0);
  for (std::size_t o = 0; o < no; ++o) {
    const double* e = out.data() + o * n;
    g_b2[o] = k.dot(e, ones.data(), n);
    for (std::size_t h = 0; h < nh; ++h) {
      g_w2[o * nh + h] = k.dot(e, z.data() + h * n, n);
      k.axpy(m.w2()[o * nh + h], e, dz.data() + h * n, n);
    }
  }
  for (std::size_t i = 0; i < nh * n; ++i) dz[i] *= 1.0 - z[i] * z[i];
  for (std::size_t h = 0; h < nh; ++h) {
    const double* d = dz.data() + h * n;
    g_b1[h] = k.dot(d, ones.data(), n);
    for (std::size_t c = 0; c < ni; ++c) g_w1[h * ni + c] = k.dot(d, in + c * n, n);
  }
  return loss;
}

void TrainConfig::validate() const {
  if (hidden == 0) throw ConfigError("train.hidden must be positive");
  if (epochs <= 0) throw ConfigError("train.epochs must be positive");
  if (patience <= 0) throw ConfigError("train.patience must be positive");
  if (!(validation_fraction > 0.0 && validation_fraction <= 0.5))
    throw ConfigError("train.validation_fraction must lie in (0, 0.5]");
  if (!(learning_rate > 0.0)) throw ConfigError("train.learning_rate must be positive");
  if (!(momentum >= 0.0 && momentum < 1.0)) throw ConfigError("train.momentum must lie in [0, 1)");
  if (!(damping_init > 0.0) || !(damping_up > 1.0) || !(damping_down > 0.0 && damping_down < 1.0))
    throw ConfigError("train damping schedule must satisfy init > 0, up > 1, 0 < down < 1");
}

namespace {

struct Split {
  std::vector<double> in;   // inputs x n, normalized
  std::vector<double> out;  // outputs x n, normalized
  std::size_t n = 0;
};

Split gather(std::span<const double> inputs, std::size_t ni, std::span<const double> targets, std::size_t no,
             std::size_t n_total, const std::vector<std::size_t>& idx, const MlpModel& m) {
  Split s;
  s.n = idx.size();
  s.in.resize(ni * s.n);
  s.out.resize(no * s.n);
  for (std::size_t k = 0; k < s.n; ++k) {
    for (std::size_t d = 0; d < ni; ++d)
      s.in[d * s.n + k] = m.input_norm.normalize(d, inputs[d * n_total + idx[k]]);
    for (std::size_t d = 0; d < no; ++d)
      s.out[d * s.n + k] = m.output_norm.normalize(d, targets[d * n_total + idx[k]]);
  }
  return s;
}

// Residual Jacobian d(out_ok - target_ok)/d(params), rows ordered (o, k).
void jacobian(const MlpModel& m, const Split& s, const std::vector<double>& z, Eigen::MatrixXd& jac) {
  const std::size_t ni = m.inputs(), nh = m.hidden(), no = m.outputs(), n = s.n;
  const std::size_t off_b1 = nh * ni, off_w2 = off_b1 + nh, off_b2 = off_w2 + no * nh;
  jac.setZero(static_cast<Eigen::Index>(no * n), static_cast<Eigen::Index>(m.parameter_count()));
  for (std::size_t o = 0; o < no; ++o) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto row = static_cast<Eigen::Index>(o * n + k);
      for (std::size_t h = 0; h < nh; ++h) {
        const double zh = z[h * n + k];
        const double back = m.w2()[o * nh + h] * (1.0 - zh * zh);
        for (std::size_t c = 0; c < ni; ++c)
          jac(row, static_cast<Eigen::Index>(h * ni + c)) = back * s.in[c * n + k];
        jac(row, static_cast<Eigen::Index>(off_b1 + h)) = back;
        jac(row, static_cast<Eigen::Index>(off_w2 + o * nh + h)) = zh;
      }
      jac(row, static_cast<Eigen::Index>(off_b2 + o)) = 1.0;
    }
  }
}

}  // namespace

MlpModel train_mlp(std::span<const double> inputs, std::size_t n_inputs, std::span<const double> targets,
                   std::size_t n_outputs, std::size_t n, const TrainConfig& cfg, TrainReport* report) {
  cfg.validate();
  if (n < 100) throw ConfigError(fmt::format("training needs at least 100 samples, got {}", n));
  if (inputs.size() != n_inputs * n || targets.size() != n_outputs * n)
    throw ConfigError("training arrays do not match the declared sizes");

  // Validation split.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(cfg.seed, 0x5eed);
  for (std::size_t i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.next() % (i + 1));
    std::swap(order[i], order[j]);
  }
  const auto n_val = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(cfg.validation_fraction * static_cast<double>(n))));
  std::vector<std::size_t> val_idx(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_val));
  std::vector<std::size_t> train_idx(order.begin() + static_cast<std::ptrdiff_t>(n_val), order.end());
  std::sort(val_idx.begin(), val_idx.end());
  std::sort(train_idx.begin(), train_idx.end());

  MlpModel m(n_inputs, cfg.hidden, n_outputs);
  m.initialize(cfg.seed);
  {
    std::vector<double> tin(n_inputs * train_idx.size()), tout(n_outputs * train_idx.size());
    for (std::size_t k = 0; k < train_idx.size(); ++k) {
      for (std::size_t d = 0; d < n_inputs; ++d) tin[d * train_idx.size() + k] = inputs[d * n + train_idx[k]];
      for (std::size_t d = 0; d < n_outputs; ++d) tout[d * train_idx.size() + k] = targets[d * n + train_idx[k]];
    }
    m.input_norm = Normalizer::fit(tin, n_inputs, train_idx.size());
    m.output_norm = Normalizer::fit(tout, n_outputs, train_idx.size());
    for (std::size_t d = 0; d < n_inputs; ++d) {
      const auto row = std::span<const double>(tin).subspan(d * train_idx.size(), train_idx.size());
      m.input_min.at(d) = *std::min_element(row.begin(), row.end());
      m.input_max.at(d) = *std::max_element(row.begin(), row.end());
    }
  }
  const Split train = gather(inputs, n_inputs, targets, n_outputs, n, train_idx, m);
  const Split val = gather(inputs, n_inputs, targets, n_outputs, n, val_idx, m);
  const auto& kern = simd::active();

  auto val_loss = [&] { return mse_and_gradient(m, val.in.data(), val.out.data(), val.n, nullptr, kern); };
  std::vector<double> best(m.params().begin(), m.params().end());
  double best_val = val_loss();
  int best_epoch = 0;
  TrainReport rep;

  auto check = [&](double loss) {
    if (!std::isfinite(loss)) throw NumericalError("training diverged: loss is not finite");
  };

  std::size_t p = m.parameter_count();
  std::vector<double> velocity(p, 0.0), grad;
  double damping = cfg.damping_init;
  Eigen::MatrixXd jac;
  Eigen::MatrixXd jtj(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
  std::vector<double> z(cfg.hidden * train.n), out(n_outputs * train.n);
  double train_loss = mse_and_gradient(m, train.in.data(), train.out.data(), train.n, nullptr, kern);
  bool stalled = false;

  int epoch = 1;
  for (; epoch <= cfg.epochs && !stalled; ++epoch) {
    if (cfg.trainer == Trainer::kMomentum) {
      const std::size_t batch = cfg.batch_size == 0 ? train.n : std::min(cfg.batch_size, train.n);
      for (std::size_t start = 0; start < train.n; start += batch) {
        const std::size_t len = std::min(batch, train.n - start);
        std::vector<double> bin(n_inputs * len), bout(n_outputs * len);
        for (std::size_t d = 0; d < n_inputs; ++d)
          std::copy_n(train.in.begin() + static_cast<std::ptrdiff_t>(d * train.n + start), len, bin.begin() + static_cast<std::ptrdiff_t>(d * len));
        for (std::size_t d = 0; d < n_outputs; ++d)
          std::copy_n(train.out.begin() + static_cast<std::ptrdiff_t>(d * train.n + start), len, bout.begin() + static_cast<std::ptrdiff_t>(d * len));
        check(mse_and_gradient(m, bin.data(), bout.data(), len, &grad, kern));
        auto params = m.params();
        for (std::size_t i = 0; i < p; ++i) {
          velocity[i] = cfg.momentum * velocity[i] - cfg.learning_rate * grad[i];
          params[i] += velocity[i];
        }
      }
      train_loss = mse_and_gradient(m, train.in.data(), train.out.data(), train.n, nullptr, kern);
      check(train_loss);
    } else {
      m.forward_normalized(train.in.data(), train.n, out.data(), z.data(), kern);
      Eigen::VectorXd resid(static_cast<Eigen::Index>(n_outputs * train.n));
      for (std::size_t i = 0; i < n_outputs * train.n; ++i) resid(static_cast<Eigen::Index>(i)) = out[i] - train.out[i];
      jacobian(m, train, z, jac);
      jtj.setZero();
      jtj.selfadjointView<Eigen::Lower>().rankUpdate(jac.transpose());
      const Eigen::VectorXd g = jac.transpose() * resid;
      const std::vector<double> current(m.params().begin(), m.params().end());
      bool accepted = false;
      while (damping <= cfg.damping_max) {
        Eigen::MatrixXd sys = jtj;
        sys.diagonal().array() += damping;
        const Eigen::VectorXd step = sys.selfadjointView<Eigen::Lower>().ldlt().solve(-g);
        auto params = m.params();
        for (std::size_t i = 0; i < p; ++i) params[i] = current[i] + step(static_cast<Eigen::Index>(i));
        const double trial = mse_and_gradient(m, train.in.data(), train.out.data(), train.n, nullptr, kern);
        if (std::isfinite(trial) && trial < train_loss) {
          train_loss = trial;
          damping = std::max(damping * cfg.damping_down, 1e-15);
          accepted = true;
          break;
        }
        damping *= cfg.damping_up;
      }
      if (!accepted) {
        std::copy(current.begin(), current.end(), m.params().begin());
        stalled = true;
      }
    }

    const double v = val_loss();
    check(v);
    rep.train_loss.push_back(train_loss);
    rep.validation_loss.push_back(v);
    if (v < best_val) {
      best_val = v;
      best_epoch = epoch;
      std::copy(m.params().begin(), m.params().end(), best.begin());
    } else if (epoch - best_epoch >= cfg.patience) {
      ++epoch;
      break;
    }
  }
  std::copy(best.begin(), best.end(), m.params().begin());
  rep.epochs_run = epoch - 1;
  rep.best_epoch = best_epoch;

  // Validation RMSE per output in physical units.
  std::vector<double> vout(n_outputs * val.n);
  m.forward_normalized(val.in.data(), val.n, vout.data(), nullptr, kern);
  m.validation_rmse.assign(n_outputs, 0.0);
  for (std::size_t d = 0; d < n_outputs; ++d) {
    double acc = 0.0;
    for (std::size_t k = 0; k < val.n; ++k) {
      const double e = (vout[d * val.n + k] - val.out[d * val.n + k]) * m.output_norm.scale[d];
      acc += e * e;
    }
    m.validation_rmse[d] = std::sqrt(acc / static_cast<double>(val.n));
  }
  if (report) *report = std::move(rep);
  return m;
}

}  // namespace golfputt
