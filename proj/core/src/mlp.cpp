/*
 * Copyright 2026 The membudget Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "membudget/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "membudget/errors.hpp"

namespace membudget {

Mlp::Mlp(int input, std::vector<int> hidden, int output)
    : input_(input), output_(output), hidden_(std::move(hidden)) {
  if (input < 1 || output < 1) throw ValidationError("network input and output widths must be positive");
  if (std::any_of(hidden_.begin(), hidden_.end(), [](int w) { return w < 0; })) {
    throw ValidationError("hidden widths must be non-negative");
  }
  degenerate_ = std::any_of(hidden_.begin(), hidden_.end(), [](int w) { return w == 0; });
  int fan_in = input_;
  for (std::size_t l = 0; l <= hidden_.size(); ++l) {
    const int fan_out = l < hidden_.size() ? hidden_[l] : output_;
    weights_.emplace_back(Eigen::MatrixXd::Zero(fan_out, fan_in));
    biases_.emplace_back(Eigen::VectorXd::Zero(fan_out));
    fan_in = fan_out;
  }
}

Mlp Mlp::random(int input, std::vector<int> hidden, int output, SeededRng& rng) {
  Mlp net(input, std::move(hidden), output);
  for (std::size_t l = 0; l < net.weights_.size(); ++l) {
    auto& w = net.weights_[l];
    if (w.cols() == 0) continue;
    const double bound = 1.0 / std::sqrt(static_cast<double>(w.cols()));
    // Column-major fill order is part of the seed contract.
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      for (Eigen::Index i = 0; i < w.rows(); ++i) w(i, j) = rng.uniform(-bound, bound);
    }
    for (Eigen::Index i = 0; i < net.biases_[l].size(); ++i) net.biases_[l](i) = rng.uniform(-bound, bound);
  }
  return net;
}

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& x) const {
  Cache cache;
  return forward(x, cache);
}

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& x, Cache& cache) const {
  if (x.rows() != input_) throw ContractViolation("network input has the wrong width");
  cache.activations.clear();
  if (degenerate_) {
    cache.activations.push_back(x);
    return Eigen::MatrixXd::Zero(output_, x.cols());
  }
  cache.activations.reserve(weights_.size() + 1);
  cache.activations.push_back(x);
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    Eigen::MatrixXd z = weights_[l] * cache.activations.back();
    z.colwise() += biases_[l];
    if (l + 1 < weights_.size()) z = z.cwiseMax(0.0);
    cache.activations.push_back(std::move(z));
  }
  return cache.activations.back();
}

MlpGradients Mlp::backward(const Cache& cache, const Eigen::MatrixXd& d_output) const {
  MlpGradients g;
  g.weights.resize(weights_.size());
  g.biases.resize(biases_.size());
  if (degenerate_) {
    for (std::size_t l = 0; l < weights_.size(); ++l) {
      g.weights[l] = Eigen::MatrixXd::Zero(weights_[l].rows(), weights_[l].cols());
      g.biases[l] = Eigen::VectorXd::Zero(biases_[l].size());
    }
    return g;
  }
  if (cache.activations.size() != weights_.size() + 1) throw ContractViolation("backward without a forward cache");
  Eigen::MatrixXd delta = d_output;
  for (std::size_t l = weights_.size(); l-- > 0;) {
    const Eigen::MatrixXd& in = cache.activations[l];
    g.weights[l] = delta * in.transpose();
    g.biases[l] = delta.rowwise().sum();
    if (l > 0) {
      Eigen::MatrixXd back = weights_[l].transpose() * delta;
      delta = back.cwiseProduct((in.array() > 0.0).cast<double>().matrix());
    }
  }
  return g;
}

void Mlp::sgd_step(const MlpGradients& grads, double learning_rate) {
  if (degenerate_) return;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    weights_[l] -= learning_rate * grads.weights[l];
    biases_[l] -= learning_rate * grads.biases[l];
  }
}

void Mlp::scale_output_layer(double factor) {
  if (weights_.empty()) return;
  weights_.back() *= factor;
  biases_.back() *= factor;
}

int Mlp::hidden_units() const { return std::accumulate(hidden_.begin(), hidden_.end(), 0); }

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    n += static_cast<std::size_t>(weights_[l].size() + biases_[l].size());
  }
  return n;
}

bool operator==(const Mlp& a, const Mlp& b) {
  if (a.input_ != b.input_ || a.output_ != b.output_ || a.hidden_ != b.hidden_) return false;
  for (std::size_t l = 0; l < a.weights_.size(); ++l) {
    if (a.weights_[l] != b.weights_[l] || a.biases_[l] != b.biases_[l]) return false;
  }
  return true;
}

}  // namespace membudget
