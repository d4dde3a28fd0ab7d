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

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "membudget/rng.hpp"

namespace membudget {

/// Parameter-shaped container used for gradients.
struct MlpGradients {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
};

/// Fully connected network, ReLU hidden layers, linear output.
///
/// Samples are columns: forward() maps an (input x batch) matrix to an
/// (output x batch) matrix. A network with any zero-width hidden layer is
/// degenerate: it has nothing to learn and outputs constant zeros.
class Mlp {
 public:
  Mlp() = default;
  /// All parameters zero.
  Mlp(int input, std::vector<int> hidden, int output);

  /// Weights and biases uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)].
  static Mlp random(int input, std::vector<int> hidden, int output, SeededRng& rng);

  struct Cache {
    /// activations[0] is the input, activations.back() the output.
    std::vector<Eigen::MatrixXd> activations;
  };

  [[nodiscard]] Eigen::MatrixXd forward(const Eigen::MatrixXd& x) const;
  [[nodiscard]] Eigen::MatrixXd forward(const Eigen::MatrixXd& x, Cache& cache) const;

  /// Gradient of a loss given dLoss/dOutput for the batch in cache.
  [[nodiscard]] MlpGradients backward(const Cache& cache, const Eigen::MatrixXd& d_output) const;

  void sgd_step(const MlpGradients& grads, double learning_rate);
  /// Multiplies the last layer's weights and biases by factor.
  void scale_output_layer(double factor);

  [[nodiscard]] bool degenerate() const noexcept { return degenerate_; }
  [[nodiscard]] int input_width() const noexcept { return input_; }
  [[nodiscard]] int output_width() const noexcept { return output_; }
  [[nodiscard]] const std::vector<int>& hidden_widths() const noexcept { return hidden_; }
  [[nodiscard]] int hidden_units() const;
  [[nodiscard]] std::size_t parameter_count() const;

  [[nodiscard]] std::size_t layer_count() const noexcept { return weights_.size(); }
  [[nodiscard]] const Eigen::MatrixXd& weight(std::size_t layer) const { return weights_.at(layer); }
  [[nodiscard]] const Eigen::VectorXd& bias(std::size_t layer) const { return biases_.at(layer); }
  Eigen::MatrixXd& weight(std::size_t layer) { return weights_.at(layer); }
  Eigen::VectorXd& bias(std::size_t layer) { return biases_.at(layer); }

  friend bool operator==(const Mlp& a, const Mlp& b);

 private:
  int input_{0};
  int output_{0};
  std::vector<int> hidden_;
  bool degenerate_{false};
  std::vector<Eigen::MatrixXd> weights_;
  std::vector<Eigen::VectorXd> biases_;
};

}  // namespace membudget
