// Copyright 2026 The SwRL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SWRL_NN_H_
#define SWRL_NN_H_

#include <functional>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace swrl {

using Eigen::MatrixXd;
using Eigen::VectorXd;

enum class Activation { kTanh, kRelu };

// Input layout: [sequence (seq_steps * frame_dim) ; extra (extra_dim)].
// Flat networks (seq_steps == 0) feed everything to the MLP. Recurrent
// networks run an LSTM over the sequence frames and feed [h_T ; extra].
struct NetworkSpec {
  int input_dim = 0;
  int output_dim = 0;
  std::vector<int> hidden = {128, 128};
  Activation activation = Activation::kTanh;
  int seq_steps = 0;
  int frame_dim = 0;
  int lstm_hidden = 64;
  double output_scale = 1.0;  // init scale of the last layer

  bool recurrent() const { return seq_steps > 0; }
  int extra_dim() const {
    return recurrent() ? input_dim - seq_steps * frame_dim : 0;
  }
};

// Parameters live in one flat vector so optimizers, target updates and
// checkpoints treat every network alike. Samples are columns.
class Network {
 public:
  Network() = default;
  Network(NetworkSpec spec, std::mt19937_64& rng);

  // Forward pass that keeps activations for the next Backward call.
  MatrixXd Forward(const MatrixXd& x);
  MatrixXd Predict(const MatrixXd& x) const;
  // Accumulates parameter gradients of sum(grad_out .* output) and returns
  // the gradient with respect to the input of the last Forward.
  MatrixXd Backward(const MatrixXd& grad_out);

  void ZeroGrad() { grads_.setZero(); }
  VectorXd& params() { return params_; }
  const VectorXd& params() const { return params_; }
  VectorXd& grads() { return grads_; }
  const VectorXd& grads() const { return grads_; }
  int num_params() const { return static_cast<int>(params_.size()); }
  const NetworkSpec& spec() const { return spec_; }

  // target <- (1 - tau) target + tau source
  void SoftUpdateFrom(const Network& source, double tau);

  // Shapes as (rows, cols) per parameter block, for manifests.
  std::vector<std::pair<int, int>> Shapes() const;

 private:
  struct Block {
    int offset, rows, cols;
  };
  Eigen::Map<MatrixXd> W(const Block& b) {
    return Eigen::Map<MatrixXd>(params_.data() + b.offset, b.rows, b.cols);
  }
  Eigen::Map<const MatrixXd> W(const Block& b) const {
    return Eigen::Map<const MatrixXd>(params_.data() + b.offset, b.rows, b.cols);
  }
  Eigen::Map<MatrixXd> G(const Block& b) {
    return Eigen::Map<MatrixXd>(grads_.data() + b.offset, b.rows, b.cols);
  }
  Block Add(int rows, int cols);

  struct Cache {
    MatrixXd input;
    MatrixXd mlp_input;
    std::vector<MatrixXd> layer_out;  // post-activation, one per layer
    // LSTM per step: gates (4H x B), cell and hidden states (T+1 entries).
    std::vector<MatrixXd> gates, cells, hiddens;
  };
  MatrixXd Run(const MatrixXd& x, Cache* cache) const;

  NetworkSpec spec_;
  VectorXd params_;
  VectorXd grads_;
  std::vector<Block> weights_, biases_;
  Block lstm_wx_{}, lstm_wh_{}, lstm_b_{};
  Cache cache_;
};

class Optimizer {
 public:
  virtual ~Optimizer() = default;
  virtual void Step(VectorXd& params, const VectorXd& grads) = 0;
};

class Adam : public Optimizer {
 public:
  explicit Adam(double lr, double beta1 = 0.9, double beta2 = 0.999,
                double eps = 1e-8)
      : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {}
  void Step(VectorXd& params, const VectorXd& grads) override;

 private:
  double lr_, beta1_, beta2_, eps_;
  VectorXd m_, v_;
  long t_ = 0;
};

class Sgd : public Optimizer {
 public:
  Sgd(double lr, double momentum) : lr_(lr), momentum_(momentum) {}
  void Step(VectorXd& params, const VectorXd& grads) override;

 private:
  double lr_, momentum_;
  VectorXd velocity_;
};

std::unique_ptr<Optimizer> MakeOptimizer(const std::string& name, double lr,
                                         double momentum);

// Scales `grads` so its Euclidean norm is at most max_norm (<= 0 disables).
void ClipGradNorm(VectorXd& grads, double max_norm);

// Loss of a network output; returns (value, dL/d output).
using LossFn = std::function<std::pair<double, MatrixXd>(const MatrixXd&)>;

// Largest relative error between backprop and central differences over all
// parameters and inputs: |a - n| / max(|a|, |n|, floor). The floor keeps
// difference round-off (~1e-16 |L| / eps) on near-zero gradients from
// dominating the ratio.
double GradientCheck(Network& net, const MatrixXd& input, const LossFn& loss,
                     double eps = 1e-5, double floor = 1e-6);

// Same comparison for an arbitrary scalar function of a flat vector.
double GradientCheck(const std::function<double(const VectorXd&)>& f,
                     const VectorXd& x, const VectorXd& analytic,
                     double eps = 1e-5, double floor = 1e-6);

}  // namespace swrl

#endif  // SWRL_NN_H_
