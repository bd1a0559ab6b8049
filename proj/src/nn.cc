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

#include "swrl/nn.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swrl {

namespace {

MatrixXd Sigmoid(const MatrixXd& z) {
  return (1.0 + (-z.array()).exp()).inverse().matrix();
}

}  // namespace

Network::Block Network::Add(int rows, int cols) {
  Block b{static_cast<int>(params_.size()), rows, cols};
  params_.conservativeResize(params_.size() + rows * cols);
  return b;
}

Network::Network(NetworkSpec spec, std::mt19937_64& rng) : spec_(std::move(spec)) {
  if (spec_.input_dim <= 0 || spec_.output_dim <= 0) {
    throw std::invalid_argument("network dimensions must be positive");
  }
  if (spec_.recurrent() && (spec_.frame_dim <= 0 || spec_.extra_dim() < 0)) {
    throw std::invalid_argument("recurrent input layout does not fit input_dim");
  }
  params_.resize(0);
  int in = spec_.input_dim;
  if (spec_.recurrent()) {
    const int h = spec_.lstm_hidden;
    lstm_wx_ = Add(4 * h, spec_.frame_dim);
    lstm_wh_ = Add(4 * h, h);
    lstm_b_ = Add(4 * h, 1);
    in = h + spec_.extra_dim();
  }
  std::vector<int> sizes = spec_.hidden;
  sizes.push_back(spec_.output_dim);
  for (int out : sizes) {
    weights_.push_back(Add(out, in));
    biases_.push_back(Add(out, 1));
    in = out;
  }
  params_.setZero();
  grads_ = VectorXd::Zero(params_.size());

  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto fill = [&](const Block& b, double scale) {
    auto w = W(b);
    for (int c = 0; c < w.cols(); ++c)
      for (int r = 0; r < w.rows(); ++r) w(r, c) = scale * unit(rng);
  };
  if (spec_.recurrent()) {
    const int h = spec_.lstm_hidden;
    fill(lstm_wx_, std::sqrt(6.0 / (spec_.frame_dim + h)));
    fill(lstm_wh_, std::sqrt(6.0 / (2.0 * h)));
    W(lstm_b_).middleRows(h, h).setOnes();  // forget gate starts open
  }
  for (size_t l = 0; l < weights_.size(); ++l) {
    const Block& b = weights_[l];
    double scale = std::sqrt(6.0 / (b.rows + b.cols));
    if (l + 1 == weights_.size()) scale *= spec_.output_scale;
    fill(b, scale);
  }
}

MatrixXd Network::Run(const MatrixXd& x, Cache* cache) const {
  if (x.rows() != spec_.input_dim) {
    throw std::invalid_argument("network input has " + std::to_string(x.rows()) +
                                " rows, expected " + std::to_string(spec_.input_dim));
  }
  const int batch = static_cast<int>(x.cols());
  MatrixXd a;
  if (spec_.recurrent()) {
    const int h = spec_.lstm_hidden;
    const int fd = spec_.frame_dim;
    auto wx = W(lstm_wx_);
    auto wh = W(lstm_wh_);
    auto b = W(lstm_b_);
    MatrixXd hs = MatrixXd::Zero(h, batch);
    MatrixXd cs = MatrixXd::Zero(h, batch);
    if (cache) {
      cache->gates.clear();
      cache->cells.assign(1, cs);
      cache->hiddens.assign(1, hs);
    }
    for (int t = 0; t < spec_.seq_steps; ++t) {
      MatrixXd z = wx * x.middleRows(t * fd, fd) + wh * hs;
      z.colwise() += b.col(0);
      MatrixXd gates(4 * h, batch);
      gates.topRows(h) = Sigmoid(z.topRows(h));
      gates.middleRows(h, h) = Sigmoid(z.middleRows(h, h));
      gates.middleRows(2 * h, h) = z.middleRows(2 * h, h).array().tanh().matrix();
      gates.bottomRows(h) = Sigmoid(z.bottomRows(h));
      cs = gates.middleRows(h, h).cwiseProduct(cs) +
           gates.topRows(h).cwiseProduct(gates.middleRows(2 * h, h));
      hs = gates.bottomRows(h).cwiseProduct(cs.array().tanh().matrix());
      if (cache) {
        cache->gates.push_back(gates);
        cache->cells.push_back(cs);
        cache->hiddens.push_back(hs);
      }
    }
    a.resize(h + spec_.extra_dim(), batch);
    a.topRows(h) = hs;
    a.bottomRows(spec_.extra_dim()) = x.bottomRows(spec_.extra_dim());
  } else {
    a = x;
  }
  if (cache) {
    cache->input = x;
    cache->mlp_input = a;
    cache->layer_out.clear();
  }
  for (size_t l = 0; l < weights_.size(); ++l) {
    MatrixXd z = W(weights_[l]) * a;
    z.colwise() += W(biases_[l]).col(0);
    if (l + 1 < weights_.size()) {
      if (spec_.activation == Activation::kTanh) {
        z = z.array().tanh().matrix();
      } else {
        z = z.cwiseMax(0.0);
      }
    }
    a = std::move(z);
    if (cache) cache->layer_out.push_back(a);
  }
  return a;
}

MatrixXd Network::Forward(const MatrixXd& x) { return Run(x, &cache_); }

MatrixXd Network::Predict(const MatrixXd& x) const { return Run(x, nullptr); }

MatrixXd Network::Backward(const MatrixXd& grad_out) {
  if (cache_.layer_out.empty()) throw std::logic_error("Backward before Forward");
  MatrixXd delta = grad_out;
  for (int l = static_cast<int>(weights_.size()) - 1; l >= 0; --l) {
    const MatrixXd& out = cache_.layer_out[l];
    if (l + 1 < static_cast<int>(weights_.size())) {
      if (spec_.activation == Activation::kTanh) {
        delta.array() *= 1.0 - out.array().square();
      } else {
        delta.array() *= (out.array() > 0.0).cast<double>();
      }
    }
    const MatrixXd& prev = l > 0 ? cache_.layer_out[l - 1] : cache_.mlp_input;
    G(weights_[l]).noalias() += delta * prev.transpose();
    G(biases_[l]).col(0) += delta.rowwise().sum();
    delta = W(weights_[l]).transpose() * delta;
  }
  if (!spec_.recurrent()) return delta;

  const int h = spec_.lstm_hidden;
  const int fd = spec_.frame_dim;
  const int batch = static_cast<int>(delta.cols());
  MatrixXd dx = MatrixXd::Zero(spec_.input_dim, batch);
  dx.bottomRows(spec_.extra_dim()) = delta.bottomRows(spec_.extra_dim());
  MatrixXd dh = delta.topRows(h);
  MatrixXd dc = MatrixXd::Zero(h, batch);
  auto wx = W(lstm_wx_);
  auto wh = W(lstm_wh_);
  auto gwx = G(lstm_wx_);
  auto gwh = G(lstm_wh_);
  auto gb = G(lstm_b_);
  for (int t = spec_.seq_steps - 1; t >= 0; --t) {
    const MatrixXd& gates = cache_.gates[t];
    const auto i = gates.topRows(h).array();
    const auto f = gates.middleRows(h, h).array();
    const auto g = gates.middleRows(2 * h, h).array();
    const auto o = gates.bottomRows(h).array();
    const MatrixXd tc = cache_.cells[t + 1].array().tanh().matrix();
    MatrixXd dz(4 * h, batch);
    dz.bottomRows(h) = (dh.array() * tc.array() * o * (1.0 - o)).matrix();
    dc.array() += dh.array() * o * (1.0 - tc.array().square());
    dz.topRows(h) = (dc.array() * g * i * (1.0 - i)).matrix();
    dz.middleRows(h, h) =
        (dc.array() * cache_.cells[t].array() * f * (1.0 - f)).matrix();
    dz.middleRows(2 * h, h) = (dc.array() * i * (1.0 - g.square())).matrix();
    dc = (dc.array() * f).matrix();
    gwx.noalias() += dz * cache_.input.middleRows(t * fd, fd).transpose();
    gwh.noalias() += dz * cache_.hiddens[t].transpose();
    gb.col(0) += dz.rowwise().sum();
    dx.middleRows(t * fd, fd) = wx.transpose() * dz;
    dh = wh.transpose() * dz;
  }
  return dx;
}

void Network::SoftUpdateFrom(const Network& source, double tau) {
  if (source.params_.size() != params_.size()) {
    throw std::invalid_argument("soft update between different shapes");
  }
  params_ = (1.0 - tau) * params_ + tau * source.params_;
}

std::vector<std::pair<int, int>> Network::Shapes() const {
  std::vector<std::pair<int, int>> out;
  if (spec_.recurrent()) {
    for (const Block& b : {lstm_wx_, lstm_wh_, lstm_b_}) out.emplace_back(b.rows, b.cols);
  }
  for (size_t l = 0; l < weights_.size(); ++l) {
    out.emplace_back(weights_[l].rows, weights_[l].cols);
    out.emplace_back(biases_[l].rows, biases_[l].cols);
  }
  return out;
}

void Adam::Step(VectorXd& params, const VectorXd& grads) {
  if (m_.size() != params.size()) {
    m_ = VectorXd::Zero(params.size());
    v_ = VectorXd::Zero(params.size());
    t_ = 0;
  }
  ++t_;
  m_ = beta1_ * m_ + (1.0 - beta1_) * grads;
  v_ = beta2_ * v_ + (1.0 - beta2_) * grads.cwiseAbs2();
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  params.array() -= lr_ * (m_.array() / c1) / ((v_.array() / c2).sqrt() + eps_);
}

void Sgd::Step(VectorXd& params, const VectorXd& grads) {
  if (velocity_.size() != params.size()) velocity_ = VectorXd::Zero(params.size());
  velocity_ = momentum_ * velocity_ + grads;
  params -= lr_ * velocity_;
}

std::unique_ptr<Optimizer> MakeOptimizer(const std::string& name, double lr,
                                         double momentum) {
  if (name == "adam") return std::make_unique<Adam>(lr);
  if (name == "sgd") return std::make_unique<Sgd>(lr, momentum);
  throw std::invalid_argument("unknown optimizer '" + name + "'");
}

void ClipGradNorm(VectorXd& grads, double max_norm) {
  if (max_norm <= 0.0) return;
  const double n = grads.norm();
  if (n > max_norm) grads *= max_norm / n;
}

double GradientCheck(const std::function<double(const VectorXd&)>& f,
                     const VectorXd& x, const VectorXd& analytic, double eps,
                     double floor) {
  double worst = 0.0;
  VectorXd probe = x;
  for (int i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + eps;
    const double up = f(probe);
    probe[i] = x[i] - eps;
    const double down = f(probe);
    probe[i] = x[i];
    const double numeric = (up - down) / (2.0 * eps);
    const double denom =
        std::max({std::abs(analytic[i]), std::abs(numeric), floor});
    worst = std::max(worst, std::abs(analytic[i] - numeric) / denom);
  }
  return worst;
}

double GradientCheck(Network& net, const MatrixXd& input, const LossFn& loss,
                     double eps, double floor) {
  net.ZeroGrad();
  MatrixXd out = net.Forward(input);
  MatrixXd dinput = net.Backward(loss(out).second);
  const VectorXd analytic_params = net.grads();
  const VectorXd saved = net.params();

  auto param_loss = [&](const VectorXd& p) {
    net.params() = p;
    return loss(net.Predict(input)).first;
  };
  double worst = GradientCheck(param_loss, saved, analytic_params, eps, floor);
  net.params() = saved;

  const Eigen::Map<const VectorXd> flat_in(input.data(), input.size());
  const Eigen::Map<const VectorXd> flat_grad(dinput.data(), dinput.size());
  auto input_loss = [&](const VectorXd& v) {
    MatrixXd x = Eigen::Map<const MatrixXd>(v.data(), input.rows(), input.cols());
    return loss(net.Predict(x)).first;
  };
  worst = std::max(worst, GradientCheck(input_loss, VectorXd(flat_in),
                                        VectorXd(flat_grad), eps, floor));
  net.ZeroGrad();
  return worst;
}

}  // namespace swrl
