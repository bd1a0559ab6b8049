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

#include "swrl/learners.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swrl {

namespace {

constexpr double kLogStdMin = -5.0;
constexpr double kLogStdMax = 1.0;
constexpr double kSquashEps = 1e-6;

MatrixXd Normal(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  MatrixXd m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = n(rng);
  return m;
}

MatrixXd Stack(const MatrixXd& top, const MatrixXd& bottom) {
  MatrixXd out(top.rows() + bottom.rows(), top.cols());
  out << top, bottom;
  return out;
}

// Column-wise log-softmax.
MatrixXd LogSoftmax(const MatrixXd& logits) {
  MatrixXd out = logits;
  for (int c = 0; c < out.cols(); ++c) {
    const double m = out.col(c).maxCoeff();
    const double lse = m + std::log((out.col(c).array() - m).exp().sum());
    out.col(c).array() -= lse;
  }
  return out;
}

void CheckFinite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::runtime_error(std::string("non-finite ") + what +
                             "; training diverged");
  }
}

ParamBlock Block(const std::string& name, Network& net) {
  return {name, &net.params(), net.Shapes()};
}

void ApplyStep(Network& net, Optimizer& opt, double clip) {
  ClipGradNorm(net.grads(), clip);
  opt.Step(net.params(), net.grads());
}

int ArgMax(const VectorXd& v) {
  int best = 0;
  for (int i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

}  // namespace

NetworkSpec MakeSpec(const LearnerConfig& config, const FeatureLayout& layout,
                     int extra, int output_dim, double output_scale) {
  NetworkSpec spec;
  spec.input_dim = layout.input_dim + extra;
  spec.output_dim = output_dim;
  spec.output_scale = output_scale;
  if (config.feature_mode == "recurrent") {
    spec.seq_steps = layout.window;
    spec.frame_dim = layout.frame_dim;
    spec.lstm_hidden = config.hidden;
    spec.hidden = {config.hidden};
  } else {
    spec.hidden = {config.hidden, config.hidden};
  }
  return spec;
}

SquashedSample SampleSquashed(const MatrixXd& mean, const MatrixXd& raw_log_std,
                              double a_max, const MatrixXd& eps) {
  SquashedSample s;
  s.eps = eps;
  s.log_std = (kLogStdMin + 0.5 * (kLogStdMax - kLogStdMin) *
                                (raw_log_std.array().tanh() + 1.0))
                  .matrix();
  s.u = mean + (s.log_std.array().exp() * eps.array()).matrix();
  const MatrixXd t = s.u.array().tanh().matrix();
  s.a = a_max * t;
  const double log_norm = 0.5 * std::log(2.0 * std::numbers::pi);
  MatrixXd per = (-0.5 * eps.array().square() - s.log_std.array() - log_norm -
                  std::log(a_max) -
                  (1.0 - t.array().square() + kSquashEps).log())
                     .matrix();
  s.logp = per.colwise().sum().transpose();
  return s;
}

void SquashedBackward(const SquashedSample& s, const MatrixXd& raw_log_std,
                      double a_max, const VectorXd& dlogp, const MatrixXd& da,
                      MatrixXd* dmean, MatrixXd* draw_log_std) {
  const auto t = s.u.array().tanh();
  const auto one_minus = 1.0 - t.square();
  const auto ds_du = 2.0 * t * one_minus / (one_minus + kSquashEps);
  const auto sigma_eps = s.log_std.array().exp() * s.eps.array();
  const MatrixXd dlogp_row = dlogp.transpose().replicate(s.u.rows(), 1);
  const auto dl = dlogp_row.array();
  const auto da_du = da.array() * a_max * one_minus;
  *dmean = (dl * ds_du + da_du).matrix();
  const auto dls = dl * (-1.0 + ds_du * sigma_eps) + da_du * sigma_eps;
  const auto dls_draw = 0.5 * (kLogStdMax - kLogStdMin) *
                        (1.0 - raw_log_std.array().tanh().square());
  *draw_log_std = (dls * dls_draw).matrix();
}

// ---------------------------------------------------------------------------

DqnLearner::DqnLearner(const LearnerConfig& config, const FeatureLayout& layout,
                       int num_actions, std::uint64_t seed)
    : config_(config), num_actions_(num_actions) {
  std::mt19937_64 rng(seed);
  q_ = Network(MakeSpec(config, layout, 0, num_actions), rng);
  target_ = q_;
  opt_ = MakeOptimizer(config.optimizer, config.learning_rate, config.momentum);
}

int DqnLearner::Greedy(const VectorXd& obs) const {
  return ArgMax(q_.Predict(obs).col(0));
}

int DqnLearner::Act(const VectorXd& obs, double epsilon,
                    std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (u(rng) < epsilon) {
    return std::uniform_int_distribution<int>(0, num_actions_ - 1)(rng);
  }
  return Greedy(obs);
}

double DqnLearner::Epsilon(long step) const {
  if (config_.epsilon_decay_steps <= 0) return config_.epsilon_end;
  if (step >= config_.epsilon_decay_steps) return config_.epsilon_end;
  const double frac = step / config_.epsilon_decay_steps;
  return config_.epsilon_start + frac * (config_.epsilon_end - config_.epsilon_start);
}

double DqnLearner::Update(const Batch& batch) {
  const int b = batch.size();
  const MatrixXd next_online = q_.Predict(batch.next_obs);
  const MatrixXd next_target = target_.Predict(batch.next_obs);
  const MatrixXd q = q_.Forward(batch.obs);
  MatrixXd grad = MatrixXd::Zero(num_actions_, b);
  double loss = 0.0;
  for (int i = 0; i < b; ++i) {
    const int a_star = ArgMax(next_online.col(i));
    const double y = batch.r_k[i] + config_.gamma * batch.not_terminal[i] *
                                        next_target(a_star, i);
    const double diff = q(batch.force_index[i], i) - y;
    const double ad = std::abs(diff);
    loss += ad <= 1.0 ? 0.5 * diff * diff : ad - 0.5;
    grad(batch.force_index[i], i) = std::clamp(diff, -1.0, 1.0) / b;
  }
  loss /= b;
  CheckFinite(loss, "force-policy loss");
  q_.ZeroGrad();
  q_.Backward(grad);
  ApplyStep(q_, *opt_, config_.grad_clip);
  target_.SoftUpdateFrom(q_, config_.polyak);
  return loss;
}

ParamBlocks DqnLearner::Parameters() {
  return {Block("q", q_), Block("q_target", target_)};
}

// ---------------------------------------------------------------------------

SacLearner::SacLearner(const LearnerConfig& config, const FeatureLayout& layout,
                       int action_dim, double a_max, std::uint64_t seed)
    : config_(config), action_dim_(action_dim), a_max_(a_max), rng_(seed) {
  actor_ = Network(MakeSpec(config, layout, 0, 2 * action_dim, 0.1), rng_);
  q1_ = Network(MakeSpec(config, layout, action_dim, 1), rng_);
  q2_ = Network(MakeSpec(config, layout, action_dim, 1), rng_);
  q1_target_ = q1_;
  q2_target_ = q2_;
  const double lr = config.learning_rate;
  actor_opt_ = MakeOptimizer(config.optimizer, lr, config.momentum);
  q1_opt_ = MakeOptimizer(config.optimizer, lr, config.momentum);
  q2_opt_ = MakeOptimizer(config.optimizer, lr, config.momentum);
  alpha_opt_ = std::make_unique<Adam>(lr);
  log_alpha_ = VectorXd::Constant(1, std::log(config.init_entropy_coef));
  target_entropy_ = -static_cast<double>(action_dim);
}

double SacLearner::alpha() const { return std::exp(log_alpha_[0]); }

VectorXd SacLearner::Act(const VectorXd& obs, bool deterministic,
                         std::mt19937_64& rng) const {
  const MatrixXd out = actor_.Predict(obs);
  const MatrixXd mean = out.topRows(action_dim_);
  if (deterministic) return (a_max_ * mean.array().tanh()).matrix().col(0);
  SquashedSample s = SampleSquashed(mean, out.bottomRows(action_dim_), a_max_,
                                    Normal(action_dim_, 1, rng));
  return s.a.col(0);
}

double SacLearner::ActorObjective(const MatrixXd& obs, const MatrixXd& eps,
                                  bool backprop) {
  const int b = static_cast<int>(obs.cols());
  const int n = action_dim_;
  const MatrixXd out = actor_.Forward(obs);
  const MatrixXd raw = out.bottomRows(n);
  SquashedSample s = SampleSquashed(out.topRows(n), raw, a_max_, eps);
  const MatrixXd in = Stack(obs, s.a);
  const MatrixXd v1 = q1_.Forward(in);
  const MatrixXd v2 = q2_.Forward(in);
  const double a = alpha();
  double loss = 0.0;
  MatrixXd g1 = MatrixXd::Zero(1, b);
  MatrixXd g2 = MatrixXd::Zero(1, b);
  for (int i = 0; i < b; ++i) {
    const bool first = v1(0, i) <= v2(0, i);
    loss += a * s.logp[i] - (first ? v1(0, i) : v2(0, i));
    (first ? g1 : g2)(0, i) = -1.0 / b;
  }
  loss /= b;
  last_logp_ = s.logp.mean();
  if (backprop) {
    const MatrixXd d1 = q1_.Backward(g1);
    const MatrixXd d2 = q2_.Backward(g2);
    q1_.ZeroGrad();
    q2_.ZeroGrad();
    const MatrixXd da = (d1 + d2).bottomRows(n);
    MatrixXd dmean, draw;
    SquashedBackward(s, raw, a_max_, VectorXd::Constant(b, a / b), da, &dmean,
                     &draw);
    actor_.ZeroGrad();
    actor_.Backward(Stack(dmean, draw));
  }
  return loss;
}

SacLearner::Stats SacLearner::Update(const Batch& batch, const VectorXd& reward) {
  const int b = batch.size();
  const int n = action_dim_;
  Stats stats;
  // Critic targets.
  const MatrixXd next_out = actor_.Predict(batch.next_obs);
  SquashedSample next = SampleSquashed(next_out.topRows(n), next_out.bottomRows(n),
                                       a_max_, Normal(n, b, rng_));
  const MatrixXd next_in = Stack(batch.next_obs, next.a);
  const MatrixXd t1 = q1_target_.Predict(next_in);
  const MatrixXd t2 = q2_target_.Predict(next_in);
  const double a = alpha();
  VectorXd y(b);
  for (int i = 0; i < b; ++i) {
    const double v = std::min(t1(0, i), t2(0, i)) - a * next.logp[i];
    y[i] = reward[i] + config_.gamma * batch.not_terminal[i] * v;
  }
  const MatrixXd in = Stack(batch.obs, batch.accel);
  for (auto [net, opt] : {std::pair{&q1_, q1_opt_.get()}, std::pair{&q2_, q2_opt_.get()}}) {
    const MatrixXd q = net->Forward(in);
    const MatrixXd diff = q - y.transpose();
    stats.critic_loss += 0.5 * diff.squaredNorm() / b;
    net->ZeroGrad();
    net->Backward(diff / b);
    ApplyStep(*net, *opt, config_.grad_clip);
  }
  CheckFinite(stats.critic_loss, "redundant-policy critic loss");

  stats.actor_loss = ActorObjective(batch.obs, Normal(n, b, rng_), true);
  CheckFinite(stats.actor_loss, "redundant-policy actor loss");
  ApplyStep(actor_, *actor_opt_, config_.grad_clip);

  if (config_.auto_entropy) {
    VectorXd g(1);
    g[0] = -(last_logp_ + target_entropy_);
    alpha_opt_->Step(log_alpha_, g);
  }
  stats.alpha = alpha();
  stats.entropy = -last_logp_;
  q1_target_.SoftUpdateFrom(q1_, config_.polyak);
  q2_target_.SoftUpdateFrom(q2_, config_.polyak);
  return stats;
}

ParamBlocks SacLearner::Parameters() {
  return {Block("actor", actor_),          Block("q1", q1_),
          Block("q2", q2_),                Block("q1_target", q1_target_),
          Block("q2_target", q2_target_),  {"log_alpha", &log_alpha_, {{1, 1}}}};
}

// ---------------------------------------------------------------------------

VanillaLearner::VanillaLearner(const LearnerConfig& config,
                               const FeatureLayout& layout, int num_actions,
                               int action_dim, double a_max, std::uint64_t seed)
    : config_(config),
      num_actions_(num_actions),
      action_dim_(action_dim),
      a_max_(a_max),
      rng_(seed) {
  actor_ = Network(
      MakeSpec(config, layout, 0, num_actions + 2 * action_dim, 0.1), rng_);
  q1_ = Network(MakeSpec(config, layout, action_dim, num_actions), rng_);
  q2_ = Network(MakeSpec(config, layout, action_dim, num_actions), rng_);
  q1_target_ = q1_;
  q2_target_ = q2_;
  const double lr = config.learning_rate;
  actor_opt_ = MakeOptimizer(config.optimizer, lr, config.momentum);
  q1_opt_ = MakeOptimizer(config.optimizer, lr, config.momentum);
  q2_opt_ = MakeOptimizer(config.optimizer, lr, config.momentum);
  alpha_opt_ = std::make_unique<Adam>(lr);
  log_alpha_ = VectorXd::Constant(2, std::log(config.init_entropy_coef));
  target_entropy_discrete_ = 0.3 * std::log(static_cast<double>(num_actions));
  target_entropy_continuous_ = -static_cast<double>(action_dim);
}

std::pair<int, VectorXd> VanillaLearner::Act(const VectorXd& obs,
                                             bool deterministic,
                                             std::mt19937_64& rng) const {
  const MatrixXd out = actor_.Predict(obs);
  const int k = num_actions_;
  const int n = action_dim_;
  const MatrixXd mean = out.middleRows(k, n);
  if (deterministic) {
    return {ArgMax(out.topRows(k).col(0)),
            (a_max_ * mean.array().tanh()).matrix().col(0)};
  }
  const VectorXd p = LogSoftmax(out.topRows(k)).col(0).array().exp();
  std::discrete_distribution<int> pick(p.data(), p.data() + p.size());
  const int index = pick(rng);
  SquashedSample s =
      SampleSquashed(mean, out.bottomRows(n), a_max_, Normal(n, 1, rng));
  return {index, s.a.col(0)};
}

double VanillaLearner::ActorObjective(const MatrixXd& obs, const MatrixXd& eps,
                                      bool backprop) {
  const int b = static_cast<int>(obs.cols());
  const int k = num_actions_;
  const int n = action_dim_;
  const MatrixXd out = actor_.Forward(obs);
  const MatrixXd logp_d = LogSoftmax(out.topRows(k));
  const MatrixXd pi = logp_d.array().exp().matrix();
  const MatrixXd raw = out.bottomRows(n);
  SquashedSample s = SampleSquashed(out.middleRows(k, n), raw, a_max_, eps);
  const MatrixXd in = Stack(obs, s.a);
  const MatrixXd v1 = q1_.Forward(in);
  const MatrixXd v2 = q2_.Forward(in);
  const MatrixXd mask = (v1.array() <= v2.array()).cast<double>().matrix();
  const MatrixXd qmin = v1.cwiseMin(v2);
  const double ad = std::exp(log_alpha_[0]);
  const double ac = std::exp(log_alpha_[1]);
  const MatrixXd g = (ad * logp_d - qmin);
  double loss = (pi.cwiseProduct(g).colwise().sum().transpose() + ac * s.logp).sum() / b;
  last_entropy_discrete_ = -pi.cwiseProduct(logp_d).sum() / b;
  last_logp_ = s.logp.mean();
  if (backprop) {
    const MatrixXd dpi = (g.array() + ad).matrix() / b;
    const MatrixXd inner = pi.cwiseProduct(dpi).colwise().sum();
    const MatrixXd dlogits =
        pi.cwiseProduct(dpi - inner.replicate(k, 1));
    const MatrixXd d1 = q1_.Backward(-pi.cwiseProduct(mask) / b);
    const MatrixXd d2 =
        q2_.Backward(-pi.cwiseProduct((1.0 - mask.array()).matrix()) / b);
    q1_.ZeroGrad();
    q2_.ZeroGrad();
    const MatrixXd da = (d1 + d2).bottomRows(n);
    MatrixXd dmean, draw;
    SquashedBackward(s, raw, a_max_, VectorXd::Constant(b, ac / b), da, &dmean,
                     &draw);
    MatrixXd grad(k + 2 * n, b);
    grad << dlogits, dmean, draw;
    actor_.ZeroGrad();
    actor_.Backward(grad);
  }
  return loss;
}

VanillaLearner::Stats VanillaLearner::Update(const Batch& batch) {
  const int b = batch.size();
  const int k = num_actions_;
  const int n = action_dim_;
  Stats stats;
  const MatrixXd next_out = actor_.Predict(batch.next_obs);
  const MatrixXd next_logp = LogSoftmax(next_out.topRows(k));
  const MatrixXd next_pi = next_logp.array().exp().matrix();
  SquashedSample next = SampleSquashed(next_out.middleRows(k, n),
                                       next_out.bottomRows(n), a_max_,
                                       Normal(n, b, rng_));
  const MatrixXd next_in = Stack(batch.next_obs, next.a);
  const MatrixXd tq = q1_target_.Predict(next_in).cwiseMin(q2_target_.Predict(next_in));
  const double ad = std::exp(log_alpha_[0]);
  const double ac = std::exp(log_alpha_[1]);
  VectorXd y(b);
  for (int i = 0; i < b; ++i) {
    const double v = next_pi.col(i).dot(tq.col(i) - ad * next_logp.col(i)) -
                     ac * next.logp[i];
    y[i] = batch.r_k[i] + batch.r_r[i] + config_.gamma * batch.not_terminal[i] * v;
  }
  const MatrixXd in = Stack(batch.obs, batch.accel);
  for (auto [net, opt] : {std::pair{&q1_, q1_opt_.get()}, std::pair{&q2_, q2_opt_.get()}}) {
    const MatrixXd q = net->Forward(in);
    MatrixXd grad = MatrixXd::Zero(k, b);
    for (int i = 0; i < b; ++i) {
      const double diff = q(batch.force_index[i], i) - y[i];
      stats.critic_loss += 0.5 * diff * diff / b;
      grad(batch.force_index[i], i) = diff / b;
    }
    net->ZeroGrad();
    net->Backward(grad);
    ApplyStep(*net, *opt, config_.grad_clip);
  }
  CheckFinite(stats.critic_loss, "vanilla critic loss");
  stats.actor_loss = ActorObjective(batch.obs, Normal(n, b, rng_), true);
  CheckFinite(stats.actor_loss, "vanilla actor loss");
  ApplyStep(actor_, *actor_opt_, config_.grad_clip);
  if (config_.auto_entropy) {
    VectorXd g(2);
    g[0] = last_entropy_discrete_ - target_entropy_discrete_;
    g[1] = -(last_logp_ + target_entropy_continuous_);
    alpha_opt_->Step(log_alpha_, g);
  }
  stats.alpha_discrete = std::exp(log_alpha_[0]);
  stats.alpha_continuous = std::exp(log_alpha_[1]);
  q1_target_.SoftUpdateFrom(q1_, config_.polyak);
  q2_target_.SoftUpdateFrom(q2_, config_.polyak);
  return stats;
}

ParamBlocks VanillaLearner::Parameters() {
  return {Block("actor", actor_),         Block("q1", q1_),
          Block("q2", q2_),               Block("q1_target", q1_target_),
          Block("q2_target", q2_target_), {"log_alpha", &log_alpha_, {{2, 1}}}};
}

// ---------------------------------------------------------------------------

BcModel::BcModel(const LearnerConfig& config, const FeatureLayout& layout,
                 int num_actions, int action_dim, double a_max,
                 std::uint64_t seed)
    : config_(config),
      num_actions_(num_actions),
      action_dim_(action_dim),
      a_max_(a_max) {
  std::mt19937_64 rng(seed);
  net_ = Network(MakeSpec(config, layout, 0, num_actions + action_dim), rng);
  opt_ = MakeOptimizer(config.optimizer, config.learning_rate, config.momentum);
}

std::pair<int, VectorXd> BcModel::Act(const VectorXd& obs) const {
  const MatrixXd out = net_.Predict(obs);
  return {ArgMax(out.topRows(num_actions_).col(0)),
          (a_max_ * out.bottomRows(action_dim_).array().tanh()).matrix().col(0)};
}

std::pair<double, MatrixXd> BcModel::OutputLoss(const MatrixXd& out,
                                                const Batch& batch) const {
  const int b = static_cast<int>(out.cols());
  const int k = num_actions_;
  const int n = action_dim_;
  const MatrixXd logp = LogSoftmax(out.topRows(k));
  MatrixXd grad(k + n, b);
  grad.topRows(k) = logp.array().exp().matrix() / b;
  double ce = 0.0;
  for (int i = 0; i < b; ++i) {
    ce -= logp(batch.force_index[i], i);
    grad(batch.force_index[i], i) -= 1.0 / b;
  }
  double mse = 0.0;
  if (n > 0) {
    const MatrixXd t = out.bottomRows(n).array().tanh().matrix();
    const MatrixXd diff = a_max_ * t - batch.accel;
    mse = diff.squaredNorm() / (b * n);
    grad.bottomRows(n) =
        (2.0 / (b * n) * diff.array() * a_max_ * (1.0 - t.array().square())).matrix();
  }
  return {ce / b + mse, grad};
}

BcModel::Loss BcModel::Evaluate(const Batch& batch) const {
  Loss loss;
  if (batch.size() == 0) return loss;
  const MatrixXd out = net_.Predict(batch.obs);
  loss.total = OutputLoss(out, batch).first;
  const MatrixXd logp = LogSoftmax(out.topRows(num_actions_));
  int correct = 0;
  for (int i = 0; i < batch.size(); ++i) {
    loss.cross_entropy -= logp(batch.force_index[i], i) / batch.size();
    correct += ArgMax(out.topRows(num_actions_).col(i)) == batch.force_index[i];
  }
  loss.mse = loss.total - loss.cross_entropy;
  loss.accuracy = static_cast<double>(correct) / batch.size();
  return loss;
}

BcModel::Loss BcModel::Step(const Batch& batch) {
  net_.ZeroGrad();
  const MatrixXd out = net_.Forward(batch.obs);
  auto [value, grad] = OutputLoss(out, batch);
  CheckFinite(value, "behaviour-cloning loss");
  net_.Backward(grad);
  ApplyStep(net_, *opt_, config_.grad_clip);
  Loss loss;
  loss.total = value;
  return loss;
}

ParamBlocks BcModel::Parameters() { return {Block("policy", net_)}; }

}  // namespace swrl
