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

#ifndef SWRL_REPLAY_H_
#define SWRL_REPLAY_H_

#include <cstdint>
#include <random>
#include <vector>

#include "swrl/env.h"
#include "swrl/nn.h"

namespace swrl {

struct Transition {
  VectorXd obs;
  int force_index = 1;
  VectorXd accel;
  double r_k = 0.0;  // terminal penalty already included
  double r_r = 0.0;
  VectorXd next_obs;
  bool done = false;
  TerminationCause cause = TerminationCause::kNone;

  // Episode ends that stop bootstrapping; time-outs are truncations.
  bool terminal() const { return done && cause != TerminationCause::kTimeout; }
};

// Column-stacked minibatch.
struct Batch {
  MatrixXd obs, next_obs, accel;
  std::vector<int> force_index;
  VectorXd r_k, r_r;
  VectorXd not_terminal;  // 0 where bootstrapping stops
  int online = 0;
  int offline = 0;
  int size() const { return static_cast<int>(force_index.size()); }
};

Batch MakeBatch(const std::vector<const Transition*>& items);

// Online ring buffer plus an immutable offline partition. With mixing and
// both partitions non-empty every batch holds ceil(B/2) online and
// floor(B/2) offline samples.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(int capacity);

  void Add(Transition t);
  void SetOffline(std::vector<Transition> offline);

  int online_size() const { return static_cast<int>(online_.size()); }
  int offline_size() const { return static_cast<int>(offline_.size()); }
  int capacity() const { return capacity_; }
  // True once a mixed draw had to fall back to online-only sampling.
  bool fell_back() const { return fell_back_; }

  Batch Sample(int batch_size, bool mixing, std::mt19937_64& rng);

 private:
  int capacity_;
  int next_ = 0;
  std::vector<Transition> online_;
  std::vector<Transition> offline_;
  bool fell_back_ = false;
};

}  // namespace swrl

#endif  // SWRL_REPLAY_H_
