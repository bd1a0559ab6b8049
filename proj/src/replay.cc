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

#include "swrl/replay.h"

#include <iostream>
#include <stdexcept>

namespace swrl {

Batch MakeBatch(const std::vector<const Transition*>& items) {
  Batch b;
  if (items.empty()) return b;
  const int n = static_cast<int>(items.size());
  const int d = static_cast<int>(items[0]->obs.size());
  const int m = static_cast<int>(items[0]->accel.size());
  b.obs.resize(d, n);
  b.next_obs.resize(d, n);
  b.accel.resize(m, n);
  b.force_index.resize(n);
  b.r_k.resize(n);
  b.r_r.resize(n);
  b.not_terminal.resize(n);
  for (int i = 0; i < n; ++i) {
    const Transition& t = *items[i];
    b.obs.col(i) = t.obs;
    b.next_obs.col(i) = t.next_obs;
    b.accel.col(i) = t.accel;
    b.force_index[i] = t.force_index;
    b.r_k[i] = t.r_k;
    b.r_r[i] = t.r_r;
    b.not_terminal[i] = t.terminal() ? 0.0 : 1.0;
  }
  return b;
}

ReplayBuffer::ReplayBuffer(int capacity) : capacity_(capacity) {
  if (capacity <= 0) throw std::invalid_argument("replay capacity must be > 0");
}

void ReplayBuffer::Add(Transition t) {
  if (static_cast<int>(online_.size()) < capacity_) {
    online_.push_back(std::move(t));
  } else {
    online_[next_] = std::move(t);
  }
  next_ = (next_ + 1) % capacity_;
}

void ReplayBuffer::SetOffline(std::vector<Transition> offline) {
  offline_ = std::move(offline);
}

Batch ReplayBuffer::Sample(int batch_size, bool mixing, std::mt19937_64& rng) {
  if (batch_size <= 0) throw std::invalid_argument("batch size must be > 0");
  int n_online = batch_size;
  int n_offline = 0;
  if (mixing) {
    if (!online_.empty() && !offline_.empty()) {
      n_online = (batch_size + 1) / 2;
      n_offline = batch_size / 2;
    } else if (!fell_back_) {
      fell_back_ = true;
      std::clog << "replay: offline mixing requested but a partition is empty; "
                   "sampling online only\n";
    }
  }
  const std::vector<Transition>& primary = online_.empty() ? offline_ : online_;
  if (primary.empty()) throw std::logic_error("sampling from an empty replay buffer");
  std::vector<const Transition*> items;
  items.reserve(batch_size);
  std::uniform_int_distribution<size_t> pick_on(0, primary.size() - 1);
  for (int i = 0; i < n_online; ++i) items.push_back(&primary[pick_on(rng)]);
  if (n_offline > 0) {
    std::uniform_int_distribution<size_t> pick_off(0, offline_.size() - 1);
    for (int i = 0; i < n_offline; ++i) items.push_back(&offline_[pick_off(rng)]);
  }
  Batch b = MakeBatch(items);
  b.online = online_.empty() ? 0 : n_online;
  b.offline = batch_size - b.online;
  return b;
}

}  // namespace swrl
