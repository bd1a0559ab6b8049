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

#include "swrl/baselines.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "swrl/training.h"

namespace swrl {

std::optional<double> Rmp(double theta_method, double theta_manual, double clip) {
  if (theta_manual == 0.0) return std::nullopt;
  const double r = 100.0 * (theta_method - theta_manual) / theta_manual;
  return std::clamp(r, -clip, clip);
}

std::vector<TracePoint> ManipulabilityTrace(const EpisodeLog& log, int max_points) {
  std::vector<TracePoint> dedup;
  for (const StepRecord& r : log.steps) {
    if (!dedup.empty() && dedup.back().theta == r.theta) {
      dedup.back().w = r.manipulability;
      continue;
    }
    dedup.push_back({r.theta, r.manipulability});
  }
  if (max_points <= 0 || static_cast<int>(dedup.size()) <= max_points) return dedup;
  std::vector<TracePoint> out;
  const double stride = static_cast<double>(dedup.size() - 1) / (max_points - 1);
  for (int i = 0; i < max_points; ++i) {
    out.push_back(dedup[static_cast<size_t>(std::llround(i * stride))]);
  }
  out.back() = dedup.back();
  return out;
}

double MeanManipulability(const EpisodeLog& log) {
  if (log.steps.empty()) return 0.0;
  double s = 0.0;
  for (const StepRecord& r : log.steps) s += r.manipulability;
  return s / log.steps.size();
}

double BandOccupancy(const EpisodeLog& log, const Range& band, int max_steps) {
  if (max_steps <= 0) return 0.0;
  int in = 0;
  for (const StepRecord& r : log.steps) in += RewardK(r.velocity_estimate, band) > 0.5;
  return static_cast<double>(in) / max_steps;
}

EvalReport Evaluate(const std::string& method,
                    const std::vector<EpisodeLog>& method_logs,
                    const std::vector<EpisodeLog>& manual_logs,
                    const ScenarioConfig& config) {
  if (method_logs.size() != manual_logs.size()) {
    throw std::invalid_argument("evaluation: method and manual case counts differ");
  }
  EvalReport rep;
  rep.method = method;
  const int max_steps =
      static_cast<int>(std::lround(config.mdp.episode_time * config.mdp.policy_rate));
  double rmp_sum = 0.0;
  int rmp_count = 0;
  for (size_t i = 0; i < method_logs.size(); ++i) {
    const EpisodeLog& m = method_logs[i];
    const EpisodeLog& b = manual_logs[i];
    if (m.case_seed != b.case_seed) {
      throw std::invalid_argument("evaluation: case " + std::to_string(i) +
                                  " is not paired (seed mismatch)");
    }
    CaseResult c;
    c.index = static_cast<int>(i);
    c.seed = m.case_seed;
    c.theta = m.terminal_theta;
    c.manual_theta = b.terminal_theta;
    c.rmp = Rmp(c.theta, c.manual_theta, config.eval.rmp_clip);
    c.mean_manipulability = MeanManipulability(m);
    c.manual_mean_manipulability = MeanManipulability(b);
    c.occupancy = BandOccupancy(m, config.mdp.velocity_band, max_steps);
    c.cause = m.cause;
    c.steps = static_cast<int>(m.steps.size());
    c.trace = ManipulabilityTrace(m, config.eval.trace_points);
    if (c.rmp) {
      rmp_sum += *c.rmp;
      ++rmp_count;
    } else {
      ++rep.rmp_missing;
    }
    rep.theta_wins += c.theta >= c.manual_theta;
    rep.manipulability_wins += c.mean_manipulability >= c.manual_mean_manipulability;
    rep.mean_theta += c.theta;
    rep.manual_mean_theta += c.manual_theta;
    rep.mean_manipulability += c.mean_manipulability;
    rep.manual_mean_manipulability += c.manual_mean_manipulability;
    rep.mean_occupancy += c.occupancy;
    rep.cases.push_back(std::move(c));
  }
  if (const double n = static_cast<double>(rep.cases.size()); n > 0) {
    rep.mean_theta /= n;
    rep.manual_mean_theta /= n;
    rep.mean_manipulability /= n;
    rep.manual_mean_manipulability /= n;
    rep.mean_occupancy /= n;
    rep.rmp_of_means = Rmp(rep.mean_theta, rep.manual_mean_theta, config.eval.rmp_clip);
  }
  if (rmp_count > 0) rep.mean_case_rmp = rmp_sum / rmp_count;
  return rep;
}

std::vector<EpisodeLog> RunCases(const ScenarioConfig& config,
                                 const PolicyFactory& factory, int cases,
                                 int workers) {
  std::vector<EpisodeLog> logs(std::max(cases, 0));
  ParallelFor(cases, workers, [&](int i) {
    ManipEnv env(config);
    std::unique_ptr<Policy> policy = factory();
    logs[i] = RunEpisode(env, *policy, EvalCaseSeed(config.seed, i));
  });
  return logs;
}

}  // namespace swrl
