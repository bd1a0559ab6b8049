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

#ifndef SWRL_BASELINES_H_
#define SWRL_BASELINES_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "swrl/config.h"
#include "swrl/env.h"
#include "swrl/policy.h"

namespace swrl {

// Percent articulation gain over the manual run, clipped to +-clip. Missing
// when the manual run did not move.
std::optional<double> Rmp(double theta_method, double theta_manual,
                          double clip = 100.0);

struct TracePoint {
  double theta = 0.0;
  double w = 0.0;
};

// (theta, w) series: runs of equal theta collapse to one point, then the
// series is thinned to at most `max_points`, always keeping the last point.
std::vector<TracePoint> ManipulabilityTrace(const EpisodeLog& log, int max_points);

double MeanManipulability(const EpisodeLog& log);
// Fraction of the step budget with the velocity estimate inside `band`.
double BandOccupancy(const EpisodeLog& log, const Range& band, int max_steps);

struct CaseResult {
  int index = 0;
  std::uint64_t seed = 0;
  double theta = 0.0;
  double manual_theta = 0.0;
  std::optional<double> rmp;
  double mean_manipulability = 0.0;
  double manual_mean_manipulability = 0.0;
  double occupancy = 0.0;
  TerminationCause cause = TerminationCause::kNone;
  int steps = 0;
  std::vector<TracePoint> trace;
};

struct EvalReport {
  std::string method;
  std::vector<CaseResult> cases;
  double mean_theta = 0.0;
  double manual_mean_theta = 0.0;
  double mean_manipulability = 0.0;
  double manual_mean_manipulability = 0.0;
  double mean_occupancy = 0.0;
  // Mean of per-case RMP (how tabulated results are averaged) and the RMP of
  // the mean thetas; they differ in general.
  std::optional<double> mean_case_rmp;
  std::optional<double> rmp_of_means;
  int rmp_missing = 0;
  int theta_wins = 0;  // cases with theta >= manual theta
  int manipulability_wins = 0;
};

// Pairs method and manual logs case by case. Throws std::invalid_argument if
// the case seeds differ.
EvalReport Evaluate(const std::string& method,
                    const std::vector<EpisodeLog>& method_logs,
                    const std::vector<EpisodeLog>& manual_logs,
                    const ScenarioConfig& config);

using PolicyFactory = std::function<std::unique_ptr<Policy>()>;

// Runs one episode per evaluation case; results are in case order whatever
// the worker count.
std::vector<EpisodeLog> RunCases(const ScenarioConfig& config,
                                 const PolicyFactory& factory, int cases,
                                 int workers);

}  // namespace swrl

#endif  // SWRL_BASELINES_H_
