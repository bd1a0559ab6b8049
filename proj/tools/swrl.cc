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

// swrl: train, evaluate, collect offline data and plot.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "swrl/config.h"
#include "swrl/experiment.h"
#include "swrl/io.h"

namespace {

using namespace swrl;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitArtifact = 3;
constexpr int kExitRuntime = 4;

struct Common {
  std::string config = "reduced_valve";
  std::optional<std::uint64_t> seed;
  std::string out;
  int workers = 1;
};

// A file path, or the name of a built-in preset.
ScenarioConfig Resolve(const Common& c) {
  ScenarioConfig config;
  if (std::filesystem::exists(c.config)) {
    config = LoadConfig(c.config);
  } else {
    const auto names = PresetNames();
    if (std::find(names.begin(), names.end(), c.config) == names.end()) {
      throw ConfigError("--config", "'" + c.config + "' is neither a file nor a preset");
    }
    config = PresetConfig(c.config);
  }
  if (c.seed) config.seed = *c.seed;
  config.Validate();
  return config;
}

void AddCommon(CLI::App* app, Common& c, bool needs_out) {
  app->add_option("--config", c.config, "config file or preset name")->capture_default_str();
  app->add_option("--seed", c.seed, "overrides the config seed");
  auto* out = app->add_option("--out", c.out, "output directory or file");
  if (needs_out) out->required();
  app->add_option("--workers", c.workers, "worker threads (SWRL_WORKERS overrides)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

int CmdTrain(const Common& c, const std::string& algo, std::optional<int> episodes, bool plot) {
  const ScenarioConfig config = Resolve(c);
  Model model(config, algo);
  const int workers = ResolveWorkers(c.workers);
  const std::vector<Transition> offline = OfflineData(config, algo, workers);
  const int n = episodes.value_or(config.learner.episodes);
  std::filesystem::create_directories(c.out);
  SaveConfig(config, c.out + "/config.json");
  const TrainOutcome result = Train(config, model, n, offline, [&](const EpisodeSummary& e) {
    if ((e.episode + 1) % 10 == 0 || e.episode + 1 == n) {
      std::fprintf(stderr, "[%s] episode %d/%d band_steps=%d theta=%.3f %s\n", algo.c_str(),
                   e.episode + 1, n, e.band_steps, e.terminal_theta, ToString(e.cause).c_str());
    }
  });
  SaveCheckpoint(c.out + "/checkpoint", algo, model.Parameters(), config);
  if (result.bc) {
    std::string csv = "# " + ProvenanceLine(config) + " algo=bc\nepoch,loss\n";
    for (size_t i = 0; i < result.bc->epoch_loss.size(); ++i) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%zu,%.10g\n", i + 1, result.bc->epoch_loss[i]);
      csv += buf;
    }
    std::ofstream(c.out + "/bc_loss.csv") << csv;
    std::fprintf(stderr, "[bc] holdout accuracy %.3f, mse %.4f over %d samples\n",
                 result.bc->holdout_accuracy, result.bc->holdout_mse, result.bc->holdout_size);
    return kExitOk;
  }
  WriteCurveCsv(c.out + "/curves.csv", algo, result.curve, config);
  WriteEpisodeSummaries(c.out + "/episodes.jsonl", algo, result.curve, config);
  if (plot) {
    std::vector<double> x, y;
    for (const EpisodeSummary& e : result.curve) {
      x.push_back(e.episode);
      y.push_back(e.band_steps);
    }
    WriteSvgPlot(c.out + "/curves.svg", algo + " learning curve", "episode",
                 "in-band steps (smoothed)", {{algo, x, Smooth(y, 10)}}, config);
  }
  return kExitOk;
}

int CmdEval(const Common& c, const std::string& algo, const std::string& checkpoint,
            std::optional<int> cases, bool plot, bool trajectories) {
  const ScenarioConfig config = Resolve(c);
  const auto& names = EvaluableAlgorithms();
  if (std::find(names.begin(), names.end(), algo) == names.end()) {
    throw ConfigError("algo", "unknown algorithm '" + algo + "'");
  }
  std::optional<Model> model;
  PolicyFactory factory = ManualFactory(config);
  if (algo != "manual") {
    if (checkpoint.empty()) throw ConfigError("--checkpoint", "required for " + algo);
    model.emplace(config, algo);
    LoadCheckpoint(checkpoint, algo, model->Parameters(), config);
    factory = model->Factory();
  }
  const int n = cases.value_or(config.eval.cases);
  std::vector<EpisodeLog> logs;
  const EvalReport report =
      EvaluateAgainstManual(config, algo, factory, n, ResolveWorkers(c.workers), &logs);
  std::filesystem::create_directories(c.out);
  WriteEvalCsv(c.out + "/eval.csv", report, config);
  WriteEvalJson(c.out + "/eval.json", report, config);
  WriteTraceCsv(c.out + "/trace.csv", report, config);
  std::vector<EpisodeSummary> summaries;
  for (size_t i = 0; i < logs.size(); ++i) {
    summaries.push_back(Summarize(static_cast<int>(i), logs[i], config.mdp.velocity_band));
  }
  WriteEpisodeSummaries(c.out + "/episodes.jsonl", algo, summaries, config);
  if (trajectories) {
    std::filesystem::create_directories(c.out + "/episodes");
    for (size_t i = 0; i < logs.size(); ++i) {
      char name[64];
      std::snprintf(name, sizeof(name), "/episodes/case_%03zu.csv", i);
      WriteEpisodeCsv(c.out + name, logs[i], config);
    }
  }
  if (plot) {
    for (const CaseResult& r : report.cases) {
      PlotLine line{algo, {}, {}};
      for (const TracePoint& p : r.trace) {
        line.x.push_back(p.theta);
        line.y.push_back(p.w);
      }
      char name[64];
      std::snprintf(name, sizeof(name), "/plots/case_%03d.svg", r.index);
      WriteSvgPlot(c.out + name, "case " + std::to_string(r.index) + " manipulability",
                   "articulation", "manipulability", {line}, config);
    }
  }
  std::printf("%s: mean theta %.4f (manual %.4f), mean manipulability %.5f (manual %.5f)\n",
              algo.c_str(), report.mean_theta, report.manual_mean_theta,
              report.mean_manipulability, report.manual_mean_manipulability);
  return kExitOk;
}

int CmdCollect(const Common& c, int episodes) {
  const ScenarioConfig config = Resolve(c);
  const std::vector<Transition> data =
      CollectOffline(config, episodes, ResolveWorkers(c.workers));
  WriteDataset(c.out, data, config);
  std::printf("%zu transitions from %d episodes -> %s (checksum %s)\n", data.size(), episodes,
              c.out.c_str(), HexHash(DatasetChecksum(data)).c_str());
  return kExitOk;
}

int CmdPlot(const Common& c, const std::vector<std::string>& inputs, int window) {
  const ScenarioConfig config = Resolve(c);
  std::vector<PlotLine> lines;
  for (const std::string& path : inputs) {
    const CurveSeries s = ReadCurveCsv(path);
    lines.push_back({s.label, s.episode, Smooth(s.occupancy, window)});
  }
  WriteSvgPlot(c.out, "band occupancy", "episode", "occupancy (smoothed)", lines, config);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subspace-wise hybrid RL harness"};
  app.require_subcommand(1);

  Common train_c, eval_c, collect_c, plot_c;
  std::string train_algo = "swrl", eval_algo = "manual", checkpoint;
  std::optional<int> train_episodes, eval_cases;
  bool train_plot = false, eval_plot = false, eval_traj = false;
  int collect_episodes = 20, plot_window = 10;
  std::vector<std::string> plot_inputs;

  auto* train = app.add_subcommand("train", "train a policy");
  AddCommon(train, train_c, true);
  train->add_option("--algo", train_algo, "swrl | swrl_sk | swrl_sr | vanilla | bc")
      ->capture_default_str();
  train->add_option("--episodes", train_episodes, "overrides learner.episodes");
  train->add_flag("--plot", train_plot, "write a learning-curve SVG");

  auto* eval = app.add_subcommand("eval", "evaluate against the manual baseline");
  AddCommon(eval, eval_c, true);
  eval->add_option("--algo", eval_algo, "manual | swrl | swrl_sk | swrl_sr | vanilla | bc")
      ->capture_default_str();
  eval->add_option("--checkpoint", checkpoint, "checkpoint directory");
  eval->add_option("--episodes,--cases", eval_cases, "overrides eval.cases");
  eval->add_flag("--plot", eval_plot, "one manipulability SVG per case");
  eval->add_flag("--trajectories", eval_traj, "per-step CSV for every case");

  auto* collect = app.add_subcommand("collect-offline", "record manual-baseline transitions");
  AddCommon(collect, collect_c, true);
  collect->add_option("--episodes", collect_episodes)->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  auto* plot = app.add_subcommand("plot", "plot learning curves from curves CSV files");
  AddCommon(plot, plot_c, true);
  plot->add_option("inputs", plot_inputs, "curves.csv files")->required();
  plot->add_option("--window", plot_window, "smoothing window")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*train) return CmdTrain(train_c, train_algo, train_episodes, train_plot);
    if (*eval) return CmdEval(eval_c, eval_algo, checkpoint, eval_cases, eval_plot, eval_traj);
    if (*collect) return CmdCollect(collect_c, collect_episodes);
    if (*plot) return CmdPlot(plot_c, plot_inputs, plot_window);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ArtifactMismatch& e) {
    std::cerr << "artifact mismatch: " << e.what() << "\n";
    return kExitArtifact;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitRuntime;
}
