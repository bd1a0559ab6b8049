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

#ifndef SWRL_IO_H_
#define SWRL_IO_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "swrl/baselines.h"
#include "swrl/config.h"
#include "swrl/learners.h"
#include "swrl/replay.h"
#include "swrl/training.h"

namespace swrl {

// A persisted artifact does not fit what the caller expects (bad magic,
// corrupted payload, parameter shapes that differ from the model).
class ArtifactMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kDatasetSchemaVersion = 1;
inline constexpr int kCheckpointFormatVersion = 1;

struct DatasetHeader {
  int schema_version = kDatasetSchemaVersion;
  int obs_dim = 0;
  int accel_dim = 0;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::uint64_t count = 0;
  std::string checksum;
};

// FNV-1a over the serialized records.
std::uint64_t DatasetChecksum(const std::vector<Transition>& data);

// "SWRL1", u32 header length, JSON header, then per record a u32 byte length
// followed by little-endian f64 fields.
void WriteDataset(const std::string& path, const std::vector<Transition>& data,
                  const ScenarioConfig& config);
std::vector<Transition> ReadDataset(const std::string& path,
                                    DatasetHeader* header = nullptr);

// Checkpoint directory: weights.bin (little-endian f64 blocks) and
// manifest.json describing them.
void SaveCheckpoint(const std::string& dir, const std::string& algo,
                    const ParamBlocks& blocks, const ScenarioConfig& config);
// Fills `blocks` in place. Throws ArtifactMismatch on a different algorithm,
// block layout or shape; a different config hash only warns.
void LoadCheckpoint(const std::string& dir, const std::string& algo,
                    const ParamBlocks& blocks, const ScenarioConfig& config);

// Comment line carried by every emitted text artifact.
std::string ProvenanceLine(const ScenarioConfig& config);

void WriteCurveCsv(const std::string& path, const std::string& algo,
                   const std::vector<EpisodeSummary>& curve,
                   const ScenarioConfig& config);
struct CurveSeries {
  std::string label;
  std::vector<double> episode;
  std::vector<double> return_k;
  std::vector<double> occupancy;
};
CurveSeries ReadCurveCsv(const std::string& path);

void WriteEvalCsv(const std::string& path, const EvalReport& report,
                  const ScenarioConfig& config);
void WriteEvalJson(const std::string& path, const EvalReport& report,
                   const ScenarioConfig& config);
void WriteTraceCsv(const std::string& path, const EvalReport& report,
                   const ScenarioConfig& config);

// Per-step trajectory of one episode.
void WriteEpisodeCsv(const std::string& path, const EpisodeLog& log,
                     const ScenarioConfig& config);

// One JSON object per line; provenance rides along as fields.
void WriteEpisodeSummaries(const std::string& path, const std::string& algo,
                           const std::vector<EpisodeSummary>& summaries,
                           const ScenarioConfig& config);

struct PlotLine {
  std::string label;
  std::vector<double> x, y;
};
// Minimal line chart.
void WriteSvgPlot(const std::string& path, const std::string& title,
                  const std::string& x_label, const std::string& y_label,
                  const std::vector<PlotLine>& lines, const ScenarioConfig& config);

// Trailing moving average over `window` samples.
std::vector<double> Smooth(const std::vector<double>& v, int window);

}  // namespace swrl

#endif  // SWRL_IO_H_
