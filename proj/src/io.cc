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

#include "swrl/io.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace swrl {

namespace {

using nlohmann::json;

constexpr char kMagic[] = "SWRL1";
constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

void PutU32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void PutF64(std::string& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

std::uint32_t GetU32(const std::string& in, size_t& pos) {
  if (pos + 4 > in.size()) throw ArtifactMismatch("truncated file");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  }
  pos += 4;
  return v;
}

double GetF64(const std::string& in, size_t& pos) {
  if (pos + 8 > in.size()) throw ArtifactMismatch("truncated file");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) {
    bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  }
  pos += 8;
  double v;
  std::memcpy(&v, &bits, sizeof(v));
  return v;
}

std::uint64_t Fnv(std::uint64_t h, const std::string& bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

std::string EncodeRecord(const Transition& t) {
  std::string out;
  for (double v : t.obs) PutF64(out, v);
  PutF64(out, t.force_index);
  for (double v : t.accel) PutF64(out, v);
  PutF64(out, t.r_k);
  PutF64(out, t.r_r);
  for (double v : t.next_obs) PutF64(out, v);
  PutF64(out, t.done ? 1.0 : 0.0);
  PutF64(out, static_cast<double>(t.cause));
  return out;
}

std::string ReadAll(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteAll(const std::string& path, const std::string& bytes, bool binary) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << bytes;
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string OptNum(const std::optional<double>& v) { return v ? Num(*v) : "NA"; }

}  // namespace

std::uint64_t DatasetChecksum(const std::vector<Transition>& data) {
  std::uint64_t h = kFnvOffset;
  for (const Transition& t : data) h = Fnv(h, EncodeRecord(t));
  return h;
}

void WriteDataset(const std::string& path, const std::vector<Transition>& data,
                  const ScenarioConfig& config) {
  const int obs_dim = data.empty() ? 0 : static_cast<int>(data.front().obs.size());
  const int accel_dim = data.empty() ? 0 : static_cast<int>(data.front().accel.size());
  std::string body;
  std::uint64_t h = kFnvOffset;
  for (const Transition& t : data) {
    if (t.obs.size() != obs_dim || t.next_obs.size() != obs_dim || t.accel.size() != accel_dim) {
      throw std::invalid_argument("dataset records have inconsistent dimensions");
    }
    const std::string rec = EncodeRecord(t);
    h = Fnv(h, rec);
    PutU32(body, static_cast<std::uint32_t>(rec.size()));
    body += rec;
  }
  const json header = {{"schema_version", kDatasetSchemaVersion},
                       {"obs_dim", obs_dim},
                       {"accel_dim", accel_dim},
                       {"config_hash", HexHash(ConfigHash(config))},
                       {"seed", config.seed},
                       {"count", data.size()},
                       {"checksum", HexHash(h)}};
  const std::string hs = header.dump();
  std::string out(kMagic);
  PutU32(out, static_cast<std::uint32_t>(hs.size()));
  out += hs;
  out += body;
  WriteAll(path, out, true);
}

std::vector<Transition> ReadDataset(const std::string& path, DatasetHeader* header) {
  const std::string in = ReadAll(path);
  const size_t magic_len = std::strlen(kMagic);
  if (in.compare(0, magic_len, kMagic) != 0) {
    throw ArtifactMismatch(path + ": not a SWRL1 dataset");
  }
  size_t pos = magic_len;
  const std::uint32_t hlen = GetU32(in, pos);
  if (pos + hlen > in.size()) throw ArtifactMismatch(path + ": truncated header");
  DatasetHeader h;
  try {
    const json j = json::parse(in.substr(pos, hlen));
    h.schema_version = j.at("schema_version").get<int>();
    h.obs_dim = j.at("obs_dim").get<int>();
    h.accel_dim = j.at("accel_dim").get<int>();
    h.config_hash = j.at("config_hash").get<std::string>();
    h.seed = j.at("seed").get<std::uint64_t>();
    h.count = j.at("count").get<std::uint64_t>();
    h.checksum = j.at("checksum").get<std::string>();
  } catch (const json::exception& e) {
    throw ArtifactMismatch(path + ": bad dataset header: " + e.what());
  }
  if (h.schema_version != kDatasetSchemaVersion) {
    throw ArtifactMismatch(path + ": unsupported schema version " +
                           std::to_string(h.schema_version));
  }
  pos += hlen;
  const size_t fields = 2 * h.obs_dim + h.accel_dim + 5;
  std::vector<Transition> data;
  data.reserve(h.count);
  std::uint64_t sum = kFnvOffset;
  for (std::uint64_t i = 0; i < h.count; ++i) {
    const std::uint32_t len = GetU32(in, pos);
    if (len != fields * 8) throw ArtifactMismatch(path + ": record length mismatch");
    if (pos + len > in.size()) throw ArtifactMismatch(path + ": truncated record");
    sum = Fnv(sum, in.substr(pos, len));
    Transition t;
    t.obs.resize(h.obs_dim);
    for (int k = 0; k < h.obs_dim; ++k) t.obs[k] = GetF64(in, pos);
    t.force_index = static_cast<int>(GetF64(in, pos));
    t.accel.resize(h.accel_dim);
    for (int k = 0; k < h.accel_dim; ++k) t.accel[k] = GetF64(in, pos);
    t.r_k = GetF64(in, pos);
    t.r_r = GetF64(in, pos);
    t.next_obs.resize(h.obs_dim);
    for (int k = 0; k < h.obs_dim; ++k) t.next_obs[k] = GetF64(in, pos);
    t.done = GetF64(in, pos) != 0.0;
    t.cause = static_cast<TerminationCause>(static_cast<int>(GetF64(in, pos)));
    data.push_back(std::move(t));
  }
  if (pos != in.size()) throw ArtifactMismatch(path + ": trailing bytes");
  if (HexHash(sum) != h.checksum) throw ArtifactMismatch(path + ": checksum mismatch");
  if (header) *header = h;
  return data;
}

void SaveCheckpoint(const std::string& dir, const std::string& algo,
                    const ParamBlocks& blocks, const ScenarioConfig& config) {
  std::string blob;
  json jb = json::array();
  std::int64_t offset = 0;
  for (const ParamBlock& b : blocks) {
    json shapes = json::array();
    for (auto [r, c] : b.shapes) shapes.push_back({r, c});
    jb.push_back({{"name", b.name},
                  {"shapes", shapes},
                  {"offset", offset},
                  {"count", b.values->size()}});
    for (double v : *b.values) PutF64(blob, v);
    offset += b.values->size();
  }
  const json manifest = {{"format_version", kCheckpointFormatVersion},
                         {"algo", algo},
                         {"config_hash", HexHash(ConfigHash(config))},
                         {"seed", config.seed},
                         {"weights", "weights.bin"},
                         {"weights_checksum", HexHash(Fnv(kFnvOffset, blob))},
                         {"blocks", jb}};
  std::filesystem::create_directories(dir);
  WriteAll(dir + "/weights.bin", blob, true);
  WriteAll(dir + "/manifest.json", manifest.dump(2) + "\n", false);
}

void LoadCheckpoint(const std::string& dir, const std::string& algo,
                    const ParamBlocks& blocks, const ScenarioConfig& config) {
  if (!std::filesystem::is_regular_file(dir + "/manifest.json")) {
    throw ArtifactMismatch("no checkpoint manifest in " + dir);
  }
  json m;
  try {
    m = json::parse(ReadAll(dir + "/manifest.json"));
  } catch (const json::exception& e) {
    throw ArtifactMismatch(dir + "/manifest.json: " + e.what());
  }
  try {
    if (m.at("format_version").get<int>() != kCheckpointFormatVersion) {
      throw ArtifactMismatch("unsupported checkpoint format version");
    }
    if (m.at("algo").get<std::string>() != algo) {
      throw ArtifactMismatch("checkpoint holds '" + m.at("algo").get<std::string>() +
                             "', expected '" + algo + "'");
    }
    if (m.at("config_hash").get<std::string>() != HexHash(ConfigHash(config))) {
      std::clog << "warning: checkpoint config hash " << m.at("config_hash").get<std::string>()
                << " differs from the current config " << HexHash(ConfigHash(config)) << "\n";
    }
    const std::string blob = ReadAll(dir + "/" + m.at("weights").get<std::string>());
    if (HexHash(Fnv(kFnvOffset, blob)) != m.at("weights_checksum").get<std::string>()) {
      throw ArtifactMismatch("checkpoint weights checksum mismatch");
    }
    const json& jb = m.at("blocks");
    if (jb.size() != blocks.size()) {
      throw ArtifactMismatch("checkpoint has " + std::to_string(jb.size()) +
                             " parameter blocks, model expects " + std::to_string(blocks.size()));
    }
    for (size_t i = 0; i < blocks.size(); ++i) {
      const ParamBlock& b = blocks[i];
      const json& e = jb[i];
      if (e.at("name").get<std::string>() != b.name) {
        throw ArtifactMismatch("block " + std::to_string(i) + " is '" +
                               e.at("name").get<std::string>() + "', expected '" + b.name + "'");
      }
      std::vector<std::pair<int, int>> shapes;
      for (const json& s : e.at("shapes")) shapes.emplace_back(s.at(0).get<int>(), s.at(1).get<int>());
      if (shapes != b.shapes || e.at("count").get<std::int64_t>() != b.values->size()) {
        throw ArtifactMismatch("shape mismatch in block '" + b.name + "'");
      }
      size_t pos = static_cast<size_t>(e.at("offset").get<std::int64_t>()) * 8;
      for (Eigen::Index k = 0; k < b.values->size(); ++k) (*b.values)[k] = GetF64(blob, pos);
    }
  } catch (const json::exception& e) {
    throw ArtifactMismatch(dir + "/manifest.json: " + e.what());
  }
}

std::string ProvenanceLine(const ScenarioConfig& config) {
  return "config_hash=" + HexHash(ConfigHash(config)) + " seed=" + std::to_string(config.seed) +
         " scenario=" + config.name;
}

void WriteCurveCsv(const std::string& path, const std::string& algo,
                   const std::vector<EpisodeSummary>& curve,
                   const ScenarioConfig& config) {
  const int max_steps =
      static_cast<int>(std::lround(config.mdp.episode_time * config.mdp.policy_rate));
  std::ostringstream out;
  out << "# " << ProvenanceLine(config) << " algo=" << algo << "\n";
  out << "episode,case_seed,return_k,return_r,band_steps,occupancy,length,cause,terminal_theta\n";
  for (const EpisodeSummary& e : curve) {
    out << e.episode << ',' << e.seed << ',' << Num(e.return_k) << ',' << Num(e.return_r) << ','
        << e.band_steps << ',' << Num(BandOccupancy(e, max_steps)) << ',' << e.length << ','
        << ToString(e.cause) << ',' << Num(e.terminal_theta) << '\n';
  }
  WriteAll(path, out.str(), false);
}

CurveSeries ReadCurveCsv(const std::string& path) {
  std::istringstream in(ReadAll(path));
  CurveSeries s;
  s.label = std::filesystem::path(path).stem().string();
  std::string line;
  std::vector<std::string> cols;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const size_t a = line.find("algo=");
      if (a != std::string::npos) s.label = line.substr(a + 5);
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string tok; std::getline(ls, tok, ',');) f.push_back(tok);
    if (cols.empty()) {
      cols = f;
      continue;
    }
    auto at = [&](const std::string& name) {
      const auto it = std::find(cols.begin(), cols.end(), name);
      if (it == cols.end() || static_cast<size_t>(it - cols.begin()) >= f.size()) {
        throw ArtifactMismatch(path + ": missing column " + name);
      }
      return std::stod(f[it - cols.begin()]);
    };
    s.episode.push_back(at("episode"));
    s.return_k.push_back(at("return_k"));
    s.occupancy.push_back(at("occupancy"));
  }
  return s;
}

void WriteEvalCsv(const std::string& path, const EvalReport& report,
                  const ScenarioConfig& config) {
  std::ostringstream out;
  out << "# " << ProvenanceLine(config) << " method=" << report.method << "\n";
  out << "case,case_seed,theta,manual_theta,rmp,mean_manipulability,"
         "manual_mean_manipulability,occupancy,cause,steps\n";
  for (const CaseResult& c : report.cases) {
    out << c.index << ',' << c.seed << ',' << Num(c.theta) << ',' << Num(c.manual_theta) << ','
        << OptNum(c.rmp) << ',' << Num(c.mean_manipulability) << ','
        << Num(c.manual_mean_manipulability) << ',' << Num(c.occupancy) << ','
        << ToString(c.cause) << ',' << c.steps << '\n';
  }
  WriteAll(path, out.str(), false);
}

void WriteEvalJson(const std::string& path, const EvalReport& report,
                   const ScenarioConfig& config) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  const json j = {{"config_hash", HexHash(ConfigHash(config))},
                  {"seed", config.seed},
                  {"scenario", config.name},
                  {"method", report.method},
                  {"cases", report.cases.size()},
                  {"mean_theta", report.mean_theta},
                  {"manual_mean_theta", report.manual_mean_theta},
                  {"mean_case_rmp", opt(report.mean_case_rmp)},
                  {"rmp_of_means", opt(report.rmp_of_means)},
                  {"rmp_missing", report.rmp_missing},
                  {"mean_manipulability", report.mean_manipulability},
                  {"manual_mean_manipulability", report.manual_mean_manipulability},
                  {"mean_occupancy", report.mean_occupancy},
                  {"theta_wins", report.theta_wins},
                  {"manipulability_wins", report.manipulability_wins}};
  WriteAll(path, j.dump(2) + "\n", false);
}

void WriteTraceCsv(const std::string& path, const EvalReport& report,
                   const ScenarioConfig& config) {
  std::ostringstream out;
  out << "# " << ProvenanceLine(config) << " method=" << report.method << "\n";
  out << "case,theta,manipulability\n";
  for (const CaseResult& c : report.cases) {
    for (const TracePoint& p : c.trace) {
      out << c.index << ',' << Num(p.theta) << ',' << Num(p.w) << '\n';
    }
  }
  WriteAll(path, out.str(), false);
}

void WriteEpisodeCsv(const std::string& path, const EpisodeLog& log,
                     const ScenarioConfig& config) {
  std::ostringstream out;
  out << "# " << ProvenanceLine(config) << " case_seed=" << log.case_seed << "\n";
  const int n = log.steps.empty() ? 0 : static_cast<int>(log.steps.front().q.size());
  const int m = log.steps.empty() ? 0 : static_cast<int>(log.steps.front().accel.size());
  out << "t";
  for (int i = 0; i < n; ++i) out << ",q" << i;
  out << ",theta,theta_dot,velocity,force,force_index";
  for (int i = 0; i < m; ++i) out << ",accel" << i;
  out << ",contact_sum,manipulability,r_k,r_r,cause\n";
  for (const StepRecord& r : log.steps) {
    out << Num(r.t);
    for (int i = 0; i < n; ++i) out << ',' << Num(r.q[i]);
    out << ',' << Num(r.theta) << ',' << Num(r.theta_dot) << ',' << Num(r.velocity_estimate)
        << ',' << Num(r.force) << ',' << r.force_index;
    for (int i = 0; i < m; ++i) out << ',' << Num(r.accel[i]);
    out << ',' << Num(r.contact_sum) << ',' << Num(r.manipulability) << ',' << Num(r.r_k)
        << ',' << Num(r.r_r) << ',' << ToString(r.cause) << '\n';
  }
  WriteAll(path, out.str(), false);
}

void WriteEpisodeSummaries(const std::string& path, const std::string& algo,
                           const std::vector<EpisodeSummary>& summaries,
                           const ScenarioConfig& config) {
  std::ostringstream out;
  const std::string hash = HexHash(ConfigHash(config));
  for (const EpisodeSummary& e : summaries) {
    const json j = {{"algo", algo},
                    {"config_hash", hash},
                    {"scenario", config.name},
                    {"seed", config.seed},
                    {"episode", e.episode},
                    {"case_seed", e.seed},
                    {"terminal_theta", e.terminal_theta},
                    {"cause", ToString(e.cause)},
                    {"return_k", e.return_k},
                    {"return_r", e.return_r},
                    {"band_steps", e.band_steps},
                    {"length", e.length}};
    out << j.dump() << '\n';
  }
  WriteAll(path, out.str(), false);
}

void WriteSvgPlot(const std::string& path, const std::string& title,
                  const std::string& x_label, const std::string& y_label,
                  const std::vector<PlotLine>& lines, const ScenarioConfig& config) {
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                  "#9467bd", "#8c564b"};
  constexpr double W = 640, H = 400, L = 70, R = 20, T = 40, B = 50;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  bool first = true;
  for (const PlotLine& l : lines) {
    for (size_t i = 0; i < l.x.size() && i < l.y.size(); ++i) {
      if (!std::isfinite(l.x[i]) || !std::isfinite(l.y[i])) continue;
      if (first) {
        x0 = x1 = l.x[i];
        y0 = y1 = l.y[i];
        first = false;
      }
      x0 = std::min(x0, l.x[i]);
      x1 = std::max(x1, l.x[i]);
      y0 = std::min(y0, l.y[i]);
      y1 = std::max(y1, l.y[i]);
    }
  }
  if (x1 - x0 < 1e-12) x1 = x0 + 1;
  if (y1 - y0 < 1e-12) y1 = y0 + 1;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<!-- " << ProvenanceLine(config) << " -->\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << title
    << "</text>\n";
  s << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
    << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
    << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x0 + (x1 - x0) * i / 4, yv = y0 + (y1 - y0) * i / 4;
    s << "<text x=\"" << Num(px(xv)) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">"
      << Num(std::round(xv * 1000) / 1000) << "</text>\n";
    s << "<text x=\"" << L - 6 << "\" y=\"" << Num(py(yv) + 4) << "\" text-anchor=\"end\">"
      << Num(std::round(yv * 1000) / 1000) << "</text>\n";
  }
  s << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">"
    << x_label << "</text>\n";
  s << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << (T + H - B) / 2 << ")\">" << y_label << "</text>\n";
  for (size_t k = 0; k < lines.size(); ++k) {
    const char* color = kColors[k % 6];
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < lines[k].x.size() && i < lines[k].y.size(); ++i) {
      if (!std::isfinite(lines[k].x[i]) || !std::isfinite(lines[k].y[i])) continue;
      s << Num(px(lines[k].x[i])) << ',' << Num(py(lines[k].y[i])) << ' ';
    }
    s << "\"/>\n";
    s << "<text x=\"" << W - R - 4 << "\" y=\"" << T + 14 * (k + 1) << "\" text-anchor=\"end\" fill=\""
      << color << "\">" << lines[k].label << "</text>\n";
  }
  s << "</svg>\n";
  WriteAll(path, s.str(), false);
}

std::vector<double> Smooth(const std::vector<double>& v, int window) {
  std::vector<double> out(v.size());
  double sum = 0.0;
  window = std::max(window, 1);
  for (size_t i = 0; i < v.size(); ++i) {
    sum += v[i];
    if (i >= static_cast<size_t>(window)) sum -= v[i - window];
    out[i] = sum / std::min<size_t>(i + 1, window);
  }
  return out;
}

}  // namespace swrl
