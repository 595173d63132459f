// Copyright 2026 The qturbo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qturbo/bounds.hpp"
#include "qturbo/error.hpp"
#include "qturbo/exit.hpp"
#include "qturbo/pipeline.hpp"
#include "qturbo/version.hpp"

namespace qturbo::io {

inline constexpr const char* kSweepColumns = "rate,k,p,frames,qubit_errors,qubit_total,qber,ci_low,ci_high,mean_iterations";
inline constexpr const char* kExitColumns = "curve,p_or_rate,I_A,I_E,I_A_norm,I_E_norm,samples";
inline constexpr const char* kTrajectoryColumns = "iteration,stage,I,I_norm";
inline constexpr const char* kGoodputColumns = "rate,p,qber,goodput";
inline constexpr const char* kHashingColumns = "p,capacity";

struct Provenance {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string extra;  // appended verbatim, e.g. "norm=bits/2"

  std::string line() const {
    std::string s = std::string("# qturbo ") + kVersion + " config=" + config_hash + " seed=" + std::to_string(seed);
    if (!extra.empty()) s += " " + extra;
    return s;
  }
};

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline std::string fmt_sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9e", v);
  return buf;
}

/// Rates are printed with 10 significant digits; snap them back to m/(m+1).
inline double snap_rate(double r) {
  if (r > 0.0 && r < 1.0) {
    const double m = std::round(r / (1.0 - r));
    if (m >= 1.0 && std::abs(m / (m + 1.0) - r) < 1e-8) return m / (m + 1.0);
  }
  return r;
}

inline std::string rate_label(double r) {
  const double m = std::round(r / (1.0 - r));
  return fmt(m) + "/" + fmt(m + 1.0);
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records, const Provenance& prov) {
  os << prov.line() << '\n' << kSweepColumns << '\n';
  for (const auto& r : records) {
    os << fmt(r.rate) << ',' << r.k << ',' << fmt(r.p) << ',' << r.frames << ',' << r.qubit_errors << ','
       << r.qubit_total << ',' << fmt_sci(r.qber) << ',' << fmt_sci(r.ci_low) << ',' << fmt_sci(r.ci_high) << ','
       << fmt(r.mean_iterations) << '\n';
  }
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InvalidInput("malformed " + what + " value \"" + s + "\"");
  }
}

inline std::size_t to_size(const std::string& s, const std::string& what) {
  const double v = to_double(s, what);
  if (v < 0.0 || v != std::floor(v)) throw InvalidInput("malformed " + what + " value \"" + s + "\"");
  return static_cast<std::size_t>(v);
}

/// Reads a sweep CSV; comment lines are skipped and the header must match.
inline std::vector<SweepRecord> read_sweep_csv(std::istream& is, const std::string& name = "sweep") {
  std::string line;
  bool header = false;
  std::vector<SweepRecord> out;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != kSweepColumns) throw InvalidInput(name + ": unexpected header \"" + line + "\"");
      header = true;
      continue;
    }
    const auto c = split_csv_line(line);
    if (c.size() != 10) throw InvalidInput(name + ":" + std::to_string(lineno) + ": expected 10 columns");
    SweepRecord r;
    r.rate = snap_rate(to_double(c[0], "rate"));
    r.k = to_size(c[1], "k");
    r.p = to_double(c[2], "p");
    r.frames = to_size(c[3], "frames");
    r.qubit_errors = to_size(c[4], "qubit_errors");
    r.qubit_total = to_size(c[5], "qubit_total");
    if (c[6].empty()) throw InvalidInput(name + ":" + std::to_string(lineno) + ": empty qber");
    r.qber = to_double(c[6], "qber");
    r.ci_low = to_double(c[7], "ci_low");
    r.ci_high = to_double(c[8], "ci_high");
    r.mean_iterations = to_double(c[9], "mean_iterations");
    out.push_back(r);
  }
  if (!header) throw InvalidInput(name + ": missing header");
  return out;
}

struct ExitRow {
  std::string curve;  // "inner" or "outer"
  std::string p_or_rate;
  ExitPoint point;
};

inline void write_exit_csv(std::ostream& os, const std::vector<ExitRow>& rows, const Provenance& prov) {
  os << prov.line() << '\n' << kExitColumns << '\n';
  for (const auto& r : rows) {
    os << r.curve << ',' << r.p_or_rate << ',' << fmt(r.point.apriori_bits) << ',' << fmt(r.point.extrinsic_bits) << ','
       << fmt(r.point.apriori_bits / kMaxSymbolInformation) << ','
       << fmt(r.point.extrinsic_bits / kMaxSymbolInformation) << ',' << r.point.samples << '\n';
  }
}

inline void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryPoint>& pts, const Provenance& prov) {
  os << prov.line() << '\n' << kTrajectoryColumns << '\n';
  for (const auto& t : pts) {
    os << t.iteration << ',' << stage_name(t.stage) << ',' << fmt(t.bits) << ',' << fmt(t.bits / kMaxSymbolInformation)
       << '\n';
  }
}

inline void write_goodput_csv(std::ostream& os, const std::vector<SweepRecord>& records, const Provenance& prov) {
  os << prov.line() << '\n' << kGoodputColumns << '\n';
  for (const auto& r : records) {
    os << fmt(r.rate) << ',' << fmt(r.p) << ',' << fmt_sci(r.qber) << ',' << fmt(goodput(r.rate, r.qber)) << '\n';
  }
}

inline void write_hashing_csv(std::ostream& os, double p_max, std::size_t steps, const Provenance& prov) {
  os << prov.line() << '\n' << kHashingColumns << '\n';
  for (std::size_t i = 0; i <= steps; ++i) {
    const double p = p_max * static_cast<double>(i) / static_cast<double>(steps);
    os << fmt(p) << ',' << fmt(hashing_capacity(p)) << '\n';
  }
}

inline nlohmann::json switch_table_json(const SwitchTable& t) {
  nlohmann::json j;
  j["requirement"] = t.requirement.str();
  j["kind"] = t.requirement.kind == Requirement::Kind::kBeatUncoded ? "uncoded" : "qber_target";
  if (t.requirement.kind == Requirement::Kind::kQberTarget) j["target"] = t.requirement.target;
  j["thresholds"] = nlohmann::json::array();
  for (const auto& th : t.thresholds) {
    nlohmann::json e;
    e["rate"] = rate_label(th.rate);
    e["hashing_threshold"] = hashing_threshold(th.rate);
    if (th.p) {
      e["p"] = *th.p;
      e["distance_from_bound"] = distance_from_bound(th.rate, *th.p);
    } else {
      e["p"] = nullptr;
      e["distance_from_bound"] = nullptr;
      e["note"] = "threshold undefined: sweep does not bracket the requirement";
    }
    j["thresholds"].push_back(e);
  }
  j["intervals"] = nlohmann::json::array();
  for (const auto& iv : t.intervals) {
    j["intervals"].push_back({{"rate", rate_label(iv.rate)}, {"p_low", iv.p_low}, {"p_high", iv.p_high}});
  }
  return j;
}

/// Writes through a temporary sibling so readers never see a partial file.
inline void write_file_atomically(const std::filesystem::path& path, const std::string& content) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write \"" + tmp + "\"");
    out << content;
    if (!out) throw std::runtime_error("short write to \"" + tmp + "\"");
  }
  std::filesystem::rename(tmp, path);
}

inline nlohmann::json record_json(const SweepRecord& r) {
  return {{"rate", r.rate},       {"k", r.k},
          {"p", r.p},             {"frames", r.frames},
          {"qubit_errors", r.qubit_errors}, {"qubit_total", r.qubit_total},
          {"qber", r.qber},       {"ci_low", r.ci_low},
          {"ci_high", r.ci_high}, {"mean_iterations", r.mean_iterations}};
}

inline SweepRecord record_from_json(const nlohmann::json& j) {
  SweepRecord r;
  r.rate = j.at("rate").get<double>();
  r.k = j.at("k").get<std::size_t>();
  r.p = j.at("p").get<double>();
  r.frames = j.at("frames").get<std::size_t>();
  r.qubit_errors = j.at("qubit_errors").get<std::size_t>();
  r.qubit_total = j.at("qubit_total").get<std::size_t>();
  r.qber = j.at("qber").get<double>();
  r.ci_low = j.at("ci_low").get<double>();
  r.ci_high = j.at("ci_high").get<double>();
  r.mean_iterations = j.at("mean_iterations").get<double>();
  return r;
}

/// Per-point completion log kept next to the sweep CSVs.
class Manifest {
 public:
  Manifest(std::filesystem::path path, std::string config_hash, std::uint64_t seed)
      : path_(std::move(path)), hash_(std::move(config_hash)), seed_(seed) {
    std::ifstream in(path_);
    if (!in) return;
    nlohmann::json j;
    try {
      in >> j;
    } catch (const std::exception&) {
      return;  // unreadable manifest: start afresh
    }
    if (j.value("config_hash", std::string()) != hash_ || j.value("seed", std::uint64_t{0}) != seed_) return;
    for (const auto& e : j.value("points", nlohmann::json::array())) {
      points_.push_back({e.at("key").get<std::string>(), record_from_json(e.at("record"))});
    }
    resumed_ = points_.size();
  }

  static std::string key(const std::string& rate, std::size_t k, double p) {
    return rate + "|" + std::to_string(k) + "|" + fmt(p);
  }

  std::optional<SweepRecord> find(const std::string& key) const {
    for (const auto& [k, r] : points_) {
      if (k == key) return r;
    }
    return std::nullopt;
  }

  void complete(const std::string& key, const SweepRecord& r) {
    points_.push_back({key, r});
    save();
  }

  std::size_t resumed() const { return resumed_; }

  void save() const {
    nlohmann::json j;
    j["version"] = kVersion;
    j["config_hash"] = hash_;
    j["seed"] = seed_;
    j["points"] = nlohmann::json::array();
    for (const auto& [k, r] : points_) j["points"].push_back({{"key", k}, {"record", record_json(r)}});
    write_file_atomically(path_, j.dump(2) + "\n");
  }

 private:
  std::filesystem::path path_;
  std::string hash_;
  std::uint64_t seed_;
  std::vector<std::pair<std::string, SweepRecord>> points_;
  std::size_t resumed_ = 0;
};

}  // namespace qturbo::io
