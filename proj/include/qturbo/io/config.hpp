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

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qturbo/error.hpp"
#include "qturbo/io/toml.hpp"
#include "qturbo/pipeline.hpp"
#include "qturbo/qsbc.hpp"

namespace qturbo {

struct ExitSettings {
  std::vector<double> inner_p = {0.06, 0.05, 0.04, 0.03, 0.02, 0.01};
  std::vector<std::string> outer_rates = {"1/2", "2/3", "3/4"};
  std::vector<double> grid;  // empty means 0, 0.1, ..., 2.0 bits
  std::size_t samples = 100000;
  std::size_t block_length = 1000;
  double trajectory_p = 0.045;
  std::size_t trajectory_frames = 1;
  bool trajectory = false;

  std::vector<double> grid_or_default() const {
    if (!grid.empty()) return grid;
    std::vector<double> g;
    for (int i = 0; i <= 20; ++i) g.push_back(0.1 * i);
    return g;
  }
};

struct RunConfig {
  std::vector<std::string> rates = {"1/2"};
  std::vector<std::size_t> ks = {500};
  std::vector<double> p_list = {0.03};
  std::size_t iterations = 16;
  bool early_stop = true;
  bool memory_last = false;
  std::uint64_t interleaver_seed = 1;
  bool per_frame_interleaver = false;
  StopRule stop;
  std::uint64_t master_seed = 1;
  std::size_t workers = 0;  // 0: take QTURBO_THREADS or the hardware count
  std::string out_dir = "out";
  std::vector<std::string> formats = {"csv"};
  ExitSettings exit;

  SchemeConfig scheme(const std::string& rate, std::size_t k) const {
    SchemeConfig c;
    c.rate = rate;
    c.k = k;
    c.iterations = iterations;
    c.early_stop = early_stop;
    c.interleaver_seed = interleaver_seed;
    c.per_frame_interleaver = per_frame_interleaver;
    c.layout = memory_last ? QurcLayout::kMemoryLast : QurcLayout::kMemoryFirst;
    return c;
  }

  /// Everything that influences results; output location and worker count
  /// are excluded so they do not change the hash.
  nlohmann::json physics_json() const {
    nlohmann::json j;
    j["code"] = {{"rate", rates}, {"k", ks}};
    j["channel"] = {{"p", p_list}};
    j["decoder"] = {{"iterations", iterations}, {"early_stop", early_stop}, {"memory_last", memory_last},
                    {"interleaver_seed", interleaver_seed}, {"per_frame_interleaver", per_frame_interleaver}};
    j["mc"] = {{"max_frames", stop.max_frames}, {"target_errors", stop.target_errors}, {"master_seed", master_seed}};
    j["exit"] = {{"inner_p", exit.inner_p}, {"outer_rates", exit.outer_rates}, {"grid", exit.grid_or_default()},
                 {"samples", exit.samples}, {"block_length", exit.block_length}, {"trajectory_p", exit.trajectory_p},
                 {"trajectory_frames", exit.trajectory_frames}, {"trajectory", exit.trajectory}};
    return j;
  }

  std::string hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (unsigned char c : physics_json().dump()) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    char buf[19];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

  void validate() const {
    if (rates.empty()) throw InvalidInput("code.rate must not be empty");
    if (ks.empty()) throw InvalidInput("code.k must not be empty");
    for (const auto& r : rates) {
      for (auto k : ks) {
        (void)TurboScheme(scheme(r, k));
      }
    }
    if (p_list.empty()) throw InvalidInput("channel.p must not be empty");
    for (double p : p_list) {
      if (!(p >= 0.0 && p < 1.0)) throw InvalidInput("channel.p entries must lie in [0, 1)");
    }
    if (stop.max_frames == 0) throw InvalidInput("mc.max_frames must be >= 1");
    for (const auto& f : formats) {
      if (f != "csv" && f != "json") throw InvalidInput("output.formats entries must be \"csv\" or \"json\", got \"" + f + "\"");
    }
    for (double p : exit.inner_p) {
      if (!(p >= 0.0 && p < 1.0)) throw InvalidInput("exit.inner_p entries must lie in [0, 1)");
    }
    for (const auto& r : exit.outer_rates) (void)QsbcCode::for_rate(r);
    for (double g : exit.grid) {
      if (!(g >= 0.0 && g <= 2.0)) throw InvalidInput("exit.grid entries must lie in [0, 2]");
    }
    if (exit.samples == 0 || exit.block_length == 0) throw InvalidInput("exit.samples and exit.block_length must be >= 1");
    if (!(exit.trajectory_p >= 0.0 && exit.trajectory_p < 1.0)) throw InvalidInput("exit.trajectory_p must lie in [0, 1)");
    if (exit.trajectory_frames == 0) throw InvalidInput("exit.trajectory_frames must be >= 1");
  }
};

namespace detail {

inline void reject_unknown(const nlohmann::json& table, const std::string& section, const std::set<std::string>& allowed) {
  if (!table.is_object()) throw InvalidInput("[" + section + "] must be a table");
  for (const auto& [key, value] : table.items()) {
    if (!allowed.count(key)) throw InvalidInput("unknown key \"" + section + "." + key + "\"");
  }
}

template <typename T>
T get_scalar(const nlohmann::json& v, const std::string& name) {
  if constexpr (std::is_same_v<T, bool>) {
    if (!v.is_boolean()) throw InvalidInput(name + " must be a boolean");
  } else if constexpr (std::is_same_v<T, std::string>) {
    if (!v.is_string()) throw InvalidInput(name + " must be a string");
  } else if constexpr (std::is_floating_point_v<T>) {
    if (!v.is_number()) throw InvalidInput(name + " must be a number");
  } else {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) throw InvalidInput(name + " must be a non-negative integer");
  }
  return v.get<T>();
}

template <typename T>
std::vector<T> get_list(const nlohmann::json& v, const std::string& name) {
  std::vector<T> out;
  if (v.is_array()) {
    for (const auto& e : v) out.push_back(get_scalar<T>(e, name));
  } else {
    out.push_back(get_scalar<T>(v, name));
  }
  return out;
}

}  // namespace detail

inline RunConfig config_from_json(const nlohmann::json& root) {
  using detail::get_list;
  using detail::get_scalar;
  detail::reject_unknown(root, "", {"code", "channel", "decoder", "mc", "output", "exit"});
  RunConfig c;
  auto section = [&](const char* name) -> const nlohmann::json* {
    return root.contains(name) ? &root.at(name) : nullptr;
  };
  if (const auto* s = section("code")) {
    detail::reject_unknown(*s, "code", {"rate", "k"});
    if (s->contains("rate")) c.rates = get_list<std::string>(s->at("rate"), "code.rate");
    if (s->contains("k")) c.ks = get_list<std::size_t>(s->at("k"), "code.k");
  }
  if (const auto* s = section("channel")) {
    detail::reject_unknown(*s, "channel", {"p"});
    if (s->contains("p")) c.p_list = get_list<double>(s->at("p"), "channel.p");
  }
  if (const auto* s = section("decoder")) {
    detail::reject_unknown(*s, "decoder",
                           {"iterations", "early_stop", "memory_last", "interleaver_seed", "per_frame_interleaver"});
    if (s->contains("iterations")) c.iterations = get_scalar<std::size_t>(s->at("iterations"), "decoder.iterations");
    if (s->contains("early_stop")) c.early_stop = get_scalar<bool>(s->at("early_stop"), "decoder.early_stop");
    if (s->contains("memory_last")) c.memory_last = get_scalar<bool>(s->at("memory_last"), "decoder.memory_last");
    if (s->contains("interleaver_seed")) {
      c.interleaver_seed = get_scalar<std::uint64_t>(s->at("interleaver_seed"), "decoder.interleaver_seed");
    }
    if (s->contains("per_frame_interleaver")) {
      c.per_frame_interleaver = get_scalar<bool>(s->at("per_frame_interleaver"), "decoder.per_frame_interleaver");
    }
  }
  if (const auto* s = section("mc")) {
    detail::reject_unknown(*s, "mc", {"max_frames", "target_errors", "master_seed", "workers"});
    if (s->contains("max_frames")) c.stop.max_frames = get_scalar<std::size_t>(s->at("max_frames"), "mc.max_frames");
    if (s->contains("target_errors")) {
      c.stop.target_errors = get_scalar<std::size_t>(s->at("target_errors"), "mc.target_errors");
    }
    if (s->contains("master_seed")) c.master_seed = get_scalar<std::uint64_t>(s->at("master_seed"), "mc.master_seed");
    if (s->contains("workers")) c.workers = get_scalar<std::size_t>(s->at("workers"), "mc.workers");
  }
  if (const auto* s = section("output")) {
    detail::reject_unknown(*s, "output", {"directory", "formats"});
    if (s->contains("directory")) c.out_dir = get_scalar<std::string>(s->at("directory"), "output.directory");
    if (s->contains("formats")) c.formats = get_list<std::string>(s->at("formats"), "output.formats");
  }
  if (const auto* s = section("exit")) {
    detail::reject_unknown(*s, "exit",
                           {"inner_p", "outer_rates", "grid", "samples", "block_length", "trajectory_p",
                            "trajectory_frames", "trajectory"});
    auto& e = c.exit;
    if (s->contains("inner_p")) e.inner_p = get_list<double>(s->at("inner_p"), "exit.inner_p");
    if (s->contains("outer_rates")) e.outer_rates = get_list<std::string>(s->at("outer_rates"), "exit.outer_rates");
    if (s->contains("grid")) e.grid = get_list<double>(s->at("grid"), "exit.grid");
    if (s->contains("samples")) e.samples = get_scalar<std::size_t>(s->at("samples"), "exit.samples");
    if (s->contains("block_length")) e.block_length = get_scalar<std::size_t>(s->at("block_length"), "exit.block_length");
    if (s->contains("trajectory_p")) e.trajectory_p = get_scalar<double>(s->at("trajectory_p"), "exit.trajectory_p");
    if (s->contains("trajectory_frames")) {
      e.trajectory_frames = get_scalar<std::size_t>(s->at("trajectory_frames"), "exit.trajectory_frames");
    }
    if (s->contains("trajectory")) e.trajectory = get_scalar<bool>(s->at("trajectory"), "exit.trajectory");
  }
  c.validate();
  return c;
}

inline RunConfig parse_config(std::string_view toml_text) { return config_from_json(toml::parse(toml_text)); }

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file \"" + path + "\"");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace qturbo
