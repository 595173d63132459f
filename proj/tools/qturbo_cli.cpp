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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qturbo/qturbo.hpp"

namespace fs = std::filesystem;
using namespace qturbo;

namespace {

struct GlobalOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
  std::optional<std::string> out;
};

std::size_t resolve_workers(const GlobalOptions& g, const RunConfig& c) {
  if (g.threads && *g.threads > 0) return *g.threads;
  if (c.workers > 0) return c.workers;
  if (const char* env = std::getenv("QTURBO_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring malformed QTURBO_THREADS=\"" << env << "\"\n";
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

RunConfig load(const GlobalOptions& g) {
  RunConfig c = g.config_path.empty() ? RunConfig{} : load_config(g.config_path);
  if (g.seed) c.master_seed = *g.seed;
  if (g.out) c.out_dir = *g.out;
  c.validate();
  return c;
}

fs::path prepare_out(const RunConfig& c) {
  const fs::path dir(c.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw std::runtime_error("cannot create output directory \"" + c.out_dir + "\"");
  return dir;
}

std::string slug(const std::string& rate) {
  std::string s = rate;
  for (char& ch : s) {
    if (ch == '/') ch = '-';
  }
  return s;
}

nlohmann::json seeds_json(const SeedTransformation& s) { return nlohmann::json(s); }

int cmd_codes(const GlobalOptions& g) {
  nlohmann::json j;
  j["qsbc"] = nlohmann::json::array();
  for (std::size_t k : {2, 4, 6}) {
    const auto code = QsbcCode::build(k);
    nlohmann::json e;
    e["rate"] = code.rate_label();
    e["n"] = code.n();
    e["k"] = code.k();
    e["pcm"] = code.pcm();
    e["stabilizers"] = {{{"pauli", code.z_stabilizer().str()}, {"binary", code.z_stabilizer().binary_str()}},
                        {{"pauli", code.x_stabilizer().str()}, {"binary", code.x_stabilizer().binary_str()}}};
    for (const auto& gate : code.gates()) e["gates"].push_back(gate.str());
    e["seed"] = seeds_json(code.encoder().seed());
    e["inverse_seed"] = seeds_json(code.inverse_encoder().seed());
    j["qsbc"].push_back(e);
  }
  const QurcCode qurc;
  j["qurc"] = {{"seed", seeds_json(kQurcSeed)},
               {"memory", kQurcMemory},
               {"layout", "qubits 1-2 memory, qubit 3 frame"},
               {"symplectic", qurc.transform().is_symplectic()},
               {"non_catastrophic", check_non_catastrophic(qurc.trellis())},
               {"inverse_seed", seeds_json(qurc.inverse_transform().seed())}};
  j["qircc_reference"] = {
      {"memory", 3},
      {"1/4", {9600, 691, 11713, 4863, 1013, 6907, 1125, 828, 10372, 6337, 5590, 11024, 12339, 3439}},
      {"1/3", {3968, 1463, 2596, 3451, 1134, 3474, 657, 686, 3113, 1866, 2608, 2570}},
      {"1/2", {848, 1000, 930, 278, 611, 263, 744, 260, 356, 880}},
      {"2/3", {529, 807, 253, 1950, 3979, 2794, 956, 1892, 3359, 2127, 3812, 1580}},
      {"3/4", {62, 6173, 4409, 12688, 7654, 10804, 1763, 15590, 6304, 3120, 2349, 1470, 9063, 4020}},
  };
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (g.out) {
    RunConfig c;
    c.out_dir = *g.out;
    io::write_file_atomically(prepare_out(c) / "codes.json", text);
  }
  return 0;
}

int cmd_verify(const std::string& expected_path) {
  VerifyExpectations want;
  if (!expected_path.empty()) {
    std::ifstream in(expected_path);
    if (!in) throw std::runtime_error("cannot read \"" + expected_path + "\"");
    want = VerifyExpectations::from_json(nlohmann::json::parse(in));
  }
  const auto report = run_verify(want);
  report.print(std::cout);
  return report.passed() ? 0 : 1;
}

int cmd_simulate(const GlobalOptions& g) {
  const RunConfig c = load(g);
  const std::size_t workers = resolve_workers(g, c);
  const fs::path dir = prepare_out(c);
  const io::Provenance prov{c.hash(), c.master_seed, ""};
  io::Manifest manifest(dir / "manifest.json", c.hash(), c.master_seed);
  if (manifest.resumed() > 0) std::cerr << "resuming: " << manifest.resumed() << " completed point(s) in manifest\n";
  const bool want_csv = std::find(c.formats.begin(), c.formats.end(), "csv") != c.formats.end();
  const bool want_json = std::find(c.formats.begin(), c.formats.end(), "json") != c.formats.end();
  for (const auto& rate : c.rates) {
    for (std::size_t k : c.ks) {
      const TurboScheme scheme(c.scheme(rate, k));
      std::vector<SweepRecord> records;
      const std::string base = "sweep_r" + slug(rate) + "_k" + std::to_string(k);
      for (double p : c.p_list) {
        const auto key = io::Manifest::key(rate, k, p);
        if (auto done = manifest.find(key)) {
          records.push_back(*done);
          continue;
        }
        const auto rec = run_point(scheme, p, c.stop, c.master_seed, workers);
        std::cerr << "rate " << rate << " k=" << k << " p=" << io::fmt(p) << ": qber=" << io::fmt_sci(rec.qber) << " ("
                  << rec.qubit_errors << "/" << rec.qubit_total << ", " << rec.frames << " frames)\n";
        records.push_back(rec);
        manifest.complete(key, rec);
        if (want_csv) {
          std::ostringstream os;
          io::write_sweep_csv(os, records, prov);
          io::write_file_atomically(dir / (base + ".csv"), os.str());
        }
      }
      if (want_csv) {
        std::ostringstream os;
        io::write_sweep_csv(os, records, prov);
        io::write_file_atomically(dir / (base + ".csv"), os.str());
      }
      if (want_json) {
        nlohmann::json j;
        j["version"] = kVersion;
        j["config_hash"] = c.hash();
        j["seed"] = c.master_seed;
        for (const auto& r : records) j["records"].push_back(io::record_json(r));
        io::write_file_atomically(dir / (base + ".json"), j.dump(2) + "\n");
      }
    }
  }
  return 0;
}

void write_trajectory(const RunConfig& c, const fs::path& dir, const std::string& rate, std::size_t k, double p,
                      std::size_t frames) {
  const auto pts = record_trajectory(c.scheme(rate, k), p, c.master_seed, frames);
  std::ostringstream os;
  std::string extra = "norm=bits/2 rate=" + rate + " k=" + std::to_string(k) + " p=" + io::fmt(p) +
                      " frames=" + std::to_string(frames);
  io::write_trajectory_csv(os, pts, {c.hash(), c.master_seed, extra});
  io::write_file_atomically(dir / "trajectory.csv", os.str());
}

int cmd_exit(const GlobalOptions& g) {
  const RunConfig c = load(g);
  const std::size_t workers = resolve_workers(g, c);
  const fs::path dir = prepare_out(c);
  const auto grid = c.exit.grid_or_default();
  const auto layout = c.memory_last ? QurcLayout::kMemoryLast : QurcLayout::kMemoryFirst;
  std::vector<io::ExitRow> rows;
  for (double p : c.exit.inner_p) {
    std::cerr << "inner curve p=" << io::fmt(p) << "\n";
    for (const auto& pt : inner_exit_curve(p, grid, c.exit.samples, c.master_seed, c.exit.block_length, layout, workers)) {
      rows.push_back({"inner", io::fmt(p), pt});
    }
  }
  for (const auto& rate : c.exit.outer_rates) {
    std::cerr << "outer curve rate " << rate << "\n";
    for (const auto& pt : outer_exit_curve(rate, grid, c.exit.samples, c.master_seed, workers)) {
      rows.push_back({"outer", rate, pt});
    }
  }
  std::ostringstream os;
  io::write_exit_csv(os, rows, {c.hash(), c.master_seed, "norm=bits/2"});
  io::write_file_atomically(dir / "exit.csv", os.str());
  if (c.exit.trajectory) write_trajectory(c, dir, c.rates.front(), c.ks.front(), c.exit.trajectory_p, c.exit.trajectory_frames);
  return 0;
}

int cmd_trajectory(const GlobalOptions& g, std::optional<double> p, std::optional<std::size_t> frames) {
  const RunConfig c = load(g);
  const fs::path dir = prepare_out(c);
  const double pp = p.value_or(c.exit.trajectory_p);
  if (!(pp >= 0.0 && pp < 1.0)) throw InvalidInput("--p must lie in [0, 1)");
  const std::size_t ff = frames.value_or(c.exit.trajectory_frames);
  if (ff == 0) throw InvalidInput("--frames must be >= 1");
  write_trajectory(c, dir, c.rates.front(), c.ks.front(), pp, ff);
  return 0;
}

int cmd_analyze(const GlobalOptions& g, const std::vector<std::string>& inputs, double target) {
  if (inputs.empty()) throw InvalidInput("analyze: no sweep CSVs given (use --in)");
  RunConfig c;
  if (!g.config_path.empty()) c = load_config(g.config_path);
  if (g.out) c.out_dir = *g.out;
  if (g.seed) c.master_seed = *g.seed;
  std::vector<SweepRecord> records;
  for (const auto& path : inputs) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("analyze: cannot read sweep CSV \"" + path + "\"");
    const auto part = io::read_sweep_csv(in, path);
    records.insert(records.end(), part.begin(), part.end());
  }
  if (records.empty()) throw InvalidInput("analyze: sweep CSVs contain no data rows");
  const fs::path dir = prepare_out(c);
  const io::Provenance prov{c.hash(), c.master_seed, ""};
  std::ostringstream gp;
  io::write_goodput_csv(gp, records, prov);
  io::write_file_atomically(dir / "goodput.csv", gp.str());
  std::ostringstream hb;
  io::write_hashing_csv(hb, 0.19, 190, prov);
  io::write_file_atomically(dir / "hashing.csv", hb.str());
  nlohmann::json j;
  j["version"] = kVersion;
  j["uncoded"] = io::switch_table_json(switching_points(records, Requirement::beat_uncoded()));
  j["qber_target"] = io::switch_table_json(switching_points(records, Requirement::qber_at_most(target)));
  io::write_file_atomically(dir / "switch_table.json", j.dump(2) + "\n");
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qturbo: QSBC-QURC quantum turbo code simulator"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--config", g.config_path, "TOML run configuration")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "master seed (overrides mc.master_seed)");
  app.add_option("--threads", g.threads, "worker threads (overrides mc.workers and QTURBO_THREADS)");
  app.add_option("--out", g.out, "output directory (overrides output.directory)");
  app.fallthrough();

  auto* codes = app.add_subcommand("codes", "print code constructions, seeds and reference tables as JSON");
  auto* verify = app.add_subcommand("verify", "replay the worked example, seed tables and small oracles");
  std::string expected;
  verify->add_option("--expected", expected, "JSON file overriding the expected constants")->check(CLI::ExistingFile);
  auto* simulate = app.add_subcommand("simulate", "run Monte-Carlo QBER sweeps");
  auto* exitc = app.add_subcommand("exit", "compute inner and outer EXIT curves");
  auto* traj = app.add_subcommand("trajectory", "record a decoding trajectory");
  std::optional<double> traj_p;
  std::optional<std::size_t> traj_frames;
  traj->add_option("--p", traj_p, "depolarizing probability (overrides exit.trajectory_p)");
  traj->add_option("--frames", traj_frames, "frames to average (overrides exit.trajectory_frames)");
  auto* analyze = app.add_subcommand("analyze", "goodput, hashing-bound overlay and rate switching tables");
  std::vector<std::string> inputs;
  double target = 1e-3;
  analyze->add_option("--in", inputs, "sweep CSV files")->required();
  analyze->add_option("--target", target, "QBER target for the second switching table");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*codes) return cmd_codes(g);
    if (*verify) return cmd_verify(expected);
    if (*simulate) return cmd_simulate(g);
    if (*exitc) return cmd_exit(g);
    if (*traj) return cmd_trajectory(g, traj_p, traj_frames);
    if (*analyze) return cmd_analyze(g, inputs, target);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
