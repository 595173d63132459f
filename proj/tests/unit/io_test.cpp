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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "test_util.hpp"

namespace qturbo {
namespace {

namespace fs = std::filesystem;

TEST(Toml, ScalarsTablesAndArrays) {
  const auto j = toml::parse(R"(
# comment
top = 3
[code]
rate = ["1/2", '2/3']   # trailing comment
k = 500
[channel]
p = [
  0.01,
  2e-2,  # comment inside
  0.03,
]
flag = true
neg = -4
)");
  EXPECT_EQ(j.at("top"), 3);
  EXPECT_EQ(j.at("code").at("rate"), nlohmann::json({"1/2", "2/3"}));
  EXPECT_EQ(j.at("code").at("k"), 500);
  EXPECT_EQ(j.at("channel").at("p").size(), 3U);
  EXPECT_DOUBLE_EQ(j.at("channel").at("p")[1].get<double>(), 0.02);
  EXPECT_EQ(j.at("channel").at("flag"), true);
  EXPECT_EQ(j.at("channel").at("neg"), -4);
}

TEST(Toml, StringEscapes) {
  const auto j = toml::parse("a = \"x\\ty\\\"z\"\nb = 'c:\\path'\n");
  EXPECT_EQ(j.at("a"), "x\ty\"z");
  EXPECT_EQ(j.at("b"), "c:\\path");
}

TEST(Toml, Rejections) {
  EXPECT_THROW(toml::parse("a = {b = 1}"), InvalidInput);
  EXPECT_THROW(toml::parse("a.b = 1"), InvalidInput);
  EXPECT_THROW(toml::parse("a = 1\na = 2"), InvalidInput);
  EXPECT_THROW(toml::parse("[t]\n[t]"), InvalidInput);
  EXPECT_THROW(toml::parse("a = "), InvalidInput);
  EXPECT_THROW(toml::parse("a = [1, 2"), InvalidInput);
  EXPECT_THROW(toml::parse("a = \"open"), InvalidInput);
  EXPECT_THROW(toml::parse("just words"), InvalidInput);
  try {
    toml::parse("a = 1\n\nb = @");
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(Config, Defaults) {
  const auto c = parse_config("");
  EXPECT_EQ(c.rates, std::vector<std::string>{"1/2"});
  EXPECT_EQ(c.iterations, 16U);
  EXPECT_EQ(c.exit.grid_or_default().size(), 21U);
  EXPECT_DOUBLE_EQ(c.exit.grid_or_default().back(), 2.0);
}

TEST(Config, FullDocument) {
  const auto c = parse_config(R"(
[code]
rate = ["1/2", "3/4"]
k = [96, 498]
[channel]
p = [0.01, 0.02]
[decoder]
iterations = 12
early_stop = false
interleaver_seed = 9
[mc]
max_frames = 50
target_errors = 10
master_seed = 77
workers = 3
[output]
directory = "results"
formats = ["csv", "json"]
[exit]
samples = 5000
grid = [0.0, 1.0, 2.0]
)");
  EXPECT_EQ(c.ks, (std::vector<std::size_t>{96, 498}));
  EXPECT_EQ(c.p_list.size(), 2U);
  EXPECT_EQ(c.iterations, 12U);
  EXPECT_FALSE(c.early_stop);
  EXPECT_EQ(c.stop.max_frames, 50U);
  EXPECT_EQ(c.master_seed, 77U);
  EXPECT_EQ(c.workers, 3U);
  EXPECT_EQ(c.out_dir, "results");
  EXPECT_EQ(c.exit.samples, 5000U);
  const auto s = c.scheme("3/4", 498);
  EXPECT_EQ(s.iterations, 12U);
  EXPECT_EQ(s.interleaver_seed, 9U);
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(parse_config("[code]\nrte = \"1/2\""), InvalidInput);
  EXPECT_THROW(parse_config("[codes]\nrate = \"1/2\""), InvalidInput);
  EXPECT_THROW(parse_config("[decoder]\niterations = -1"), InvalidInput);
  EXPECT_THROW(parse_config("[decoder]\niterations = 0"), InvalidInput);
  EXPECT_THROW(parse_config("[decoder]\nearly_stop = 1"), InvalidInput);
  EXPECT_THROW(parse_config("[code]\nrate = \"1/3\""), InvalidInput);
  EXPECT_THROW(parse_config("[code]\nrate = \"3/4\"\nk = 500"), InvalidInput);
  EXPECT_THROW(parse_config("[channel]\np = 1.5"), InvalidInput);
  EXPECT_THROW(parse_config("[output]\nformats = [\"xml\"]"), InvalidInput);
  EXPECT_THROW(parse_config("[exit]\ngrid = [3.0]"), InvalidInput);
  try {
    parse_config("[mc]\nseed = 3");
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("mc.seed"), std::string::npos);
  }
}

TEST(Config, HashIgnoresWorkersAndOutput) {
  const auto a = parse_config("[mc]\nworkers = 1\n[output]\ndirectory = \"a\"");
  const auto b = parse_config("[mc]\nworkers = 8\n[output]\ndirectory = \"b\"");
  const auto c = parse_config("[mc]\nmaster_seed = 2");
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_NE(a.hash(), c.hash());
  EXPECT_EQ(a.hash().size(), 16U);
}

SweepRecord sample_record() {
  SweepRecord r;
  r.rate = 0.5;
  r.k = 500;
  r.p = 0.03;
  r.frames = 120;
  r.qubit_errors = 101;
  r.qubit_total = 60000;
  r.qber = 101.0 / 60000.0;
  std::tie(r.ci_low, r.ci_high) = wilson_interval(101, 60000);
  r.mean_iterations = 5.25;
  return r;
}

TEST(Csv, SweepRoundTrip) {
  const auto r = sample_record();
  SweepRecord r2 = r;
  r2.rate = 2.0 / 3.0;
  r2.k = 498;
  std::stringstream ss;
  io::write_sweep_csv(ss, {r, r2}, io::Provenance{"abc", 7, ""});
  std::string first;
  std::getline(std::stringstream(ss.str()), first);
  EXPECT_EQ(first, "# qturbo 1.0.0 config=abc seed=7");
  const auto back = io::read_sweep_csv(ss);
  ASSERT_EQ(back.size(), 2U);
  EXPECT_EQ(back[0].k, 500U);
  EXPECT_EQ(back[0].qubit_errors, 101U);
  EXPECT_NEAR(back[0].qber, r.qber, 1e-12);
  EXPECT_EQ(back[1].rate, 2.0 / 3.0);
  EXPECT_EQ(io::rate_label(back[1].rate), "2/3");
}

TEST(Csv, SweepReaderRejectsMalformedInput) {
  std::stringstream bad_header("rate,k\n1,2\n");
  EXPECT_THROW(io::read_sweep_csv(bad_header), InvalidInput);
  std::stringstream empty("# nothing\n");
  EXPECT_THROW(io::read_sweep_csv(empty), InvalidInput);
  std::stringstream short_row(std::string(io::kSweepColumns) + "\n0.5,500,0.03\n");
  EXPECT_THROW(io::read_sweep_csv(short_row), InvalidInput);
  std::stringstream no_qber(std::string(io::kSweepColumns) + "\n0.5,500,0.03,1,0,500,,0,1,1\n");
  EXPECT_THROW(io::read_sweep_csv(no_qber), InvalidInput);
  std::stringstream text(std::string(io::kSweepColumns) + "\n0.5,500,abc,1,0,500,0,0,1,1\n");
  EXPECT_THROW(io::read_sweep_csv(text), InvalidInput);
}

TEST(Csv, OtherWriters) {
  std::stringstream h;
  io::write_hashing_csv(h, 0.19, 19, io::Provenance{"x", 1, ""});
  std::string line;
  std::getline(h, line);
  EXPECT_EQ(line.rfind("# qturbo", 0), 0U);
  std::getline(h, line);
  EXPECT_EQ(line, io::kHashingColumns);
  std::getline(h, line);
  EXPECT_EQ(line, "0,1");

  std::stringstream g;
  io::write_goodput_csv(g, {sample_record()}, io::Provenance{"x", 1, ""});
  EXPECT_NE(g.str().find(io::kGoodputColumns), std::string::npos);

  const auto table = switching_points({sample_record()}, Requirement::qber_at_most(3e-3));
  const auto j = io::switch_table_json(table);
  EXPECT_TRUE(j.contains("thresholds"));
}

TEST(Csv, RecordJsonRoundTrip) {
  const auto r = sample_record();
  const auto back = io::record_from_json(io::record_json(r));
  EXPECT_EQ(back.frames, r.frames);
  EXPECT_EQ(back.qber, r.qber);
  EXPECT_EQ(back.mean_iterations, r.mean_iterations);
}

class ManifestTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("qturbo_manifest_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(ManifestTest, ResumesOnlyMatchingRuns) {
  const auto path = dir_ / "manifest.json";
  const auto key = io::Manifest::key("1/2", 500, 0.03);
  {
    io::Manifest m(path, "h1", 5);
    EXPECT_EQ(m.resumed(), 0U);
    EXPECT_FALSE(m.find(key));
    m.complete(key, sample_record());
  }
  EXPECT_TRUE(fs::exists(path));
  EXPECT_FALSE(fs::exists(path.string() + ".tmp"));
  io::Manifest same(path, "h1", 5);
  EXPECT_EQ(same.resumed(), 1U);
  ASSERT_TRUE(same.find(key));
  EXPECT_EQ(same.find(key)->qubit_errors, 101U);
  EXPECT_EQ(io::Manifest(path, "h2", 5).resumed(), 0U);
  EXPECT_EQ(io::Manifest(path, "h1", 6).resumed(), 0U);
}

TEST_F(ManifestTest, CorruptFileStartsAfresh) {
  const auto path = dir_ / "manifest.json";
  std::ofstream(path) << "{not json";
  EXPECT_EQ(io::Manifest(path, "h1", 5).resumed(), 0U);
}

}  // namespace
}  // namespace qturbo
