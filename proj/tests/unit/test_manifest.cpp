// Copyright 2026 The Condor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "condor/manifest.hpp"

#include <gtest/gtest.h>

#include <fstream>

using namespace condor;

namespace {

std::size_t error_line(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return 0;
}

std::string error_text(const std::string& text) {
  try {
    parse_config_text(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(ParseConfig, EmptyFileGivesDefaults) {
  const auto m = parse_config_text("");
  ASSERT_EQ(m.datasets.size(), 6u);
  std::vector<std::string> names;
  for (const auto& d : m.datasets) names.push_back(d.name);
  EXPECT_EQ(names, (std::vector<std::string>{"SEA200A", "SEA200G", "SEA500G", "CIR500G", "SIN500G", "STA500G"}));
  ASSERT_EQ(m.configs.size(), 3u);
  EXPECT_EQ(m.configs[0].name, "condor");
  EXPECT_EQ(m.configs[1].name, "no-reuse");
  EXPECT_EQ(m.configs[2].name, "window-only");
  const auto& c = m.configs[0].config;
  EXPECT_EQ(c.epoch_cap, 50u);
  EXPECT_EQ(c.capacity, 25u);
  EXPECT_EQ(c.mu, 200.0);
  EXPECT_EQ(c.eta, 0.75);
  EXPECT_EQ(c.detector_delta, 0.002);
  EXPECT_EQ(m.trials, 10u);
  EXPECT_EQ(m.seeds.size(), 10u);
  EXPECT_EQ(m.seeds.back(), 9u);
}

TEST(ParseConfig, AblationsDifferOnlyWhereIntended) {
  const auto m = parse_config_text("[config.base]\nmu = 3\n");
  EXPECT_FALSE(m.configs[1].config.reuse);
  EXPECT_EQ(m.configs[1].config.mu, 3.0);
  EXPECT_EQ(m.configs[1].config.capacity, 25u);
  EXPECT_FALSE(m.configs[2].config.reuse);
  EXPECT_EQ(m.configs[2].config.capacity, 1u);
  EXPECT_EQ(parse_config_text("ablations = false").configs.size(), 1u);
}

TEST(ParseConfig, FullExample) {
  const auto m = parse_config_text(R"(# comment
trials = 3
seeds = 4, 5, 6   # trailing comment
output_dir = results
workers = 2

[dataset.SEA-recur]
p = 100

[dataset.mysea]
family = SEA
schedule = 10, 20
period = 50
noise = 0.1

[dataset.ring]
family = CIR
cir_boundary = circle
length = 1000

[dataset.ext]
family = CSV
path = data/stream.csv
label_column = y
p = 200

[config.theory]
step_size = theory
loss = squared_clipped
detector = none
K = 10
adwin_buckets = 7
reuse = yes
init_size = 5
)",
                                   "/base");
  EXPECT_EQ(m.seeds, (std::vector<std::uint64_t>{4, 5, 6}));
  EXPECT_EQ(m.output_dir, "results");
  EXPECT_EQ(m.workers, 2u);
  ASSERT_EQ(m.datasets.size(), 4u);

  const auto& recur = m.datasets[0];
  ASSERT_TRUE(recur.synthetic);
  EXPECT_EQ(recur.synthetic->total_length, 800u);
  EXPECT_EQ(*recur.epoch_cap, 100u);

  const auto& mysea = *m.datasets[1].synthetic;
  EXPECT_EQ(mysea.concept_schedule, (std::vector<double>{10, 20}));
  EXPECT_EQ(mysea.total_length, 100u);
  EXPECT_EQ(mysea.noise_rate, 0.1);

  const auto& ring = *m.datasets[2].synthetic;
  EXPECT_EQ(ring.cir_boundary, CirBoundary::Circle);
  EXPECT_EQ(ring.drift_period, 500u);
  EXPECT_EQ(ring.concept_schedule, (std::vector<double>{3, 2.5}));

  const auto& ext = m.datasets[3];
  EXPECT_TRUE(ext.is_csv());
  EXPECT_EQ(ext.csv_path, std::filesystem::path("/base/data/stream.csv"));
  EXPECT_EQ(ext.label_column, "y");
  EXPECT_EQ(*ext.epoch_cap, 200u);

  const auto& c = m.configs[0];
  EXPECT_EQ(c.name, "theory");
  EXPECT_EQ(c.config.step_size, StepSizeRule::Theory);
  EXPECT_EQ(c.config.loss, LossKind::SquaredClipped);
  EXPECT_FALSE(c.config.use_detector);
  EXPECT_EQ(c.config.capacity, 10u);
  EXPECT_EQ(c.config.detector_buckets, 7);
  EXPECT_EQ(c.config.init_size, 5u);
}

TEST(ParseConfig, RangeErrorsNameTheKey) {
  EXPECT_EQ(error_line("[config.a]\n\neta = -1\n"), 3u);
  EXPECT_NE(error_text("[config.a]\neta = -1\n").find("'eta'"), std::string::npos);
  EXPECT_NE(error_text("[config.a]\nmu = 0\n").find("'mu'"), std::string::npos);
  EXPECT_NE(error_text("[config.a]\np = 0\n").find("'p'"), std::string::npos);
  EXPECT_NE(error_text("[config.a]\nK = -3\n").find("'K'"), std::string::npos);
  EXPECT_NE(error_text("[config.a]\ndelta = 1.5\n").find("'delta'"), std::string::npos);
  EXPECT_NE(error_text("[dataset.SEA200A]\nnoise = 1\n").find("'noise'"), std::string::npos);
  EXPECT_NE(error_text("trials = 0\n").find("'trials'"), std::string::npos);
}

TEST(ParseConfig, UnknownKeysAreErrors) {
  EXPECT_EQ(error_line("trials = 2\nflavour = x\n"), 2u);
  EXPECT_EQ(error_line("[config.a]\nmu = 1\nlamda = 2\n"), 3u);
  EXPECT_EQ(error_line("[dataset.SEA200A]\nnoyse = 0.1\n"), 2u);
  EXPECT_NE(error_text("[config.a]\nlamda = 2\n").find("unknown key 'lamda'"), std::string::npos);
}

TEST(ParseConfig, SyntaxErrors) {
  EXPECT_EQ(error_line("trials = 2\njust words\n"), 2u);
  EXPECT_EQ(error_line("[dataset.x\n"), 1u);
  EXPECT_EQ(error_line("[model.x]\n"), 1u);
  EXPECT_EQ(error_line("[config.bad_name]\n"), 1u);
  EXPECT_EQ(error_line("[config.a]\n[config.a]\n"), 2u);
  EXPECT_EQ(error_line("[config.a]\nmu = 1\nmu = 2\n"), 3u);
  EXPECT_EQ(error_line("[config.a]\nmu = 1x\n"), 2u);
  EXPECT_EQ(error_line("[config.a]\nreuse = maybe\n"), 2u);
  EXPECT_EQ(error_line("[config.a]\nloss = hinge\n"), 2u);
  EXPECT_EQ(error_line("[config.a]\ndetector = ddm\n"), 2u);
}

TEST(ParseConfig, DatasetErrors) {
  EXPECT_THROW(parse_config_text("[dataset.unknown]\nperiod = 10\n"), ParseError);
  EXPECT_THROW(parse_config_text("[dataset.x]\nfamily = CSV\n"), ParseError);
  EXPECT_EQ(error_line("[dataset.x]\nfamily = SEA\nlength = 101\nperiod = 10\n"), 3u);
  EXPECT_EQ(error_line("[dataset.x]\nfamily = SEA\npath = a.csv\n"), 3u);
  EXPECT_EQ(error_line("[dataset.x]\nfamily = SEA\ncir_boundary = circle\n"), 3u);
  EXPECT_EQ(error_line("[dataset.x]\nfamily = XYZ\n"), 2u);
  EXPECT_THROW(parse_config_text("[dataset.x]\nfamily = STA\nschedule = 1, 5\n"), ParseError);
}

TEST(ParseConfig, ReadsFromFile) {
  const auto dir = std::filesystem::temp_directory_path() / "condor_manifest_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "c.conf") << "[dataset.ext]\nfamily = CSV\npath = s.csv\n";
  }
  const auto m = parse_config(dir / "c.conf");
  EXPECT_EQ(m.datasets[0].csv_path, dir / "s.csv");
  EXPECT_THROW(parse_config(dir / "missing.conf"), ParseError);
  std::filesystem::remove_all(dir);
}
