// Copyright 2026 The BAROCCO Authors
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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "barocco/common/errors.h"
#include "barocco/common/random.h"
#include "barocco/envs/matrix_game.h"
#include "barocco/envs/toy_games.h"
#include "barocco/harness/config.h"
#include "barocco/harness/metrics.h"
#include "barocco/harness/runner.h"
#include "barocco/harness/verify.h"
#include "barocco/q/checkpoint.h"
#include "barocco/q/q_learner.h"
#include "barocco/tabular/q_table.h"
#include "barocco/welfare/welfare.h"
#include "gtest/gtest.h"

namespace barocco {
namespace {

ExperimentConfig TinyQ(std::string_view algorithm) {
  ExperimentConfig c = DefaultConfig("eldorado_lite", "q");
  c.algorithm = std::string(algorithm);
  c.lambda = algorithm == "selfish" ? 0.0 : 1.0;
  c.total_steps = 240;
  c.eval_interval = 80;
  c.eval_episodes = 1;
  c.horizon = 40;
  c.q_hidden = {16};
  c.mixer_embed = 4;
  c.hyper_hidden = 8;
  c.batch_size = 8;
  c.buffer_size = 500;
  c.target_period = 50;
  c.learning_starts = 20;
  c.seed = 3;
  return c;
}

ExperimentConfig TinyAc(std::string_view algorithm) {
  ExperimentConfig c = DefaultConfig("harvest_lite", "ac");
  c.algorithm = std::string(algorithm);
  c.lambda = algorithm == "selfish" ? 0.0 : 1.0;
  c.total_steps = 240;
  c.eval_interval = 120;
  c.eval_episodes = 1;
  c.horizon = 40;
  c.policy_hidden = {16};
  c.critic_hidden = {16};
  c.batch_size = 60;
  c.minibatch_size = 20;
  c.epochs = 2;
  c.seed = 5;
  return c;
}

std::string RunLog(const ExperimentConfig& config, RunOptions options = {}) {
  std::ostringstream log;
  options.log = &log;
  barocco::Run(config, options);
  return log.str();
}

std::filesystem::path TempPath(const std::string& name) {
  return std::filesystem::temp_directory_path() /
         (name + "_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
}

TEST(ConfigTest, SerializeParseRoundTrip) {
  for (const char* env : {"eldorado_lite", "harvest", "mpd"}) {
    ExperimentConfig c = DefaultConfig(env, env == std::string("mpd") ? "tabular" : "ac");
    c.seed = 17;
    c.gamma = 0.9;
    c.sw = SwChoice::kMin;
    c.lambda = 0.3;
    if (c.framework == "tabular") c.sw = SwChoice::kSum;
    c.policy_hidden = {7, 9};
    EXPECT_EQ(ParseConfig(SerializeConfig(c)), c) << env;
  }
}

TEST(ConfigTest, SerializeListsEveryKey) {
  const std::string text = SerializeConfig(ExperimentConfig{});
  for (const std::string& key : ConfigKeys()) {
    EXPECT_NE(text.find(key + " = "), std::string::npos) << key;
  }
}

TEST(ConfigTest, CommentsAndBlankLinesIgnored) {
  const ExperimentConfig c = ParseConfig("# header\n\n  seed = 4  # trailing\nlambda=0.5\n");
  EXPECT_EQ(c.seed, 4u);
  EXPECT_EQ(c.lambda, 0.5);
  EXPECT_EQ(c.env, "eldorado_lite");
}

TEST(ConfigTest, UnknownDuplicateAndMalformedLinesRejected) {
  EXPECT_THROW(ParseConfig("colour = red\n"), ConfigError);
  EXPECT_THROW(ParseConfig("seed = 1\nseed = 2\n"), ConfigError);
  EXPECT_THROW(ParseConfig("seed 1\n"), ConfigError);
  EXPECT_THROW(ParseConfig("seed = -x\n"), ConfigError);
  EXPECT_THROW(ParseConfig("gamma = nan\n"), ConfigError);
  EXPECT_THROW(ParseConfig("fingerprint = maybe\n"), ConfigError);
  EXPECT_THROW(ParseConfig("q_hidden = 8,0\n"), ConfigError);
  EXPECT_THROW(ParseConfig("sw = mean\n"), std::exception);
}

TEST(ConfigTest, AlgorithmFixesLambda) {
  EXPECT_EQ(ParseConfig("algorithm = selfish\nlambda = 0.7\n").lambda, 0.0);
  EXPECT_EQ(ParseConfig("algorithm = vanilla\nlambda = 0.2\n").lambda, 1.0);
  EXPECT_EQ(ParseConfig("algorithm = crs\nlambda = 0.2\n").lambda, 0.2);
}

TEST(ConfigTest, ValidateNamesUnrunnableCombinations) {
  auto rejects = [](const std::string& text) {
    try {
      ParseConfig(text);
    } catch (const ConfigError&) {
      return true;
    }
    return false;
  };
  EXPECT_TRUE(rejects("env = allocator\nframework = q\n"));
  EXPECT_TRUE(rejects("env = eldorado\nframework = exhaustive\n"));
  EXPECT_TRUE(rejects("env = harvest\nframework = tabular\n"));
  EXPECT_TRUE(rejects("env = mpd\nframework = tabular\nalgorithm = barocco\n"));
  EXPECT_TRUE(rejects("lambda = 1.5\n"));
  EXPECT_TRUE(rejects("gamma = 1\n"));
  EXPECT_TRUE(rejects("total_steps = 0\n"));
  EXPECT_TRUE(rejects("buffer_size = 1\n"));
  EXPECT_TRUE(rejects("env = harvest\nframework = ac\nclip = 0\n"));
  EXPECT_FALSE(rejects("algorithm = vanilla\nsw = min\n"));
  EXPECT_FALSE(rejects("env = allocator\nframework = exhaustive\n"));
}

TEST(ConfigTest, SetConfigValueRejectsUnknownKey) {
  ExperimentConfig c;
  SetConfigValue(c, "n_step", "3");
  EXPECT_EQ(c.n_step, 3);
  EXPECT_THROW(SetConfigValue(c, "nstep", "3"), ConfigError);
}

TEST(ConfigTest, HashTracksEveryField) {
  const ExperimentConfig base;
  const std::string h = ConfigHash(base);
  EXPECT_EQ(h.size(), 16u);
  EXPECT_EQ(ConfigHash(base), h);
  ExperimentConfig changed = base;
  changed.seed = 1;
  EXPECT_NE(ConfigHash(changed), h);
  changed = base;
  changed.entropy_decay = std::nextafter(base.entropy_decay, 1.0);
  EXPECT_NE(ConfigHash(changed), h);
}

TEST(ConfigTest, LoadConfigMissingFile) {
  EXPECT_THROW(LoadConfig("/nonexistent/run.cfg"), ConfigError);
}

TEST(MetricsTest, RowTotalsAndFairness) {
  const MetricRow row = MakeMetricRow(9, {1.0, 3.0}, {2.0, 2.0}, {10.0, 4.0});
  EXPECT_EQ(row.total, 4.0);
  EXPECT_EQ(row.score_sum, 4.0);
  EXPECT_DOUBLE_EQ(row.fairness, 1.0);
  const MetricRow skewed = MakeMetricRow(9, {0.0, 0.0}, {0.0, 4.0}, {1.0, 1.0});
  EXPECT_DOUBLE_EQ(skewed.fairness, 1.0 - Gini(std::vector<double>{0.0, 4.0}));
  EXPECT_THROW(MakeMetricRow(1, {1.0}, {1.0, 2.0}, {1.0}), ShapeError);
}

TEST(MetricsTest, CsvRoundTripIsExact) {
  const MetricRow row = MakeMetricRow(123, {0.1, -2.5, 1.0 / 3.0}, {3.0, 0.7, 1e-17},
                                      {5.0, 6.0, 7.0});
  const MetricRow back = ParseMetricRow(row.ToCsv(), 3);
  EXPECT_EQ(back.step, row.step);
  EXPECT_EQ(back.payoffs, row.payoffs);
  EXPECT_EQ(back.total, row.total);
  EXPECT_EQ(back.scores, row.scores);
  EXPECT_EQ(back.score_sum, row.score_sum);
  EXPECT_EQ(back.fairness, row.fairness);
  EXPECT_EQ(back.lengths, row.lengths);
  EXPECT_THROW(ParseMetricRow(row.ToCsv(), 2), DomainError);
  EXPECT_THROW(ParseMetricRow("1,x", 0), DomainError);
}

TEST(MetricsTest, HeaderCarriesHashAndColumns) {
  const std::string header = MetricHeader("abc", 2);
  EXPECT_EQ(header,
            "# config_hash=abc columns=step,payoff_0,payoff_1,total,score_0,score_1,"
            "score_sum,fairness,length_0,length_1");
}

TEST(RunnerTest, MakeEnvironmentMatchesConfig) {
  ExperimentConfig c = DefaultConfig("harvest_lite", "q");
  EXPECT_EQ(MakeEnvironment(c)->num_agents(), 2);
  c = DefaultConfig("harvest", "q");
  EXPECT_EQ(MakeEnvironment(c)->num_agents(), 5);
  c = DefaultConfig("allocator", "exhaustive");
  EXPECT_THROW(MakeEnvironment(c), ConfigError);
}

TEST(RunnerTest, AlgorithmDispatch) {
  const ExperimentConfig base = TinyQ("barocco");
  const auto env = MakeEnvironment(base);
  ExperimentConfig vanilla = base;
  vanilla.algorithm = "vanilla";
  const QConfig qv = MakeQConfig(vanilla, *env);
  EXPECT_EQ(qv.mode, SocialMode::kShort);
  EXPECT_FALSE(qv.train_selfish);
  EXPECT_TRUE(qv.train_social);
  const QConfig qb = MakeQConfig(base, *env);
  EXPECT_EQ(qb.mode, SocialMode::kLong);
  EXPECT_TRUE(qb.train_selfish && qb.train_social);
  ExperimentConfig crs = base;
  crs.algorithm = "crs";
  const QConfig qc = MakeQConfig(crs, *env);
  EXPECT_TRUE(qc.crs);
  EXPECT_FALSE(qc.train_social);
  ExperimentConfig selfish = base;
  selfish.algorithm = "selfish";
  selfish.lambda = 0.0;
  const AcConfig as = MakeAcConfig(selfish, *env);
  EXPECT_FALSE(as.train_social);
  EXPECT_EQ(as.lambda, 0.0);
}

TEST(RunnerTest, RowsAtEvalIntervalAndEnd) {
  ExperimentConfig c = TinyQ("barocco");
  c.total_steps = 200;
  const RunOutput out = barocco::Run(c, {});
  ASSERT_EQ(out.rows.size(), 3u);
  EXPECT_EQ(out.rows[0].step, 80);
  EXPECT_EQ(out.rows[1].step, 160);
  EXPECT_EQ(out.rows[2].step, 200);
  EXPECT_EQ(out.config_hash, ConfigHash(c));
}

TEST(RunnerTest, LogsAreByteIdenticalAcrossRuns) {
  for (const ExperimentConfig& c : {TinyQ("barocco"), TinyAc("barocco")}) {
    const std::string first = RunLog(c);
    EXPECT_EQ(first, RunLog(c)) << c.framework;
    EXPECT_EQ(first.rfind("# config_hash=" + ConfigHash(c), 0), 0u);
  }
}

TEST(RunnerTest, SeedChangesLog) {
  ExperimentConfig a = TinyAc("barocco");
  ExperimentConfig b = a;
  b.seed = a.seed + 1;
  std::vector<int> first, second;
  RunOptions oa, ob;
  oa.on_action = [&](std::int64_t, const std::vector<int>& x) {
    first.insert(first.end(), x.begin(), x.end());
  };
  ob.on_action = [&](std::int64_t, const std::vector<int>& x) {
    second.insert(second.end(), x.begin(), x.end());
  };
  barocco::Run(a, oa);
  barocco::Run(b, ob);
  EXPECT_NE(first, second);
}

TEST(RunnerTest, SelfishMatchesBaroccoAtLambdaZero) {
  for (bool ac : {false, true}) {
    ExperimentConfig selfish = ac ? TinyAc("selfish") : TinyQ("selfish");
    ExperimentConfig barocco = selfish;
    barocco.algorithm = "barocco";
    std::vector<int> a, b;
    RunOptions oa, ob;
    oa.on_action = [&](std::int64_t, const std::vector<int>& x) {
      a.insert(a.end(), x.begin(), x.end());
    };
    ob.on_action = [&](std::int64_t, const std::vector<int>& x) {
      b.insert(b.end(), x.begin(), x.end());
    };
    barocco::Run(selfish, oa);
    barocco::Run(barocco, ob);
    EXPECT_EQ(a, b) << (ac ? "ac" : "q");
    EXPECT_EQ(a.size(), 2u * static_cast<std::size_t>(selfish.total_steps));
  }
}

TEST(RunnerTest, VanillaWithMinRuns) {
  ExperimentConfig c = TinyQ("vanilla");
  c.sw = SwChoice::kMin;
  c.total_steps = 100;
  EXPECT_EQ(barocco::Run(c, {}).rows.size(), 2u);
}

TEST(RunnerTest, TrajectoryAndDiagnosticsWritten) {
  ExperimentConfig c = TinyAc("barocco");
  std::ostringstream trajectory, diagnostics;
  RunOptions options;
  options.trajectory = &trajectory;
  options.diagnostics = &diagnostics;
  barocco::Run(c, options);
  EXPECT_FALSE(trajectory.str().empty());
  EXPECT_NE(diagnostics.str().find("clip_fraction="), std::string::npos);
}

TEST(RunnerTest, ExhaustiveAllocatorMatchesEnumeration) {
  ExperimentConfig c = DefaultConfig("allocator", "exhaustive");
  c.gamma = 0.9;
  const RunOutput out = barocco::Run(c, {});
  const std::vector<AllocatorOutcome> expected = EnumerateAllocatorOutcomes(0.9);
  ASSERT_EQ(out.rows.size(), expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) {
    EXPECT_EQ(out.rows[k].step, expected[k].option);
    EXPECT_EQ(out.rows[k].payoffs[0], expected[k].values[0]);
    EXPECT_EQ(out.rows[k].payoffs[1], expected[k].values[1]);
    EXPECT_EQ(out.rows[k].total, expected[k].values[0] + expected[k].values[1]);
  }
}

TEST(RunnerTest, TabularRunReportsMpdPayoffs) {
  ExperimentConfig c = DefaultConfig("mpd", "tabular");
  c.algorithm = "selfish";
  c.lambda = 0.0;
  c.total_steps = 20000;
  c.eval_interval = 20000;
  const RunOutput out = barocco::Run(c, {});
  ASSERT_EQ(out.rows.size(), 1u);
  const MpdOutcome direct = TrainMpd(0.0, c.seed, {.iterations = 20000});
  const MatrixGameSpec spec = ModifiedPrisonersDilemma();
  EXPECT_EQ(out.rows[0].payoffs[0],
            spec.payoffs[direct.row_action][direct.column_action][0]);
}

TEST(RunnerTest, CheckpointRoundTripReproducesEvaluation) {
  for (bool ac : {false, true}) {
    ExperimentConfig c = ac ? TinyAc("barocco") : TinyQ("barocco");
    c.fingerprint = false;
    const std::string path = TempPath(ac ? "ckpt_ac" : "ckpt_q").string();
    RunOptions save;
    save.checkpoint_out = path;
    const RunOutput trained = barocco::Run(c, save);
    RunOptions load;
    load.checkpoint_in = path;
    load.eval_only = true;
    const RunOutput evaluated = barocco::Run(c, load);
    ASSERT_EQ(evaluated.rows.size(), 1u);
    EXPECT_EQ(evaluated.rows[0].payoffs, trained.rows.back().payoffs);
    EXPECT_EQ(evaluated.rows[0].lengths, trained.rows.back().lengths);
    ExperimentConfig other = c;
    other.seed += 1;
    EXPECT_THROW(barocco::Run(other, load), ConfigError);
    std::filesystem::remove(path);
  }
}

TEST(CheckpointTest, StreamRoundTripAndErrors) {
  Rng rng(1, 2);
  DenseNetwork a({3, 4, 2}), b({3, 4, 2}), c({3, 5, 2});
  a.InitUniformFanIn(rng);
  std::stringstream stream;
  SaveCheckpoint(stream, "h1", {{"net", &a}});
  const std::string text = stream.str();
  EXPECT_EQ(text.rfind(std::string(kCheckpointMagic) + " 1\n", 0), 0u);
  std::istringstream in(text);
  LoadCheckpoint(in, "h1", {{"net", &b}});
  EXPECT_EQ(std::vector<double>(a.parameters().begin(), a.parameters().end()),
            std::vector<double>(b.parameters().begin(), b.parameters().end()));
  std::istringstream wrong_hash(text), wrong_name(text), wrong_size(text);
  EXPECT_THROW(LoadCheckpoint(wrong_hash, "h2", {{"net", &b}}), ConfigError);
  EXPECT_THROW(LoadCheckpoint(wrong_name, "h1", {{"other", &b}}), ConfigError);
  EXPECT_THROW(LoadCheckpoint(wrong_size, "h1", {{"net", &c}}), ConfigError);
  std::istringstream truncated(text.substr(0, text.size() / 2));
  EXPECT_THROW(LoadCheckpoint(truncated, "h1", {{"net", &b}}), ConfigError);
  std::istringstream junk("not a checkpoint");
  EXPECT_THROW(LoadCheckpoint(junk, "h1", {{"net", &b}}), ConfigError);
}

TEST(VerifyTest, AllChecksPass) {
  const std::vector<CheckResult> results = RunVerification();
  EXPECT_EQ(results.size(), 9u);
  for (const CheckResult& r : results) EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
}

TEST(VerifyTest, MutatedLongTargetIsCaught) {
  VerifyOptions mutated;
  mutated.long_target = [](std::span<const double> y, SwChoice sw) {
    return -LongSocialTarget(y, sw);
  };
  bool caught = false;
  for (const CheckResult& r : RunVerification(mutated)) {
    if (r.name == "short/long target commutativity") caught = !r.passed;
  }
  EXPECT_TRUE(caught);
  VerifyOptions scaled;
  scaled.long_target = [](std::span<const double> y, SwChoice sw) {
    return 0.99 * LongSocialTarget(y, sw);
  };
  for (const CheckResult& r : RunVerification(scaled)) {
    if (r.name == "short/long target commutativity") {
      EXPECT_FALSE(r.passed);
    }
  }
}

}  // namespace
}  // namespace barocco
