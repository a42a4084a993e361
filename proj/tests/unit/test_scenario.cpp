#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "alphatest/errors.hpp"
#include "alphatest/scenario.hpp"

using namespace alphatest;

TEST(Scenario, DefaultsMatchTheStudyDesign) {
  const ScenarioConfig c;
  EXPECT_EQ(c.n, 200u);
  EXPECT_EQ(c.periods, 100u);
  EXPECT_EQ(c.cov_model, CovModel::M3);
  EXPECT_EQ(c.reps, 1000u);
  EXPECT_EQ(c.gamma, 0.05);
  EXPECT_TRUE(c.flags.adjusted_critical);
  EXPECT_NO_THROW(c.validate());
}

TEST(Scenario, ParsesAllKeys) {
  const ScenarioConfig c = parse_scenario(R"({
    "N": 50, "T": 80, "covModel": "M2", "errorDist": "t5", "m": 3, "reps": 40,
    "gamma": 0.1, "seed": 99, "thresholdDelta": 2.0, "eigenFloor": 0.1,
    "qMt": 0.01, "deltaMt": 0.5, "mGrid": [1, 2, 4], "workers": 2,
    "flags": {"adjustedCritical": false, "freezeCov": true, "fixedSupport": true,
              "sharedFactors": true}
  })");
  EXPECT_EQ(c.n, 50u);
  EXPECT_EQ(c.periods, 80u);
  EXPECT_EQ(c.cov_model, CovModel::M2);
  EXPECT_EQ(c.error_dist, ErrorDist::t5_scaled);
  EXPECT_EQ(c.m, 3u);
  EXPECT_EQ(c.reps, 40u);
  EXPECT_EQ(c.gamma, 0.1);
  EXPECT_EQ(c.seed, 99u);
  EXPECT_EQ(c.threshold_delta, 2.0);
  EXPECT_EQ(c.eigen_floor, 0.1);
  EXPECT_EQ(c.q_mt, 0.01);
  EXPECT_EQ(c.delta_mt, 0.5);
  EXPECT_EQ(c.m_grid, (std::vector<std::size_t>{1, 2, 4}));
  EXPECT_EQ(c.workers, 2);
  EXPECT_FALSE(c.flags.adjusted_critical);
  EXPECT_TRUE(c.flags.freeze_cov);
  EXPECT_TRUE(c.flags.fixed_support);
  EXPECT_TRUE(c.flags.shared_factors);

  const TestConfig t = c.test_config();
  EXPECT_EQ(t.gamma, 0.1);
  EXPECT_FALSE(t.adjusted_critical);
  EXPECT_EQ(t.dependence.threshold_delta, 2.0);
  EXPECT_EQ(t.dependence.eigen_floor, 0.1);
  EXPECT_EQ(t.dependence.q_mt, 0.01);
}

TEST(Scenario, NumericModelIndex) {
  EXPECT_EQ(parse_scenario(R"({"covModel": 4})").cov_model, CovModel::M4);
  EXPECT_THROW(parse_scenario(R"({"covModel": 5})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"covModel": "M9"})"), ConfigError);
}

TEST(Scenario, RoundTripsThroughJson) {
  ScenarioConfig c;
  c.n = 30;
  c.cov_model = CovModel::M4;
  c.error_dist = ErrorDist::mixture_scaled;
  c.seed = 123456789012345ull;
  c.m_grid = {5, 10};
  c.flags.freeze_cov = true;
  c.threshold_delta = 1.75;
  EXPECT_EQ(parse_scenario(dump_scenario(c)), c);
}

TEST(Scenario, RejectsInvalidConfigs) {
  EXPECT_THROW(parse_scenario(R"({"gamma": 0.7})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"gamma": 0})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"N": 10, "m": 11})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"N": 10, "mGrid": [3, 12]})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"reps": 0})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"T": 8})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"bogus": 1})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"flags": {"bogus": true}})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"errorDist": "cauchy"})"), ConfigError);
  EXPECT_THROW(parse_scenario("{not json"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"N": "many"})"), ConfigError);
}

TEST(Scenario, LoadsFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "alphatest_scenario_test.json";
  {
    std::ofstream out(path);
    out << R"({"N": 20, "reps": 7})";
  }
  const ScenarioConfig c = load_scenario(path);
  EXPECT_EQ(c.n, 20u);
  EXPECT_EQ(c.reps, 7u);
  std::filesystem::remove(path);
  EXPECT_THROW(load_scenario(path), InputError);
}
