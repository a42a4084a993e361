#include <gtest/gtest.h>

#include <cmath>
#include <regex>

#include "alphatest/errors.hpp"
#include "alphatest/mc_harness.hpp"

using namespace alphatest;

namespace {

ScenarioConfig small_scenario() {
  ScenarioConfig c;
  c.n = 30;
  c.periods = 40;
  c.reps = 20;
  c.seed = 7;
  return c;
}

std::vector<TestResult> always_reject(const FactorPanel&, const TestConfig& cfg) {
  std::vector<TestResult> out;
  for (Method m : kAllMethods) {
    TestResult r;
    r.name = m;
    r.reject = true;
    r.p_value = 0.0;
    r.gamma = cfg.gamma;
    out.push_back(r);
  }
  return out;
}

/// Rejects according to the sign of one return, a coin with a panel-dependent
/// outcome.
std::vector<TestResult> coin(const FactorPanel& panel, const TestConfig& cfg) {
  auto out = always_reject(panel, cfg);
  for (TestResult& r : out) r.reject = panel.returns()(0, 0) > 1.0;
  return out;
}

}  // namespace

TEST(Sampler, DeterministicPerReplication) {
  const ScenarioSampler s(small_scenario());
  const auto a = s.draw(2, 5);
  const auto b = s.draw(2, 5);
  EXPECT_EQ(a.panel, b.panel);
  EXPECT_EQ(a.alpha.support, b.alpha.support);
  EXPECT_NE(s.draw(2, 6).panel.returns(), a.panel.returns());
  EXPECT_EQ(a.alpha.support.size(), 2u);
}

TEST(Sampler, FlagsShareDraws) {
  ScenarioConfig c = small_scenario();
  c.cov_model = CovModel::M2;
  c.flags.fixed_support = true;
  c.flags.shared_factors = true;
  const ScenarioSampler s(c);
  const auto a = s.draw(3, 0);
  const auto b = s.draw(3, 1);
  EXPECT_EQ(a.alpha.support, b.alpha.support);
  EXPECT_EQ(a.panel.factors(), b.panel.factors());
  EXPECT_NE(a.panel.returns(), b.panel.returns());

  const ScenarioSampler plain(small_scenario());
  EXPECT_NE(plain.draw(3, 0).panel.factors(), plain.draw(3, 1).panel.factors());
}

TEST(Sampler, ReplicationStreamsAreIndependent) {
  ScenarioConfig c = small_scenario();
  c.n = 50;
  c.periods = 20;
  const ScenarioSampler s(c);
  // Pooled correlation of paired entries from replications 2k and 2k + 1.
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  std::size_t count = 0;
  for (std::uint32_t k = 0; k < 4000; ++k) {
    const Matrix x = s.draw(0, 2 * k).panel.returns();
    const Matrix y = s.draw(0, 2 * k + 1).panel.returns();
    sx += x.sum();
    sy += y.sum();
    sxx += x.squaredNorm();
    syy += y.squaredNorm();
    sxy += x.cwiseProduct(y).sum();
    count += static_cast<std::size_t>(x.size());
  }
  const double n = static_cast<double>(count);
  const double cov = sxy / n - (sx / n) * (sy / n);
  const double corr =
      cov / std::sqrt((sxx / n - (sx / n) * (sx / n)) * (syy / n - (sy / n) * (sy / n)));
  EXPECT_GE(count, 1000000u);
  EXPECT_LT(std::abs(corr), 0.01);
}

TEST(Simulate, AlwaysRejectGivesUnitRate) {
  ExperimentSpec spec = ExperimentSpec::size_of(small_scenario());
  const SizePowerTable t = run_experiment(spec, always_reject);
  ASSERT_EQ(t.rows.size(), kAllMethods.size());
  for (const SizePowerRow& r : t.rows) {
    EXPECT_EQ(r.rate, 1.0);
    EXPECT_EQ(r.se, 0.0);
    EXPECT_EQ(r.reps, 20u);
    EXPECT_EQ(r.skipped, 0u);
  }
}

TEST(Simulate, SingleReplicationRatesAreBinary) {
  ScenarioConfig c = small_scenario();
  c.reps = 1;
  for (const SizePowerRow& r : run_experiment(ExperimentSpec::size_of(c)).rows)
    EXPECT_TRUE(r.rate == 0.0 || r.rate == 1.0);
}

TEST(Simulate, IndependentOfWorkerCount) {
  ExperimentSpec spec = ExperimentSpec::power_of(small_scenario());
  spec.m_grid = {0, 1, 4};
  spec.reps = 24;
  spec.workers = 1;
  const SizePowerTable one = run_power_curve(spec);
  spec.workers = 8;
  const SizePowerTable eight = run_power_curve(spec);
  EXPECT_EQ(one, eight);
  EXPECT_EQ(to_csv(one), to_csv(eight));
}

TEST(Simulate, ZeroSparsityIsTheSizeExperiment) {
  ScenarioConfig c = small_scenario();
  ExperimentSpec power = ExperimentSpec::power_of(c);
  power.m_grid = {0};
  EXPECT_EQ(run_power_curve(power), run_experiment(ExperimentSpec::size_of(c)));
}

TEST(Simulate, StandardErrorScalesWithReplications) {
  ExperimentSpec spec = ExperimentSpec::size_of(small_scenario());
  spec.methods = {Method::PY};
  spec.reps = 400;
  const double se_small = run_experiment(spec, coin).rows[0].se;
  spec.reps = 1600;
  const SizePowerRow big = run_experiment(spec, coin).rows[0];
  EXPECT_GT(big.rate, 0.1);
  EXPECT_LT(big.rate, 0.9);
  EXPECT_NEAR(big.se / se_small, 0.5, 0.05);
}

TEST(Simulate, ErrorsPropagateByReplicationIndex) {
  ExperimentSpec spec = ExperimentSpec::size_of(small_scenario());
  auto failing = [](const FactorPanel&, const TestConfig&) -> std::vector<TestResult> {
    throw DegenerateDof("stub");
  };
  EXPECT_THROW(run_experiment(spec, failing), DegenerateDof);
  auto flaky = [](const FactorPanel&, const TestConfig&) -> std::vector<TestResult> {
    throw NotPositiveDefinite("stub");
  };
  EXPECT_THROW(run_experiment(spec, flaky), NumericError);
}

TEST(Simulate, PowerCurveNeedsGrid) {
  ExperimentSpec spec = ExperimentSpec::size_of(small_scenario());
  EXPECT_THROW(run_power_curve(spec), ConfigError);
  EXPECT_EQ(ExperimentSpec::power_of(small_scenario()).m_grid.size(), 20u);
}

TEST(Simulate, JointRejectionUnderSparseAlternative) {
  ScenarioConfig c;
  c.m = 2;
  c.seed = 31;
  const ScenarioSampler sampler(c);
  const auto reps = simulate(sampler, 2, 2000, 0);
  double py = 0, max2 = 0, both = 0;
  for (const Replication& r : reps) {
    ASSERT_FALSE(r.skipped);
    const bool a = r.results[0].reject;
    const bool b = r.results[2].reject;
    py += a;
    max2 += b;
    both += a && b;
  }
  const double n = static_cast<double>(reps.size());
  EXPECT_LE(std::abs(both / n - (py / n) * (max2 / n)), 0.02)
      << "P(PY)=" << py / n << " P(MAX2)=" << max2 / n << " P(both)=" << both / n;
}

TEST(Summary, FormatsRateAndError) {
  SizePowerTable t;
  SizePowerRow r;
  r.method = Method::PY;
  r.model = CovModel::M3;
  r.n = 200;
  r.periods = 100;
  r.reps = 1000;
  r.rate = 0.054;
  r.se = std::sqrt(0.054 * 0.946 / 1000.0);
  t.rows.push_back(r);
  const std::string s = summarize(t);
  EXPECT_NE(s.find("5.4 (±0.7)"), std::string::npos) << s;
  EXPECT_THROW(summarize(SizePowerTable{}), EmptyTable);
}

TEST(Summary, RoundTripsRates) {
  ExperimentSpec spec = ExperimentSpec::power_of(small_scenario());
  spec.m_grid = {0, 3};
  const SizePowerTable t = run_power_curve(spec);
  const std::string s = summarize(t);
  const std::regex cell(R"(([0-9]+\.[0-9]) \(±[0-9]+\.[0-9]\))");
  std::vector<double> parsed;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), cell); it != std::sregex_iterator(); ++it)
    parsed.push_back(std::stod((*it)[1].str()));
  ASSERT_EQ(parsed.size(), t.rows.size());
  // Cells run across methods, rows down m; the table is ordered method-major.
  const std::size_t ms = 2;
  const std::size_t methods = t.rows.size() / ms;
  for (std::size_t k = 0; k < t.rows.size(); ++k) {
    const SizePowerRow& r = t.rows[k];
    const std::size_t row = k % ms;
    const std::size_t col = k / ms;
    EXPECT_NEAR(parsed[row * methods + col], 100.0 * r.rate, 0.05 + 1e-9);
  }
  EXPECT_EQ(s.find(" \n"), std::string::npos);
}

TEST(Csv, LayoutAndCurve) {
  ExperimentSpec spec = ExperimentSpec::power_of(small_scenario());
  spec.m_grid = {1, 2};
  spec.methods = {Method::MAX2, Method::PY};
  const SizePowerTable t = run_power_curve(spec, always_reject);
  const std::string csv = to_csv(t);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "method,model,error_dist,N,T,m,reps,rate,se");
  EXPECT_NE(csv.find("MAX2,M3,normal,30,40,1,20,1,0\n"), std::string::npos) << csv;
  EXPECT_EQ(to_curve_csv(t), "m,method,power\n1,MAX2,1\n1,PY,1\n2,MAX2,1\n2,PY,1\n");
}
