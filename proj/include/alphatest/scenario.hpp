#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "alphatest/alpha_tests.hpp"
#include "alphatest/dgp.hpp"

namespace alphatest {

struct ScenarioFlags {
  bool adjusted_critical = true;
  /// Draw the M2/M4 covariance once per scenario instead of per replication.
  bool freeze_cov = false;
  /// Draw the alpha support once per m instead of per replication.
  bool fixed_support = false;
  /// Draw one factor path for all replications.
  bool shared_factors = false;

  bool operator==(const ScenarioFlags&) const = default;
};

/// A complete Monte Carlo scenario. JSON keys: N, T, covModel, errorDist,
/// m, reps, gamma, seed, thresholdDelta, eigenFloor, qMt, deltaMt, flags (adjustedCritical,
/// freezeCov, fixedSupport, sharedFactors), mGrid, workers.
struct ScenarioConfig {
  std::size_t n = 200;
  std::size_t periods = 100;
  CovModel cov_model = CovModel::M3;
  ErrorDist error_dist = ErrorDist::normal;
  std::size_t m = 0;
  std::size_t reps = 1000;
  double gamma = 0.05;
  std::uint64_t seed = 1;
  double threshold_delta = 2.5;
  double eigen_floor = 0.2;
  double q_mt = 0.05;
  double delta_mt = 1.0;
  ScenarioFlags flags;
  /// Nonzero-alpha counts of a power curve; 1..20 when absent.
  std::vector<std::size_t> m_grid;
  /// 0 means all available threads.
  int workers = 0;

  TestConfig test_config() const;
  /// Throws ConfigError.
  void validate() const;

  bool operator==(const ScenarioConfig&) const = default;
};

ScenarioConfig parse_scenario(std::string_view json_text);
std::string dump_scenario(const ScenarioConfig& config);
ScenarioConfig load_scenario(const std::filesystem::path& path);

}  // namespace alphatest
