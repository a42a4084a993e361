#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "alphatest/alpha_tests.hpp"
#include "alphatest/dgp.hpp"
#include "alphatest/scenario.hpp"

namespace alphatest {

/// Produces the simulated panel of replication r at sparsity m. Everything
/// that does not vary across replications (deterministic covariance models,
/// frozen draws) is computed once at construction.
class ScenarioSampler {
 public:
  explicit ScenarioSampler(ScenarioConfig config);

  struct Draw {
    FactorPanel panel;
    AlphaSpec alpha;
  };

  /// Throws NotPositiveDefinite if a random covariance draw fails.
  Draw draw(std::size_t m, std::uint32_t replication) const;

  const ScenarioConfig& config() const { return config_; }

 private:
  StreamKey key(std::size_t m, std::uint32_t replication, StreamPurpose purpose) const;

  ScenarioConfig config_;
  CovModelSpec cov_spec_;
  FactorProcessParams factor_params_;
  Matrix fixed_root_;  // empty unless the covariance is shared
  Matrix shared_factors_;
};

/// Replication index reserved for draws shared by a whole scenario.
inline constexpr std::uint32_t kSharedReplication = 0xFFFFFFFFu;

using Tester = std::function<std::vector<TestResult>(const FactorPanel&, const TestConfig&)>;

/// run_all on one thread; the harness parallelizes across replications.
std::vector<TestResult> default_tester(const FactorPanel& panel, const TestConfig& config);

struct Replication {
  bool skipped = false;  // covariance draw was not positive definite
  std::vector<TestResult> results;
};

/// Runs `reps` replications at sparsity m in a parallel map. Results are
/// stored by replication index, so they do not depend on `workers`.
///
/// NotPositiveDefinite draws are skipped up to 1% of reps; beyond that, or on
/// any other error, the first failure (by replication index) is rethrown.
std::vector<Replication> simulate(const ScenarioSampler& sampler, std::size_t m,
                                  std::size_t reps, int workers, const Tester& tester = {});

struct ExperimentSpec {
  ScenarioConfig scenario;
  std::vector<Method> methods{kAllMethods.begin(), kAllMethods.end()};
  std::size_t reps = 1000;
  /// Empty for a size experiment at scenario.m.
  std::vector<std::size_t> m_grid;
  int workers = 0;

  static ExperimentSpec size_of(const ScenarioConfig& scenario);
  /// Uses scenario.m_grid, or 1..20 when it is empty.
  static ExperimentSpec power_of(const ScenarioConfig& scenario);
};

struct SizePowerRow {
  Method method = Method::PY;
  CovModel model = CovModel::M1;
  ErrorDist error_dist = ErrorDist::normal;
  std::size_t n = 0;
  std::size_t periods = 0;
  std::size_t m = 0;
  std::size_t reps = 0;  // replications that produced results
  std::size_t skipped = 0;
  double rate = 0.0;
  double se = 0.0;  // sqrt(rate (1 - rate) / reps)

  bool operator==(const SizePowerRow&) const = default;
};

struct SizePowerTable {
  std::vector<SizePowerRow> rows;  // ordered by method, then m

  bool operator==(const SizePowerTable&) const = default;
};

/// Rejection rates per method and m from finished replications.
SizePowerTable tabulate(const ScenarioConfig& scenario, const std::vector<Method>& methods,
                        const std::vector<std::size_t>& ms,
                        const std::vector<std::vector<Replication>>& batches);

SizePowerTable run_experiment(const ExperimentSpec& spec, const Tester& tester = {});

/// One sub-experiment per entry of m_grid. Throws ConfigError if it is empty.
SizePowerTable run_power_curve(const ExperimentSpec& spec, const Tester& tester = {});

/// Aligned text table with rates in percent, e.g. "5.4 (±0.7)".
/// Throws EmptyTable.
std::string summarize(const SizePowerTable& table);

/// method,model,error_dist,N,T,m,reps,rate,se
std::string to_csv(const SizePowerTable& table);

/// m,method,power
std::string to_curve_csv(const SizePowerTable& table);

}  // namespace alphatest
