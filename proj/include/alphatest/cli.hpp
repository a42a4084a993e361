#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "alphatest/alpha_tests.hpp"
#include "alphatest/scenario.hpp"

namespace alphatest::cli {

enum class Command { test, size, power, gen };

/// Exit codes of the alphatest binary.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUnexpected = 1;
inline constexpr int kExitInput = 2;    // I/O, parse or configuration failure
inline constexpr int kExitNumeric = 3;  // numeric failure on valid input

struct CliConfig {
  Command command = Command::test;
  // test
  std::filesystem::path returns_path;
  std::filesystem::path factors_path;
  double gamma = 0.05;
  // size / power / gen
  std::filesystem::path config_path;
  std::filesystem::path out_path;    // report (test) or table (size, power)
  std::filesystem::path out_prefix;  // gen
  // overrides
  std::optional<double> threshold_delta;
  std::optional<double> eigen_floor;
  std::optional<double> q_mt;
  std::optional<double> delta_mt;
  std::optional<std::size_t> reps;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  bool raw_critical = false;
  bool freeze_cov = false;
  bool fixed_support = false;
  bool shared_factors = false;
};

/// Scenario file with command-line, then ALPHATEST_SEED, overrides applied.
ScenarioConfig resolve_scenario(const CliConfig& config);

/// JSON report of one test run.
std::string test_report_json(const TestSuite& suite);

int cmd_test(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_size(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_power(const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_gen(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Dispatches on config.command.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

}  // namespace alphatest::cli
