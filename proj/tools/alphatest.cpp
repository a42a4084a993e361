// alphatest: high-dimensional alpha tests for linear factor pricing models.
//
//   alphatest test  --returns R.csv --factors F.csv [--gamma 0.05] --out report.json
//   alphatest size  --config scenario.json --out table.csv
//   alphatest power --config scenario.json --out power.csv
//   alphatest gen   --config scenario.json --out-prefix data/

#include <iostream>

#include <CLI11.hpp>

#include "alphatest/cli.hpp"

namespace {

using alphatest::cli::CliConfig;
using alphatest::cli::Command;

void add_threshold_options(CLI::App* app, CliConfig& c) {
  app->add_option("--delta", c.threshold_delta, "correlation threshold constant (default 2.5)");
  app->add_option("--floor", c.eigen_floor, "eigenvalue floor of the thresholded correlation (default 0.2)");
  app->add_option("--qmt", c.q_mt, "multiple-testing level for the correlation estimate");
  app->add_option("--deltamt", c.delta_mt, "multiple-testing exponent on N");
  app->add_flag("--raw-critical", c.raw_critical,
                "Fisher tests use the plain chi2_4 quantile instead of the adjusted one");
}

void add_scenario_options(CLI::App* app, CliConfig& c) {
  app->add_option("--config", c.config_path, "scenario JSON")->check(CLI::ExistingFile);
  app->add_option("--reps", c.reps, "replications");
  app->add_option("--seed", c.seed, "master seed (overrides ALPHATEST_SEED and the config)");
  app->add_option("--workers", c.workers, "worker threads (0 = all)");
  app->add_flag("--freeze-cov", c.freeze_cov, "draw random covariance models once");
  app->add_flag("--fixed-support", c.fixed_support, "draw the alpha support once per m");
  app->add_flag("--shared-factors", c.shared_factors, "one factor path for all replications");
  add_threshold_options(app, c);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Max-type, sum-type and Fisher-combination tests for alphas"};
  app.require_subcommand(1);
  CliConfig c;

  auto* test = app.add_subcommand("test", "test alpha = 0 on a returns/factors panel");
  test->add_option("--returns", c.returns_path, "returns CSV (T rows x N securities)");
  test->add_option("--factors", c.factors_path, "factors CSV (T rows x p factors)");
  test->add_option("--gamma", c.gamma, "test level")->capture_default_str();
  test->add_option("--out", c.out_path, "JSON report (stdout when omitted)");
  add_threshold_options(test, c);
  test->callback([&] { c.command = Command::test; });

  auto* size = app.add_subcommand("size", "Monte Carlo size experiment");
  add_scenario_options(size, c);
  size->add_option("--out", c.out_path, "output CSV");
  size->callback([&] { c.command = Command::size; });

  auto* power = app.add_subcommand("power", "Monte Carlo power curve over m");
  add_scenario_options(power, c);
  power->add_option("--out", c.out_path, "output CSV");
  power->callback([&] { c.command = Command::power; });

  auto* gen = app.add_subcommand("gen", "write one simulated panel as CSV");
  add_scenario_options(gen, c);
  gen->add_option("--out-prefix", c.out_prefix, "prefix for returns.csv, factors.csv, alpha.csv");
  gen->callback([&] { c.command = Command::gen; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : alphatest::cli::kExitInput;
  }
  return alphatest::cli::run(c, std::cout, std::cerr);
}
