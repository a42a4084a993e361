#include "alphatest/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <ostream>

#include <json.hpp>

#include "alphatest/errors.hpp"
#include "alphatest/mc_harness.hpp"
#include "alphatest/panel_io.hpp"

namespace alphatest::cli {

namespace {

namespace fs = std::filesystem;

int guarded(std::ostream& err, const char* command, const std::function<void()>& body) {
  try {
    body();
    return kExitOk;
  } catch (const InputError& e) {
    err << "alphatest " << command << ": " << e.what() << '\n';
    return kExitInput;
  } catch (const fs::filesystem_error& e) {
    err << "alphatest " << command << ": " << e.what() << '\n';
    return kExitInput;
  } catch (const NumericError& e) {
    err << "alphatest " << command << ": numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "alphatest " << command << ": unexpected error: " << e.what() << '\n';
    return kExitUnexpected;
  }
}

void require_path(const fs::path& p, const char* flag) {
  if (p.empty()) throw InputError(std::string("missing required option ") + flag);
}

fs::path with_suffix(const fs::path& path, const std::string& suffix) {
  fs::path out = path;
  out.replace_extension();
  out += suffix;
  return out;
}

}  // namespace

ScenarioConfig resolve_scenario(const CliConfig& config) {
  require_path(config.config_path, "--config");
  ScenarioConfig s = load_scenario(config.config_path);
  if (const char* env = std::getenv("ALPHATEST_SEED"); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw ConfigError("ALPHATEST_SEED is not an unsigned integer");
    s.seed = v;
  }
  if (config.seed) s.seed = *config.seed;
  if (config.reps) s.reps = *config.reps;
  if (config.workers) s.workers = *config.workers;
  if (config.threshold_delta) s.threshold_delta = *config.threshold_delta;
  if (config.eigen_floor) s.eigen_floor = *config.eigen_floor;
  if (config.q_mt) s.q_mt = *config.q_mt;
  if (config.delta_mt) s.delta_mt = *config.delta_mt;
  if (config.raw_critical) s.flags.adjusted_critical = false;
  if (config.freeze_cov) s.flags.freeze_cov = true;
  if (config.fixed_support) s.flags.fixed_support = true;
  if (config.shared_factors) s.flags.shared_factors = true;
  s.validate();
  return s;
}

std::string test_report_json(const TestSuite& suite) {
  nlohmann::ordered_json tests = nlohmann::ordered_json::object();
  for (const TestResult& r : suite.results) {
    tests[std::string(to_string(r.name))] = {{"statistic", r.statistic},
                                             {"p_value", r.p_value},
                                             {"reject", r.reject},
                                             {"critical_value", r.critical_value}};
  }
  const SuiteDiagnostics& d = suite.diagnostics;
  nlohmann::ordered_json report{{"metadata",
                                 {{"N", d.securities},
                                  {"T", d.periods},
                                  {"p", d.factors},
                                  {"v", d.dof},
                                  {"threshold_used", d.threshold_used},
                                  {"rho_bar_sq", d.rho_bar_sq},
                                  {"gamma", d.gamma}}},
                                {"tests", tests}};
  return report.dump(2) + "\n";
}

int cmd_test(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, "test", [&] {
    require_path(config.returns_path, "--returns");
    require_path(config.factors_path, "--factors");
    if (!(config.gamma > 0.0 && config.gamma <= 0.5)) {
      throw ConfigError("--gamma must lie in (0, 0.5]");
    }
    const FactorPanel panel = load_panel(config.returns_path, config.factors_path);
    TestConfig tc;
    tc.gamma = config.gamma;
    if (config.threshold_delta) tc.dependence.threshold_delta = *config.threshold_delta;
    if (config.eigen_floor) tc.dependence.eigen_floor = *config.eigen_floor;
    if (config.q_mt) tc.dependence.q_mt = *config.q_mt;
    if (config.delta_mt) tc.dependence.delta_mt = *config.delta_mt;
    tc.adjusted_critical = !config.raw_critical;
    const std::string report = test_report_json(run_all(panel, tc));
    if (config.out_path.empty()) {
      out << report;
    } else {
      write_file_atomic(config.out_path, report);
    }
  });
}

int cmd_size(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, "size", [&] {
    require_path(config.out_path, "--out");
    const ScenarioConfig s = resolve_scenario(config);
    const SizePowerTable table = run_experiment(ExperimentSpec::size_of(s));
    const std::string summary = summarize(table);
    write_file_atomic(config.out_path, to_csv(table));
    write_file_atomic(with_suffix(config.out_path, ".summary.txt"), summary);
    out << summary;
  });
}

int cmd_power(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, "power", [&] {
    require_path(config.out_path, "--out");
    const ScenarioConfig s = resolve_scenario(config);
    const SizePowerTable table = run_power_curve(ExperimentSpec::power_of(s));
    const std::string summary = summarize(table);
    write_file_atomic(config.out_path, to_csv(table));
    write_file_atomic(with_suffix(config.out_path, "_curve.csv"), to_curve_csv(table));
    write_file_atomic(with_suffix(config.out_path, ".summary.txt"), summary);
    out << summary;
  });
}

int cmd_gen(const CliConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, "gen", [&] {
    require_path(config.out_prefix, "--out-prefix");
    const ScenarioConfig s = resolve_scenario(config);
    const ScenarioSampler sampler(s);
    const auto draw = sampler.draw(s.m, 0);
    const std::string prefix = config.out_prefix.string();
    write_file_atomic(prefix + "returns.csv", returns_csv(draw.panel));
    write_file_atomic(prefix + "factors.csv", factors_csv(draw.panel, {"mkt", "smb", "hml"}));
    std::string alpha = "security,alpha\n";
    for (Eigen::Index i = 0; i < draw.alpha.alpha.size(); ++i) {
      alpha += std::to_string(i + 1) + "," + format_number(draw.alpha.alpha[i]) + "\n";
    }
    write_file_atomic(prefix + "alpha.csv", alpha);
    out << "wrote " << prefix << "{returns,factors,alpha}.csv (N=" << s.n << ", T=" << s.periods
        << ", m=" << s.m << ")\n";
  });
}

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
  switch (config.command) {
    case Command::test: return cmd_test(config, out, err);
    case Command::size: return cmd_size(config, out, err);
    case Command::power: return cmd_power(config, out, err);
    case Command::gen: return cmd_gen(config, out, err);
  }
  return kExitUnexpected;
}

}  // namespace alphatest::cli
