#include "alphatest/mc_harness.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numeric>
#include <sstream>
#include <utility>

#include "alphatest/errors.hpp"

namespace alphatest {

ScenarioSampler::ScenarioSampler(ScenarioConfig config)
    : config_(std::move(config)), cov_spec_(CovModelSpec::of(config_.cov_model)) {
  config_.validate();
  if (!cov_spec_.is_random() || config_.flags.freeze_cov) {
    Philox rng(key(0, kSharedReplication, StreamPurpose::covariance));
    fixed_root_ = cov_sqrt(build_cov(cov_spec_, config_.n, rng));
  }
  if (config_.flags.shared_factors) {
    Philox rng(key(0, kSharedReplication, StreamPurpose::factors));
    shared_factors_ = gen_factors(config_.periods, factor_params_, rng);
  }
}

StreamKey ScenarioSampler::key(std::size_t m, std::uint32_t replication,
                               StreamPurpose purpose) const {
  return StreamKey{config_.seed, static_cast<std::uint32_t>(m), replication, purpose};
}

ScenarioSampler::Draw ScenarioSampler::draw(std::size_t m, std::uint32_t replication) const {
  Matrix root;
  if (fixed_root_.size() != 0) {
    root = fixed_root_;
  } else {
    Philox rng(key(m, replication, StreamPurpose::covariance));
    root = cov_sqrt(build_cov(cov_spec_, config_.n, rng));
  }

  Matrix factors;
  if (shared_factors_.size() != 0) {
    factors = shared_factors_;
  } else {
    Philox rng(key(m, replication, StreamPurpose::factors));
    factors = gen_factors(config_.periods, factor_params_, rng);
  }

  Philox beta_rng(key(m, replication, StreamPurpose::betas));
  const Matrix betas = gen_betas(config_.n, beta_rng);

  Philox alpha_rng(key(m, config_.flags.fixed_support ? kSharedReplication : replication,
                       StreamPurpose::alpha));
  AlphaSpec alpha = gen_alpha(config_.n, m, config_.periods, alpha_rng);

  Philox error_rng(key(m, replication, StreamPurpose::errors));
  const Matrix errors = gen_errors(root, config_.error_dist, config_.periods, error_rng);

  return Draw{assemble_panel(alpha.alpha, betas, factors, errors), std::move(alpha)};
}

std::vector<TestResult> default_tester(const FactorPanel& panel, const TestConfig& config) {
  return run_all(panel, config, Execution::serial).results;
}

std::vector<Replication> simulate(const ScenarioSampler& sampler, std::size_t m,
                                  std::size_t reps, int workers, const Tester& tester) {
  const Tester& run = tester ? tester : Tester(default_tester);
  const TestConfig test_config = sampler.config().test_config();
  const int threads = workers > 0 ? workers : omp_get_max_threads();

  std::vector<Replication> out(reps);
  std::vector<std::exception_ptr> failures(reps);
  const auto count = static_cast<std::int64_t>(reps);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::int64_t r = 0; r < count; ++r) {
    const auto idx = static_cast<std::size_t>(r);
    try {
      const auto d = sampler.draw(m, static_cast<std::uint32_t>(r));
      out[idx].results = run(d.panel, test_config);
    } catch (const NotPositiveDefinite&) {
      out[idx].skipped = true;
    } catch (...) {
      failures[idx] = std::current_exception();
    }
  }

  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  const auto skipped = static_cast<std::size_t>(
      std::count_if(out.begin(), out.end(), [](const Replication& r) { return r.skipped; }));
  if (static_cast<double>(skipped) > 0.01 * static_cast<double>(reps)) {
    throw NumericError("simulate: " + std::to_string(skipped) + " of " + std::to_string(reps) +
                       " covariance draws were not positive definite (limit 1%)");
  }
  return out;
}

ExperimentSpec ExperimentSpec::size_of(const ScenarioConfig& scenario) {
  ExperimentSpec spec;
  spec.scenario = scenario;
  spec.reps = scenario.reps;
  spec.workers = scenario.workers;
  return spec;
}

ExperimentSpec ExperimentSpec::power_of(const ScenarioConfig& scenario) {
  ExperimentSpec spec = size_of(scenario);
  spec.m_grid = scenario.m_grid;
  if (spec.m_grid.empty()) {
    spec.m_grid.resize(20);
    std::iota(spec.m_grid.begin(), spec.m_grid.end(), std::size_t{1});
  }
  return spec;
}

SizePowerTable tabulate(const ScenarioConfig& scenario, const std::vector<Method>& methods,
                        const std::vector<std::size_t>& ms,
                        const std::vector<std::vector<Replication>>& batches) {
  SizePowerTable table;
  for (Method method : methods) {
    for (std::size_t k = 0; k < ms.size(); ++k) {
      SizePowerRow row;
      row.method = method;
      row.model = scenario.cov_model;
      row.error_dist = scenario.error_dist;
      row.n = scenario.n;
      row.periods = scenario.periods;
      row.m = ms[k];
      std::size_t rejections = 0;
      for (const Replication& rep : batches[k]) {
        if (rep.skipped) {
          ++row.skipped;
          continue;
        }
        for (const TestResult& r : rep.results) {
          if (r.name == method) {
            ++row.reps;
            rejections += r.reject ? 1 : 0;
          }
        }
      }
      if (row.reps > 0) {
        row.rate = static_cast<double>(rejections) / static_cast<double>(row.reps);
        row.se = std::sqrt(row.rate * (1.0 - row.rate) / static_cast<double>(row.reps));
      }
      table.rows.push_back(row);
    }
  }
  return table;
}

namespace {

SizePowerTable run_grid(const ExperimentSpec& spec, const std::vector<std::size_t>& ms,
                        const Tester& tester) {
  if (spec.reps < 1) throw ConfigError("experiment: reps must be >= 1");
  const ScenarioSampler sampler(spec.scenario);
  std::vector<std::vector<Replication>> batches;
  batches.reserve(ms.size());
  for (std::size_t m : ms) {
    if (m > spec.scenario.n) throw ConfigError("experiment: m exceeds N");
    batches.push_back(simulate(sampler, m, spec.reps, spec.workers, tester));
  }
  return tabulate(spec.scenario, spec.methods, ms, batches);
}

std::string percent(double rate) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", 100.0 * rate);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  // Width counts code points so that the UTF-8 '±' aligns.
  std::size_t visible = 0;
  for (unsigned char ch : s) visible += (ch & 0xC0) != 0x80;
  return visible >= width ? s : s + std::string(width - visible, ' ');
}

}  // namespace

SizePowerTable run_experiment(const ExperimentSpec& spec, const Tester& tester) {
  if (!spec.m_grid.empty()) return run_grid(spec, spec.m_grid, tester);
  return run_grid(spec, {spec.scenario.m}, tester);
}

SizePowerTable run_power_curve(const ExperimentSpec& spec, const Tester& tester) {
  if (spec.m_grid.empty()) throw ConfigError("run_power_curve: m_grid is empty");
  return run_grid(spec, spec.m_grid, tester);
}

std::string summarize(const SizePowerTable& table) {
  if (table.rows.empty()) throw EmptyTable("summarize: table has no rows");

  std::vector<Method> methods;
  std::vector<std::size_t> ms;
  for (const SizePowerRow& r : table.rows) {
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end())
      methods.push_back(r.method);
    if (std::find(ms.begin(), ms.end(), r.m) == ms.end()) ms.push_back(r.m);
  }

  constexpr std::size_t kKey = 8;
  constexpr std::size_t kCell = 14;
  std::string out;
  auto emit = [&out](std::string line) {
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line;
    out += '\n';
  };

  std::string header = pad("model", kKey) + pad("dist", kKey) + pad("N", kKey) +
                       pad("T", kKey) + pad("m", kKey) + pad("reps", kKey);
  for (Method method : methods) header += pad(std::string(to_string(method)), kCell);
  emit(std::move(header));

  for (std::size_t m : ms) {
    const SizePowerRow* first = nullptr;
    std::string cells;
    for (Method method : methods) {
      std::string cell = "-";
      for (const SizePowerRow& r : table.rows) {
        if (r.method == method && r.m == m) {
          if (!first) first = &r;
          cell = percent(r.rate) + " (±" + percent(r.se) + ")";
        }
      }
      cells += pad(cell, kCell);
    }
    emit(pad(std::string(to_string(first->model)), kKey) +
         pad(std::string(to_string(first->error_dist)), kKey) +
         pad(std::to_string(first->n), kKey) + pad(std::to_string(first->periods), kKey) +
         pad(std::to_string(m), kKey) + pad(std::to_string(first->reps), kKey) + cells);
  }
  return out;
}

std::string to_csv(const SizePowerTable& table) {
  std::ostringstream out;
  out << "method,model,error_dist,N,T,m,reps,rate,se\n";
  char buf[64];
  for (const SizePowerRow& r : table.rows) {
    out << to_string(r.method) << ',' << to_string(r.model) << ',' << to_string(r.error_dist)
        << ',' << r.n << ',' << r.periods << ',' << r.m << ',' << r.reps << ',';
    std::snprintf(buf, sizeof buf, "%.10g,%.10g", r.rate, r.se);
    out << buf << '\n';
  }
  return out.str();
}

std::string to_curve_csv(const SizePowerTable& table) {
  std::vector<const SizePowerRow*> rows;
  for (const SizePowerRow& r : table.rows) rows.push_back(&r);
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SizePowerRow* a, const SizePowerRow* b) { return a->m < b->m; });
  std::ostringstream out;
  out << "m,method,power\n";
  char buf[32];
  for (const SizePowerRow* r : rows) {
    std::snprintf(buf, sizeof buf, "%.10g", r->rate);
    out << r->m << ',' << to_string(r->method) << ',' << buf << '\n';
  }
  return out.str();
}

}  // namespace alphatest
