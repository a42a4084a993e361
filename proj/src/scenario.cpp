#include "alphatest/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "alphatest/errors.hpp"

namespace alphatest {

using nlohmann::json;

TestConfig ScenarioConfig::test_config() const {
  TestConfig c;
  c.gamma = gamma;
  c.dependence.threshold_delta = threshold_delta;
  c.dependence.eigen_floor = eigen_floor;
  c.dependence.q_mt = q_mt;
  c.dependence.delta_mt = delta_mt;
  c.adjusted_critical = flags.adjusted_critical;
  return c;
}

void ScenarioConfig::validate() const {
  if (n < 3) throw ConfigError("scenario: N must be >= 3");
  if (periods < kFactorCount + 6) throw ConfigError("scenario: T must be >= 9");
  if (reps < 1) throw ConfigError("scenario: reps must be >= 1");
  if (!(gamma > 0.0 && gamma <= 0.5)) throw ConfigError("scenario: gamma must lie in (0, 0.5]");
  if (m > n) throw ConfigError("scenario: m exceeds N");
  for (std::size_t v : m_grid) {
    if (v > n) throw ConfigError("scenario: mGrid entry exceeds N");
  }
  if (threshold_delta < 0.0) throw ConfigError("scenario: thresholdDelta must be >= 0");
  if (!(eigen_floor > 0.0 && eigen_floor < 1.0))
    throw ConfigError("scenario: eigenFloor must lie in (0, 1)");
  if (!(q_mt > 0.0 && q_mt < 1.0)) throw ConfigError("scenario: qMt must lie in (0, 1)");
  if (!(delta_mt >= 0.0)) throw ConfigError("scenario: deltaMt must be >= 0");
  if (workers < 0) throw ConfigError("scenario: workers must be >= 0");
}

namespace {

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) {
    out = it->get<T>();
  }
}

void reject_unknown(const json& j, const std::set<std::string>& known, const char* where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) {
      throw ConfigError(std::string(where) + ": unknown key '" + it.key() + "'");
    }
  }
}

CovModel parse_cov_model(const json& j) {
  if (j.is_number_integer()) {
    const int k = j.get<int>();
    if (k >= 1 && k <= 4) return static_cast<CovModel>(k - 1);
  } else if (j.is_string()) {
    if (auto m = cov_model_from_string(j.get<std::string>())) return *m;
  }
  throw ConfigError("scenario: covModel must be one of M1..M4");
}

}  // namespace

ScenarioConfig parse_scenario(std::string_view json_text) {
  ScenarioConfig c;
  try {
    const json j = json::parse(json_text);
    if (!j.is_object()) throw ConfigError("scenario: expected a JSON object");
    reject_unknown(j,
                   {"N", "T", "covModel", "errorDist", "m", "reps", "gamma", "seed",
                    "thresholdDelta", "eigenFloor", "qMt", "deltaMt", "flags", "mGrid", "workers"},
                   "scenario");
    read(j, "N", c.n);
    read(j, "T", c.periods);
    if (auto it = j.find("covModel"); it != j.end()) c.cov_model = parse_cov_model(*it);
    if (auto it = j.find("errorDist"); it != j.end()) {
      auto d = error_dist_from_string(it->get<std::string>());
      if (!d) throw ConfigError("scenario: errorDist must be normal, t5 or mixture");
      c.error_dist = *d;
    }
    read(j, "m", c.m);
    read(j, "reps", c.reps);
    read(j, "gamma", c.gamma);
    read(j, "seed", c.seed);
    read(j, "thresholdDelta", c.threshold_delta);
    read(j, "eigenFloor", c.eigen_floor);
    read(j, "qMt", c.q_mt);
    read(j, "deltaMt", c.delta_mt);
    read(j, "mGrid", c.m_grid);
    read(j, "workers", c.workers);
    if (auto it = j.find("flags"); it != j.end()) {
      reject_unknown(*it, {"adjustedCritical", "freezeCov", "fixedSupport", "sharedFactors"},
                     "scenario.flags");
      read(*it, "adjustedCritical", c.flags.adjusted_critical);
      read(*it, "freezeCov", c.flags.freeze_cov);
      read(*it, "fixedSupport", c.flags.fixed_support);
      read(*it, "sharedFactors", c.flags.shared_factors);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  c.validate();
  return c;
}

std::string dump_scenario(const ScenarioConfig& c) {
  json j{{"N", c.n},
         {"T", c.periods},
         {"covModel", std::string(to_string(c.cov_model))},
         {"errorDist", std::string(to_string(c.error_dist))},
         {"m", c.m},
         {"reps", c.reps},
         {"gamma", c.gamma},
         {"seed", c.seed},
         {"thresholdDelta", c.threshold_delta},
         {"eigenFloor", c.eigen_floor},
         {"qMt", c.q_mt},
         {"deltaMt", c.delta_mt},
         {"flags",
          {{"adjustedCritical", c.flags.adjusted_critical},
           {"freezeCov", c.flags.freeze_cov},
           {"fixedSupport", c.flags.fixed_support},
           {"sharedFactors", c.flags.shared_factors}}},
         {"mGrid", c.m_grid},
         {"workers", c.workers}};
  return j.dump(2);
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str());
}

}  // namespace alphatest
