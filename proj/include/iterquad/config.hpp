#pragma once

// Run-wide limits and defaults. Values come from built-in defaults, then an
// optional key = value file, then ITERQUAD_<KEY> environment variables.
//
//   # comment
//   orbit_depth_cap = 12
//   degree_cap = 16384
//   factor_degree_cap = 1024
//   trial_bound = 1000000
//   rho_iterations = 10000000
//   time_cap_ms = 60000
//   census_prefix = 20
//   census_kill = 25
//   seed = 24301
//   workers = 1

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>

#include "iterquad/factor.hpp"
#include "iterquad/quadmap.hpp"

namespace iterquad {

struct Config {
  unsigned orbit_depth_cap = 12;
  std::size_t degree_cap = std::size_t{1} << 14;
  std::size_t factor_degree_cap = std::size_t{1} << 10;
  FactorBudget budget;
  unsigned census_prefix = 20;
  unsigned census_kill = 25;
  std::uint64_t seed = 24301;
  unsigned workers = 1;

  Limits limits() const { return {orbit_depth_cap}; }

  void validate() const {
    if (orbit_depth_cap == 0 || degree_cap == 0 || factor_degree_cap == 0 || census_prefix == 0 || workers == 0) {
      throw std::invalid_argument("Config: caps and counts must be positive");
    }
    if (census_kill < census_prefix) throw std::invalid_argument("Config: census_kill must be >= census_prefix");
    budget.validate();
  }

  /// Apply one setting; unknown keys are rejected so typos do not go unnoticed.
  void set(const std::string& key, const std::string& value) {
    auto as_u64 = [&] {
      std::size_t used = 0;
      unsigned long long v = 0;
      try {
        v = std::stoull(value, &used, 10);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != value.size() || value.empty() || value[0] == '-') {
        throw std::invalid_argument("Config: '" + key + "' expects a non-negative integer, got '" + value + "'");
      }
      return static_cast<std::uint64_t>(v);
    };
    if (key == "orbit_depth_cap") {
      orbit_depth_cap = static_cast<unsigned>(as_u64());
    } else if (key == "degree_cap") {
      degree_cap = as_u64();
    } else if (key == "factor_degree_cap") {
      factor_degree_cap = as_u64();
    } else if (key == "trial_bound") {
      budget.trial_bound = parse_integer(value);
    } else if (key == "rho_iterations") {
      budget.rho_iterations = as_u64();
    } else if (key == "time_cap_ms") {
      budget.time_cap = std::chrono::milliseconds(as_u64());
    } else if (key == "census_prefix") {
      census_prefix = static_cast<unsigned>(as_u64());
    } else if (key == "census_kill") {
      census_kill = static_cast<unsigned>(as_u64());
    } else if (key == "seed") {
      seed = as_u64();
    } else if (key == "workers") {
      workers = static_cast<unsigned>(as_u64());
    } else {
      throw std::invalid_argument("Config: unknown key '" + key + "'");
    }
  }

  static constexpr const char* kKeys[] = {"orbit_depth_cap", "degree_cap",  "factor_degree_cap", "trial_bound", "rho_iterations",
                                          "time_cap_ms",     "census_prefix", "census_kill",     "seed",        "workers"};

  void load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("Config: cannot open " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      const auto eq = line.find('=');
      auto trim = [](std::string s) {
        auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
        s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), issp));
        s.erase(std::find_if_not(s.rbegin(), s.rend(), issp).base(), s.end());
        return s;
      };
      if (trim(line).empty()) continue;
      if (eq == std::string::npos) throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key = value");
      set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
  }

  void apply_environment() {
    for (const char* key : kKeys) {
      std::string name = "ITERQUAD_";
      for (const char* c = key; *c; ++c) name += static_cast<char>(std::toupper(static_cast<unsigned char>(*c)));
      if (const char* v = std::getenv(name.c_str())) set(key, v);
    }
  }

  std::map<std::string, std::string> describe() const {
    return {{"orbit_depth_cap", std::to_string(orbit_depth_cap)},
            {"degree_cap", std::to_string(degree_cap)},
            {"factor_degree_cap", std::to_string(factor_degree_cap)},
            {"trial_bound", to_string(budget.trial_bound)},
            {"rho_iterations", std::to_string(budget.rho_iterations)},
            {"time_cap_ms", std::to_string(budget.time_cap.count())},
            {"census_prefix", std::to_string(census_prefix)},
            {"census_kill", std::to_string(census_kill)},
            {"seed", std::to_string(seed)},
            {"workers", std::to_string(workers)}};
  }
};

}  // namespace iterquad
