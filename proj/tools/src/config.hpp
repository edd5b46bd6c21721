#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "stochopt/harness/budget.hpp"
#include "stochopt/harness/driver.hpp"

namespace stochopt::cli {

// Configuration problems are usage errors (exit code 2); the message
// names the offending key.
class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ResolvedRuns {
  std::shared_ptr<const Problem> problem;
  SolverSpec solver;
  Vector w0;
  double lambda1 = 0.0;
  std::vector<std::uint64_t> seeds;
  index_t max_iterations = 100;
  index_t max_adp = 0;
  index_t trace_every = 0;
  index_t record_every = 1;
  bool timing = false;
  std::string out_dir = ".";
  std::string solver_label;
  std::string digest;  // of the resolved (defaulted) configuration
};

// Parses and strictly validates a run configuration; unknown keys are
// rejected with their name.
ResolvedRuns parse_run_config(const nlohmann::json& config);
ResolvedRuns load_run_config(const std::string& path);

// Comparison (budget experiment) configuration.
struct ResolvedCompare {
  BudgetConfig budget;
  std::string out_dir = ".";
  std::string digest;
};
ResolvedCompare parse_compare_config(const nlohmann::json& config);
ResolvedCompare load_compare_config(const std::string& path);

}  // namespace stochopt::cli
