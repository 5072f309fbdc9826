#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "axlab/consolidation.hpp"
#include "axlab/discovery.hpp"
#include "axlab/oracle.hpp"

namespace axlab {

enum class Algo { kLasd, kLasdPlus, kPc, kLae };

const char* algo_name(Algo algo);
Algo parse_algo(const std::string& name);

struct ExperimentConfig {
  // constructor spec ("chain:8", "grid:3x3:0.1", "example2l:2:3",
  // "random:200:3:2:7") or a path to an MDP JSON file
  std::string env_spec;
  Algo algo = Algo::kLasd;
  double radius = 1.0;
  double eps = 0.5;
  double delta = 0.1;
  std::vector<std::uint64_t> seeds;
  std::uint64_t budget = 100'000'000;
  ThresholdConfig thresholds;
  std::string out_dir;  // empty: nothing written
  int jobs = 1;

  void validate() const;  // throws std::invalid_argument
};

struct SeedOutcome {
  std::uint64_t seed = 0;
  bool completed = false;
  std::string failure_reason;
  std::set<StateId> k;
  std::map<StateId, double> exact_value_s0;  // oracle-exact per accepted goal
  bool ax_pass_l = false;
  bool ax_pass_star = false;
  bool ax_pass_plus = false;
  bool lower_inclusion = false;  // S_L^->  subset of K
  bool upper_inclusion = false;  // K subset of S_{L(1+eps)}^->
  bool pass = false;             // guarantee matching the algorithm
  std::uint64_t samples = 0;
  double wall_ms = 0.0;
  std::vector<RoundLog> logs;
};

struct ExperimentSummary {
  ExperimentConfig config;
  std::set<StateId> oracle_set;        // S_L^->
  std::set<StateId> oracle_upper_set;  // S_{L(1+eps)}^->
  std::vector<SeedOutcome> seeds;
  double pass_rate = 0.0;
  double mean_samples = 0.0;

  // wall-time fields are the only run-to-run nondeterminism; strip them to
  // compare summaries byte for byte
  std::string to_json(bool include_wall_time = true) const;
};

TabularMdp build_env(const std::string& spec);

// Builds the environment, runs the configured algorithm once per seed,
// verifies every output against the exact oracle, and (when out_dir is set)
// writes rounds_<seed>.csv plus summary.json.
ExperimentSummary run_experiment(const ExperimentConfig& config);

struct SweepRow {
  double eps = 0.0;
  double mean_samples = 0.0;
  double pass_rate = 0.0;
};

// run_experiment per eps; writes sweep.csv when out_dir is set
std::vector<SweepRow> sweep_eps(const ExperimentConfig& base,
                                const std::vector<double>& eps_list);

}  // namespace axlab
