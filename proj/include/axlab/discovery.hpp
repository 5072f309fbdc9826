#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "axlab/explore.hpp"
#include "axlab/mdp.hpp"
#include "axlab/visit_counter.hpp"

namespace axlab {

enum class RoundKind { kSuccess, kSkip, kFailure, kExpansion, kTerminate, kRtestFail };

const char* round_kind_name(RoundKind kind);

struct RoundLog {
  std::string algo;
  int trial = 1;
  int round = 0;
  RoundKind kind = RoundKind::kSkip;
  std::optional<StateId> goal;
  double tau_hat = 0.0;
  double v_opt_s0 = 0.0;  // optimistic value of the selected goal, inf when none
  std::size_t k_size = 0;
  std::size_t k_prime_size = 0;
  std::size_t u_size = 0;
  std::uint64_t z = 0;
  std::uint64_t n_min = 0;
  std::uint64_t samples = 0;  // cumulative environment steps after the round
};

std::string round_logs_to_csv(const std::vector<RoundLog>& logs);

// Mutable bookkeeping of a discovery run: consolidated set K, pending layer
// K', candidate goals U, accepted policies, shared counter, indices.
struct DiscoveryState {
  std::set<StateId> k;
  std::set<StateId> k_prime;
  std::set<StateId> u;
  std::map<StateId, PolicyTable> policies;
  std::map<StateId, double> policy_value_s0;
  VisitCounter counter;
  int round = 0;
  int trial = 1;
  std::uint64_t z = 0;      // size estimate, meaningful for lasd_plus only
  std::uint64_t n_min = 0;  // sample floor, meaningful for lasd_plus only

  void check_invariants() const;  // throws InternalError on violation
};

struct DiscoveryResult {
  std::set<StateId> k;
  std::map<StateId, PolicyTable> policies;
  std::map<StateId, double> policy_value_s0;
  std::vector<RoundLog> logs;
  std::vector<std::set<StateId>> expansion_history;  // K after each merge
  std::set<StateId> touched;  // every state ever held in K, K' or U
  int trials = 1;
  std::uint64_t final_z = 0;
};

struct EvalRoundResult {
  RoundKind kind = RoundKind::kSuccess;
  double tau_hat = 0.0;
  std::uint64_t samples_used = 0;
};

// One policy-evaluation round: up to lambda episodes from s0 under pi toward
// the goal, tau_hat accumulated at weight 1/lambda per step, every transition
// recorded in the counter. Skips the moment the counter total or any visited
// (s in skip_set, a) count crosses a power of two; fails as soon as the
// injected predicate fires after a completed episode. The additive and the
// multiplicative evaluation tests share this code path.
EvalRoundResult evaluate_candidate(EnvHandle& env, const std::set<StateId>& skip_set,
                                   VisitCounter& counter, StateId goal,
                                   const PolicyTable& pi, double radius, double eps,
                                   double delta_round,
                                   const std::function<bool(double)>& failure_test,
                                   const ThresholdConfig& cfg, RngStream& eval);

// Layer-aware state discovery. Needs the state-space size only to set
// confidence levels.
DiscoveryResult lasd(EnvHandle& env, int num_states, double radius, double eps,
                     double delta, const ThresholdConfig& cfg, StreamSet& streams);

// Candidate-goal construction with fresh throwaway samples: discover next
// states of X, re-sample to the fresh-sample floor, keep goals whose
// optimistic value from s0 is within the radius.
std::set<StateId> compute_u(EnvHandle& env, const std::set<StateId>& x,
                            const std::map<StateId, PolicyTable>& policies, double delta,
                            double radius, const ThresholdConfig& cfg, StreamSet& streams);

// Size-adaptive variant: no state-space knowledge, doubling size estimate z
// with trial restarts, fresh-sample goal filtering, and a reachability test
// gate before every policy evaluation.
DiscoveryResult lasd_plus(EnvHandle& env, double radius, double eps, double delta,
                          const ThresholdConfig& cfg, StreamSet& streams);

}  // namespace axlab
