#pragma once

#include <map>
#include <set>
#include <vector>

#include "axlab/discovery.hpp"

namespace axlab {

struct ConsolidationResult {
  std::map<StateId, PolicyTable> policies;
  std::map<StateId, double> policy_value_s0;  // optimistic value at acceptance
  std::vector<RoundLog> logs;
};

// Re-learns one policy per target goal under the multiplicative evaluation
// test tau_hat > V(s0) (1 + eps/2), starting from a fresh counter warmed up
// with the given reaching policies. Goals are consolidated lowest-id first.
ConsolidationResult policy_consolidation(EnvHandle& env, double radius, double eps,
                                         double delta, const std::set<StateId>& targets,
                                         const std::map<StateId, PolicyTable>& initial_policies,
                                         const ThresholdConfig& cfg, StreamSet& streams);

struct LaeResult {
  DiscoveryResult discovery;
  ConsolidationResult consolidation;
};

// Discovery followed by consolidation over the discovered set.
LaeResult lae(EnvHandle& env, double radius, double eps, double delta,
              const ThresholdConfig& cfg, StreamSet& streams, bool use_lasd_plus,
              int num_states_for_lasd = 0);

}  // namespace axlab
