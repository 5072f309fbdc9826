#pragma once

#include <set>
#include <utility>

#include "axlab/mdp.hpp"

namespace axlab {

struct EvalOptions {
  double tol = 1e-10;
  std::uint64_t max_sweeps = 1'000'000;
  // safety check only: finite values are classified exactly beforehand
  double horizon_bound = 1e6;
};

// Exact expected hitting time of g under pi, for every start state. States
// from which g is not reached almost surely get +infinity.
GoalValueFn evaluate_policy(const TabularMdp& mdp, const PolicyTable& pi, StateId g,
                            const EvalOptions& opts = {});

// Exact optimal restricted values V*_{X,g} together with a minimizing policy
// restricted on X (RESET forced outside X). Argmin ties break toward the
// lowest action index.
std::pair<GoalValueFn, PolicyTable> optimal_restricted_values(
    const TabularMdp& mdp, const std::set<StateId>& restriction, StateId g,
    const EvalOptions& opts = {});

}  // namespace axlab
