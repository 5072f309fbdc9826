#pragma once

#include <map>
#include <set>
#include <vector>

#include "axlab/mdp.hpp"
#include "axlab/visit_counter.hpp"

namespace axlab {

struct VisgoConfig {
  std::uint64_t max_sweeps = 1'000'000;
  bool trace = false;  // dump per-sweep sup-norm deltas to stderr
};

// Output of one optimistic value-iteration solve. Values are represented on
// the restriction set plus a single constant for everything outside it, so no
// global state enumeration is ever needed. When `diverged` is set the value
// function is the +infinity sentinel and `value()` reports it as such; the
// numeric fields are not meaningful.
struct VisgoResult {
  bool diverged = false;
  StateId goal = 0;
  std::set<StateId> x;
  std::map<StateId, double> v_in_x;
  std::map<StateId, std::vector<double>> q_in_x;  // per action
  double outside_value = 0.0;
  PolicyTable policy;  // argmin on X, RESET outside
  std::uint64_t sweeps = 0;

  double value(StateId s) const {
    if (diverged) return kInfValue;
    if (s == goal) return 0.0;
    auto it = v_in_x.find(s);
    return it == v_in_x.end() ? outside_value : it->second;
  }
};

// Goal-conditioned optimistic value iteration over the empirical model with
// variance-aware exploration bonuses and a goal-skewed transition kernel.
// Iterates synchronously from zero until the sup-norm change drops below
// eps_vi, declaring divergence as soon as the iterate exceeds 2L.
VisgoResult visgo(const std::set<StateId>& x, StateId goal, double eps_vi,
                  const VisitCounter& counter, double delta, double radius,
                  int num_actions, StateId initial_state, const VisgoConfig& cfg = {});

}  // namespace axlab
