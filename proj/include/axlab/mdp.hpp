#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "axlab/rng.hpp"
#include "axlab/types.hpp"

namespace axlab {

struct Transition {
  StateId next;
  double prob;
};

// Immutable reward-free tabular MDP with a designated initial state and a
// RESET action (action 0) that returns to it with probability 1 from every
// state. Validated at construction; safe to share across concurrent runs.
class TabularMdp {
 public:
  TabularMdp(int num_states, int num_actions, StateId initial_state,
             std::vector<std::vector<Transition>> rows);

  int num_states() const { return num_states_; }
  int num_actions() const { return num_actions_; }
  StateId initial_state() const { return initial_state_; }

  const std::vector<Transition>& row(StateId s, ActionId a) const {
    return rows_[static_cast<std::size_t>(s) * num_actions_ + a];
  }

  double prob(StateId s, ActionId a, StateId next) const;

 private:
  int num_states_;
  int num_actions_;
  StateId initial_state_;
  std::vector<std::vector<Transition>> rows_;  // indexed s * A + a
};

// Incremental construction helper. RESET rows are filled automatically.
class TabularMdpBuilder {
 public:
  TabularMdpBuilder(int num_states, int num_actions, StateId initial_state = 0);

  // replaces the distribution of (s, a)
  TabularMdpBuilder& set_row(StateId s, ActionId a, std::vector<Transition> row);
  TabularMdpBuilder& add(StateId s, ActionId a, StateId next, double prob);

  TabularMdp build() const;

 private:
  int num_states_;
  int num_actions_;
  StateId initial_state_;
  std::vector<std::vector<Transition>> rows_;
};

// Deterministic stationary policy. States without an explicit entry map to
// RESET; if a restriction set is present, entries outside it must be RESET.
class PolicyTable {
 public:
  PolicyTable() = default;
  explicit PolicyTable(std::map<StateId, ActionId> actions,
                       std::optional<std::set<StateId>> restriction = std::nullopt);

  static PolicyTable reset_everywhere() { return PolicyTable(); }

  ActionId action(StateId s) const {
    auto it = actions_.find(s);
    return it == actions_.end() ? kResetAction : it->second;
  }

  void set_action(StateId s, ActionId a);

  const std::optional<std::set<StateId>>& restriction() const { return restriction_; }
  const std::map<StateId, ActionId>& entries() const { return actions_; }

 private:
  std::map<StateId, ActionId> actions_;
  std::optional<std::set<StateId>> restriction_;
};

// Hitting-time value function for a fixed goal: values(g) = 0, entries are
// finite or +infinity.
struct GoalValueFn {
  StateId goal = 0;
  std::optional<std::set<StateId>> restriction;
  std::vector<double> values;

  double at(StateId s) const { return values[static_cast<std::size_t>(s)]; }
};

struct TrajectoryStep {
  StateId state;
  ActionId action;
  StateId next;
};

struct Trajectory {
  StateId start = 0;
  std::vector<TrajectoryStep> steps;
  bool reached_goal = false;  // false means the step cap was hit
  std::size_t step_count() const { return steps.size(); }
};

// Draws the next state from P(. | s, a).
StateId sample_transition(const TabularMdp& mdp, StateId s, ActionId a, RngStream& rng);

// Follows pi from the initial state until g is reached or cap steps elapse.
Trajectory rollout(const TabularMdp& mdp, const PolicyTable& pi, StateId g,
                   std::uint64_t cap, RngStream& rng);

}  // namespace axlab
