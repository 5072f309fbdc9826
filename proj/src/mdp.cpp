#include "axlab/mdp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace axlab {

namespace {
constexpr double kStochasticityTol = 1e-9;
}

TabularMdp::TabularMdp(int num_states, int num_actions, StateId initial_state,
                       std::vector<std::vector<Transition>> rows)
    : num_states_(num_states),
      num_actions_(num_actions),
      initial_state_(initial_state),
      rows_(std::move(rows)) {
  if (num_states_ <= 0 || num_actions_ <= 0)
    throw std::invalid_argument("TabularMdp: state and action counts must be positive");
  if (initial_state_ < 0 || initial_state_ >= num_states_)
    throw std::invalid_argument("TabularMdp: initial state out of range");
  if (rows_.size() != static_cast<std::size_t>(num_states_) * num_actions_)
    throw std::invalid_argument("TabularMdp: missing (s, a) rows");

  for (StateId s = 0; s < num_states_; ++s) {
    for (ActionId a = 0; a < num_actions_; ++a) {
      const auto& row = rows_[static_cast<std::size_t>(s) * num_actions_ + a];
      if (row.empty())
        throw std::invalid_argument("TabularMdp: empty distribution at (" +
                                    std::to_string(s) + ", " + std::to_string(a) + ")");
      double mass = 0.0;
      double reset_mass = 0.0;
      for (const auto& t : row) {
        if (t.next < 0 || t.next >= num_states_)
          throw std::invalid_argument("TabularMdp: next state out of range");
        if (t.prob < 0.0)
          throw std::invalid_argument("TabularMdp: negative probability");
        mass += t.prob;
        if (a == kResetAction && t.next == initial_state_) reset_mass += t.prob;
      }
      if (std::abs(mass - 1.0) > kStochasticityTol)
        throw std::invalid_argument("TabularMdp: row (" + std::to_string(s) + ", " +
                                    std::to_string(a) + ") sums to " + std::to_string(mass));
      if (a == kResetAction && std::abs(reset_mass - 1.0) > kStochasticityTol)
        throw std::invalid_argument("TabularMdp: RESET from state " + std::to_string(s) +
                                    " does not return to the initial state");
    }
  }
}

double TabularMdp::prob(StateId s, ActionId a, StateId next) const {
  double p = 0.0;
  for (const auto& t : row(s, a))
    if (t.next == next) p += t.prob;
  return p;
}

TabularMdpBuilder::TabularMdpBuilder(int num_states, int num_actions, StateId initial_state)
    : num_states_(num_states),
      num_actions_(num_actions),
      initial_state_(initial_state),
      rows_(static_cast<std::size_t>(num_states) * num_actions) {
  for (StateId s = 0; s < num_states_; ++s)
    rows_[static_cast<std::size_t>(s) * num_actions_ + kResetAction] = {
        {initial_state_, 1.0}};
}

TabularMdpBuilder& TabularMdpBuilder::set_row(StateId s, ActionId a,
                                              std::vector<Transition> row) {
  rows_[static_cast<std::size_t>(s) * num_actions_ + a] = std::move(row);
  return *this;
}

TabularMdpBuilder& TabularMdpBuilder::add(StateId s, ActionId a, StateId next, double prob) {
  rows_[static_cast<std::size_t>(s) * num_actions_ + a].push_back({next, prob});
  return *this;
}

TabularMdp TabularMdpBuilder::build() const {
  return TabularMdp(num_states_, num_actions_, initial_state_, rows_);
}

PolicyTable::PolicyTable(std::map<StateId, ActionId> actions,
                         std::optional<std::set<StateId>> restriction)
    : actions_(std::move(actions)), restriction_(std::move(restriction)) {
  if (restriction_) {
    for (const auto& [s, a] : actions_)
      if (a != kResetAction && !restriction_->count(s))
        throw std::invalid_argument(
            "PolicyTable: non-RESET action outside the restriction set");
  }
}

void PolicyTable::set_action(StateId s, ActionId a) {
  if (restriction_ && a != kResetAction && !restriction_->count(s))
    throw std::invalid_argument("PolicyTable: non-RESET action outside the restriction set");
  actions_[s] = a;
}

StateId sample_transition(const TabularMdp& mdp, StateId s, ActionId a, RngStream& rng) {
  const auto& row = mdp.row(s, a);
  if (row.size() == 1) return row[0].next;
  const double u = rng.next_double();
  double cum = 0.0;
  for (const auto& t : row) {
    cum += t.prob;
    if (u < cum) return t.next;
  }
  return row.back().next;
}

Trajectory rollout(const TabularMdp& mdp, const PolicyTable& pi, StateId g,
                   std::uint64_t cap, RngStream& rng) {
  Trajectory traj;
  traj.start = mdp.initial_state();
  StateId s = traj.start;
  while (s != g && traj.steps.size() < cap) {
    const ActionId a = pi.action(s);
    const StateId next = sample_transition(mdp, s, a, rng);
    traj.steps.push_back({s, a, next});
    s = next;
  }
  traj.reached_goal = (s == g);
  return traj;
}

}  // namespace axlab
