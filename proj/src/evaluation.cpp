#include "axlab/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace axlab {

namespace {

// Per-state action filter: which actions a policy class may use at s.
using ActionFilter = std::function<bool(StateId, ActionId)>;

// States from which some policy over the allowed actions reaches g almost
// surely. Standard fixpoint: repeatedly drop states that cannot reach g using
// actions whose support stays inside the surviving set. In a finite MDP,
// finite expected hitting time is equivalent to almost-sure hitting.
std::vector<char> almost_sure_reach(const TabularMdp& mdp, StateId g,
                                    const ActionFilter& allowed) {
  const int S = mdp.num_states();
  const int A = mdp.num_actions();
  std::vector<char> in_w(S, 1);

  // reverse adjacency over positive-probability edges
  std::vector<std::vector<std::pair<StateId, ActionId>>> rev(S);
  for (StateId s = 0; s < S; ++s) {
    if (s == g) continue;
    for (ActionId a = 0; a < A; ++a) {
      if (!allowed(s, a)) continue;
      for (const auto& t : mdp.row(s, a))
        if (t.prob > 0.0) rev[t.next].push_back({s, a});
    }
  }

  std::vector<char> usable(static_cast<std::size_t>(S) * A, 0);
  std::vector<char> reach(S, 0);
  std::vector<StateId> queue;
  queue.reserve(S);

  for (;;) {
    // usable(s, a): allowed and support contained in the current candidate set
    for (StateId s = 0; s < S; ++s) {
      if (s == g || !in_w[s]) continue;
      for (ActionId a = 0; a < A; ++a) {
        char ok = 0;
        if (allowed(s, a)) {
          ok = 1;
          for (const auto& t : mdp.row(s, a))
            if (t.prob > 0.0 && !in_w[t.next]) {
              ok = 0;
              break;
            }
        }
        usable[static_cast<std::size_t>(s) * A + a] = ok;
      }
    }

    // backward closure from g through usable actions
    std::fill(reach.begin(), reach.end(), 0);
    reach[g] = 1;
    queue.clear();
    queue.push_back(g);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const StateId tgt = queue[qi];
      for (const auto& [s, a] : rev[tgt]) {
        if (reach[s] || !in_w[s]) continue;
        if (!usable[static_cast<std::size_t>(s) * A + a]) continue;
        reach[s] = 1;
        queue.push_back(s);
      }
    }

    bool changed = false;
    for (StateId s = 0; s < S; ++s)
      if (in_w[s] && !reach[s]) {
        in_w[s] = 0;
        changed = true;
      }
    if (!changed) break;
  }
  return in_w;
}

struct SolveResult {
  std::vector<double> values;
  std::vector<ActionId> argmin;  // meaningful on finite states only
};

// Synchronous value iteration for the hitting-time fixed point
// V(s) = 1 + min_{a allowed} sum P(s'|s,a) V(s'), V(g) = 0, on the exact
// finite part. Monotone from below, so the iterates never overshoot.
SolveResult solve_hitting_times(const TabularMdp& mdp, StateId g,
                                const ActionFilter& allowed, const EvalOptions& opts) {
  const int S = mdp.num_states();
  const int A = mdp.num_actions();
  const std::vector<char> finite = almost_sure_reach(mdp, g, allowed);

  SolveResult res;
  res.values.assign(S, kInfValue);
  res.argmin.assign(S, kResetAction);
  res.values[g] = 0.0;

  // actions that keep the chain inside the finite part
  std::vector<char> usable(static_cast<std::size_t>(S) * A, 0);
  for (StateId s = 0; s < S; ++s) {
    if (!finite[s] || s == g) continue;
    bool any = false;
    for (ActionId a = 0; a < A; ++a) {
      if (!allowed(s, a)) continue;
      bool ok = true;
      for (const auto& t : mdp.row(s, a))
        if (t.prob > 0.0 && !finite[t.next]) {
          ok = false;
          break;
        }
      usable[static_cast<std::size_t>(s) * A + a] = ok;
      any = any || ok;
    }
    if (!any) throw InternalError("hitting-time solve: reachable state with no safe action");
  }

  std::vector<double> v(S, 0.0), next(S, 0.0);

  for (std::uint64_t sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    double delta = 0.0;
    for (StateId s = 0; s < S; ++s) {
      if (!finite[s] || s == g) {
        next[s] = 0.0;
        continue;
      }
      double best = kInfValue;
      ActionId best_a = kResetAction;
      for (ActionId a = 0; a < A; ++a) {
        if (!usable[static_cast<std::size_t>(s) * A + a]) continue;
        double q = 1.0;
        for (const auto& t : mdp.row(s, a)) q += t.prob * v[t.next];
        if (q < best) {
          best = q;
          best_a = a;
        }
      }
      next[s] = best;
      res.argmin[s] = best_a;
      delta = std::max(delta, std::abs(next[s] - v[s]));
    }
    v.swap(next);
    if (delta <= opts.tol) {
      for (StateId s = 0; s < S; ++s)
        if (finite[s] && s != g) {
          if (v[s] > opts.horizon_bound)
            throw InternalError("hitting-time solve: value exceeded horizon bound");
          res.values[s] = v[s];
        }
      return res;
    }
  }
  throw InternalError("hitting-time solve: sweep cap exceeded");
}

}  // namespace

GoalValueFn evaluate_policy(const TabularMdp& mdp, const PolicyTable& pi, StateId g,
                            const EvalOptions& opts) {
  auto allowed = [&pi](StateId s, ActionId a) { return pi.action(s) == a; };
  SolveResult sol = solve_hitting_times(mdp, g, allowed, opts);
  GoalValueFn vf;
  vf.goal = g;
  vf.restriction = pi.restriction();
  vf.values = std::move(sol.values);
  return vf;
}

std::pair<GoalValueFn, PolicyTable> optimal_restricted_values(
    const TabularMdp& mdp, const std::set<StateId>& restriction, StateId g,
    const EvalOptions& opts) {
  auto allowed = [&restriction](StateId s, ActionId a) {
    return restriction.count(s) ? true : a == kResetAction;
  };
  SolveResult sol = solve_hitting_times(mdp, g, allowed, opts);

  std::map<StateId, ActionId> actions;
  for (StateId s = 0; s < mdp.num_states(); ++s)
    actions[s] = restriction.count(s) ? sol.argmin[s] : kResetAction;
  PolicyTable pi(std::move(actions), restriction);

  GoalValueFn vf;
  vf.goal = g;
  vf.restriction = restriction;
  vf.values = std::move(sol.values);
  return {std::move(vf), std::move(pi)};
}

}  // namespace axlab
