#pragma once

#include <map>
#include <set>
#include <vector>

#include "axlab/mdp.hpp"
#include "axlab/visit_counter.hpp"

namespace axlab {

// Multipliers for the sample-threshold functions plus rollout/episode caps.
// The threshold lemmas fix only asymptotic shapes; the absolute constants are
// configuration.
struct ThresholdConfig {
  double c_n0 = 4.0;
  double c_n1 = 4.0;
  // per-rollout tail probability behind the navigation safety cap
  double nav_delta_step = 1e-9;
  // calibrated policy-evaluation episode count c * ln(2/delta_r) / eps^2,
  // taken as a cap on the deviation-threshold value; 0 disables the cap
  double eval_episode_factor = 512.0;
  std::uint64_t max_eval_episodes = 1'000'000;
  std::uint64_t visgo_max_sweeps = 1'000'000;
};

// Sampling access to an environment: initial state, action count, one-step
// transitions. State-space size is deliberately not exposed. Every step is
// charged against the budget.
class EnvHandle {
 public:
  EnvHandle(const TabularMdp& mdp, std::uint64_t budget)
      : mdp_(&mdp), budget_(budget) {}

  StateId initial_state() const { return mdp_->initial_state(); }
  int num_actions() const { return mdp_->num_actions(); }
  std::uint64_t steps_taken() const { return steps_; }

  StateId step(StateId s, ActionId a, RngStream& rng);

 private:
  const TabularMdp* mdp_;
  std::uint64_t budget_;
  std::uint64_t steps_ = 0;
};

std::uint64_t navigation_cap(double radius, const ThresholdConfig& cfg);

// Resets, then follows pi until target is reached. Aborts with
// NavigationCapExceeded past the safety cap (caller contract violation).
StateId navigate(EnvHandle& env, StateId from, const PolicyTable& pi, StateId target,
                 double radius, const ThresholdConfig& cfg, RngStream& nav);

// Drives every (x, a) in X x A up to n_bar recorded samples: reset, navigate
// to x with its reaching policy, execute a, record the transition. Returns
// the observed next states outside X. Navigation steps are not recorded in
// the counter.
std::set<StateId> explore(EnvHandle& env, const std::set<StateId>& x,
                          const std::map<StateId, PolicyTable>& policies,
                          VisitCounter& counter, std::uint64_t n_bar, double radius,
                          const ThresholdConfig& cfg, RngStream& nav, RngStream& probe);

// Monte-Carlo reachability test: from every s in X, ceil(2^10 ln(2|X|/delta))
// trials of at most 8L steps under the test policy; fails at the first s whose
// success fraction drops below 7/16.
bool rtest(EnvHandle& env, const std::set<StateId>& x,
           const std::map<StateId, PolicyTable>& reach_policies,
           const PolicyTable& test_policy, StateId goal, double delta, double radius,
           const ThresholdConfig& cfg, RngStream& nav, RngStream& trial);

// Smallest n with (8/sqrt(n)) * ln^2(8 n^2 L0 / delta) <= eps, by doubling
// then bisection (the left side is unimodal and eventually decreasing).
std::uint64_t n_dev(double l0, double eps, double delta);

// ceil(c * L^2 * size * ln(arg / (delta0 * delta))) threshold shapes
std::uint64_t n_zero(double z0, double z0_prime, double delta0, double delta,
                     double radius, const ThresholdConfig& cfg);
std::uint64_t n_one(double x, double delta0, double delta, double radius,
                    const ThresholdConfig& cfg);

// Episode count for one policy-evaluation round: the deviation threshold
// n_dev(32L, eps/256, delta_round) capped by the calibrated form above.
std::uint64_t eval_episodes(double radius, double eps, double delta_round,
                            const ThresholdConfig& cfg);

struct HittingTimeEstimate {
  double tau_hat = 0.0;
  std::vector<std::uint64_t> episode_steps;
  std::uint64_t capped_episodes = 0;
};

// Empirical mean hitting time over n episodes from the initial state, unit
// cost per step. Episodes cut off by step_cap are flagged.
HittingTimeEstimate estimate_hitting_time(const TabularMdp& mdp, const PolicyTable& pi,
                                          StateId g, std::uint64_t n_episodes,
                                          std::uint64_t step_cap, RngStream& rng);

}  // namespace axlab
