#include "axlab/explore.hpp"

#include <cmath>
#include <string>

namespace axlab {

StateId EnvHandle::step(StateId s, ActionId a, RngStream& rng) {
  if (steps_ >= budget_)
    throw BudgetExceeded("environment-step budget exhausted at " + std::to_string(steps_));
  ++steps_;
  return sample_transition(*mdp_, s, a, rng);
}

std::uint64_t navigation_cap(double radius, const ThresholdConfig& cfg) {
  return static_cast<std::uint64_t>(
      std::ceil(32.0 * radius * std::log(4.0 / cfg.nav_delta_step)));
}

StateId navigate(EnvHandle& env, StateId from, const PolicyTable& pi, StateId target,
                 double radius, const ThresholdConfig& cfg, RngStream& nav) {
  StateId s = env.step(from, kResetAction, nav);
  const std::uint64_t cap = navigation_cap(radius, cfg);
  std::uint64_t taken = 0;
  while (s != target) {
    if (taken >= cap)
      throw NavigationCapExceeded("navigation to state " + std::to_string(target) +
                                  " exceeded " + std::to_string(cap) + " steps");
    s = env.step(s, pi.action(s), nav);
    ++taken;
  }
  return s;
}

std::set<StateId> explore(EnvHandle& env, const std::set<StateId>& x,
                          const std::map<StateId, PolicyTable>& policies,
                          VisitCounter& counter, std::uint64_t n_bar, double radius,
                          const ThresholdConfig& cfg, RngStream& nav, RngStream& probe) {
  std::set<StateId> discovered;
  StateId cur = env.initial_state();
  for (StateId target : x) {
    const PolicyTable& pi = policies.at(target);
    for (ActionId a = 0; a < env.num_actions(); ++a) {
      while (counter.n(target, a) < n_bar) {
        cur = navigate(env, cur, pi, target, radius, cfg, nav);
        const StateId next = env.step(target, a, probe);
        counter.record(target, a, next);
        if (!x.count(next)) discovered.insert(next);
        cur = next;
      }
    }
  }
  return discovered;
}

bool rtest(EnvHandle& env, const std::set<StateId>& x,
           const std::map<StateId, PolicyTable>& reach_policies,
           const PolicyTable& test_policy, StateId goal, double delta, double radius,
           const ThresholdConfig& cfg, RngStream& nav, RngStream& trial) {
  if (x.empty()) return true;
  const auto n_trials = static_cast<std::uint64_t>(
      std::ceil(1024.0 * std::log(2.0 * static_cast<double>(x.size()) / delta)));
  const auto step_cap = static_cast<std::uint64_t>(std::ceil(8.0 * radius));

  // i_s/n < 7/16 iff i_s <= need - 1
  const auto need = static_cast<std::uint64_t>(
      std::ceil(7.0 / 16.0 * static_cast<double>(n_trials) - 1e-12));

  StateId cur = env.initial_state();
  for (StateId s : x) {
    std::uint64_t hits = 0;
    for (std::uint64_t j = 0; j < n_trials; ++j) {
      // stop as soon as this state's verdict cannot change
      if (hits >= need) break;
      if (hits + (n_trials - j) < need) break;
      cur = navigate(env, cur, reach_policies.at(s), s, radius, cfg, nav);
      std::uint64_t taken = 0;
      while (cur != goal && taken < step_cap) {
        cur = env.step(cur, test_policy.action(cur), trial);
        ++taken;
      }
      if (cur == goal) ++hits;
    }
    if (hits < need) return false;
  }
  return true;
}

std::uint64_t n_dev(double l0, double eps, double delta) {
  auto lhs = [l0, delta](std::uint64_t n) {
    const double nd = static_cast<double>(n);
    const double log_term = std::log(8.0 * nd * nd * l0 / delta);
    return 8.0 / std::sqrt(nd) * log_term * log_term;
  };
  if (lhs(1) <= eps) return 1;
  std::uint64_t hi = 2;
  while (lhs(hi) > eps) {
    if (hi > (1ull << 60))
      throw std::invalid_argument("n_dev: no solution below 2^60");
    hi *= 2;
  }
  std::uint64_t lo = hi / 2;
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (lhs(mid) <= eps)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

std::uint64_t n_zero(double z0, double z0_prime, double delta0, double delta,
                     double radius, const ThresholdConfig& cfg) {
  if (z0 <= 0.0) return 0;
  const double log_term = std::max(0.0, std::log(z0_prime / (delta0 * delta)));
  return static_cast<std::uint64_t>(std::ceil(cfg.c_n0 * radius * radius * z0 * log_term));
}

std::uint64_t n_one(double x, double delta0, double delta, double radius,
                    const ThresholdConfig& cfg) {
  if (x <= 0.0) return 0;
  const double log_term = std::max(0.0, std::log(x / (delta0 * delta)));
  return static_cast<std::uint64_t>(std::ceil(cfg.c_n1 * radius * radius * x * log_term));
}

std::uint64_t eval_episodes(double radius, double eps, double delta_round,
                            const ThresholdConfig& cfg) {
  std::uint64_t n = n_dev(32.0 * radius, eps / 256.0, delta_round);
  if (cfg.eval_episode_factor > 0.0) {
    const double cal =
        std::ceil(cfg.eval_episode_factor * std::log(2.0 / delta_round) / (eps * eps));
    if (cal < static_cast<double>(n)) n = static_cast<std::uint64_t>(cal);
  }
  return std::min(n, cfg.max_eval_episodes);
}

HittingTimeEstimate estimate_hitting_time(const TabularMdp& mdp, const PolicyTable& pi,
                                          StateId g, std::uint64_t n_episodes,
                                          std::uint64_t step_cap, RngStream& rng) {
  HittingTimeEstimate est;
  est.episode_steps.reserve(n_episodes);
  double total = 0.0;
  for (std::uint64_t i = 0; i < n_episodes; ++i) {
    const Trajectory traj = rollout(mdp, pi, g, step_cap, rng);
    est.episode_steps.push_back(traj.step_count());
    if (!traj.reached_goal) ++est.capped_episodes;
    total += static_cast<double>(traj.step_count());
  }
  est.tau_hat = n_episodes == 0 ? 0.0 : total / static_cast<double>(n_episodes);
  return est;
}

}  // namespace axlab
