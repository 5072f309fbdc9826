#include "axlab/discovery.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "axlab/visgo.hpp"

namespace axlab {

const char* round_kind_name(RoundKind kind) {
  switch (kind) {
    case RoundKind::kSuccess: return "success";
    case RoundKind::kSkip: return "skip";
    case RoundKind::kFailure: return "failure";
    case RoundKind::kExpansion: return "expansion";
    case RoundKind::kTerminate: return "terminate";
    case RoundKind::kRtestFail: return "rtest_fail";
  }
  return "unknown";
}

std::string round_logs_to_csv(const std::vector<RoundLog>& logs) {
  std::string out =
      "algo,trial,round,kind,goal,tau_hat,v_opt_s0,k_size,k_prime_size,u_size,z,n_min,"
      "samples\n";
  char buf[256];
  for (const auto& log : logs) {
    std::snprintf(buf, sizeof(buf), "%s,%d,%d,%s,%s,%.10g,%.10g,%zu,%zu,%zu,%llu,%llu,%llu\n",
                  log.algo.c_str(), log.trial, log.round, round_kind_name(log.kind),
                  log.goal ? std::to_string(*log.goal).c_str() : "",
                  log.tau_hat, log.v_opt_s0, log.k_size, log.k_prime_size, log.u_size,
                  static_cast<unsigned long long>(log.z),
                  static_cast<unsigned long long>(log.n_min),
                  static_cast<unsigned long long>(log.samples));
    out += buf;
  }
  return out;
}

void DiscoveryState::check_invariants() const {
  for (StateId s : k_prime)
    if (k.count(s)) throw InternalError("discovery: K and K' intersect");
  for (StateId s : u)
    if (k.count(s) || k_prime.count(s))
      throw InternalError("discovery: U intersects K or K'");
  for (StateId s : k)
    if (!policies.count(s)) throw InternalError("discovery: goal in K without a policy");
  for (StateId s : k_prime)
    if (!policies.count(s)) throw InternalError("discovery: goal in K' without a policy");
  if (z != 0 && !is_power_of_two(z)) throw InternalError("discovery: z not a power of two");
}

EvalRoundResult evaluate_candidate(EnvHandle& env, const std::set<StateId>& skip_set,
                                   VisitCounter& counter, StateId goal,
                                   const PolicyTable& pi, double radius, double eps,
                                   double delta_round,
                                   const std::function<bool(double)>& failure_test,
                                   const ThresholdConfig& cfg, RngStream& eval) {
  const std::uint64_t lambda = eval_episodes(radius, eps, delta_round, cfg);
  const std::uint64_t start = env.steps_taken();

  EvalRoundResult res;
  double tau_hat = 0.0;
  StateId cur = env.initial_state();
  for (std::uint64_t episode = 0; episode < lambda; ++episode) {
    cur = env.step(cur, kResetAction, eval);
    while (cur != goal) {
      const ActionId a = pi.action(cur);
      const StateId next = env.step(cur, a, eval);
      counter.record(cur, a, next);
      if (is_power_of_two(counter.total()) ||
          (skip_set.count(cur) && is_power_of_two(counter.n(cur, a)))) {
        res.kind = RoundKind::kSkip;
        res.tau_hat = tau_hat;
        res.samples_used = env.steps_taken() - start;
        return res;
      }
      tau_hat += 1.0 / static_cast<double>(lambda);
      cur = next;
    }
    if (failure_test(tau_hat)) {
      res.kind = RoundKind::kFailure;
      res.tau_hat = tau_hat;
      res.samples_used = env.steps_taken() - start;
      return res;
    }
  }
  res.kind = RoundKind::kSuccess;
  res.tau_hat = tau_hat;
  res.samples_used = env.steps_taken() - start;
  return res;
}

namespace {

struct GoalSelection {
  bool exists = false;
  StateId goal = 0;
  double value = kInfValue;
  VisgoResult plan;
};

// optimistic value per candidate goal; argmin ties break toward lowest id
GoalSelection select_goal(const DiscoveryState& st, double eps_vi, double delta_vi,
                          double radius, int num_actions, StateId s0,
                          const ThresholdConfig& cfg) {
  GoalSelection sel;
  VisgoConfig vcfg;
  vcfg.max_sweeps = cfg.visgo_max_sweeps;
  for (StateId g : st.u) {
    VisgoResult plan = visgo(st.k, g, eps_vi, st.counter, delta_vi, radius, num_actions,
                             s0, vcfg);
    const double value = plan.value(s0);
    if (!sel.exists || value < sel.value) {
      sel.exists = true;
      sel.goal = g;
      sel.value = value;
      sel.plan = std::move(plan);
    }
  }
  return sel;
}

double eps_vi_of(const VisitCounter& counter) {
  return 1.0 / std::max<double>(16.0, static_cast<double>(counter.total()));
}

}  // namespace

DiscoveryResult lasd(EnvHandle& env, int num_states, double radius, double eps,
                     double delta, const ThresholdConfig& cfg, StreamSet& streams) {
  if (eps <= 0.0 || eps > 1.0) throw std::invalid_argument("lasd: eps must be in (0, 1]");
  if (delta <= 0.0 || delta >= 1.0)
    throw std::invalid_argument("lasd: delta must be in (0, 1)");
  const StateId s0 = env.initial_state();
  const int A = env.num_actions();
  const double s_count = static_cast<double>(num_states);

  DiscoveryState st;
  st.k_prime = {s0};
  st.policies[s0] = PolicyTable::reset_everywhere();
  st.policy_value_s0[s0] = 0.0;

  DiscoveryResult res;
  res.touched.insert(s0);

  for (int r = 1;; ++r) {
    st.round = r;
    const double r2 = static_cast<double>(r) * r;
    const double delta_vi = delta / (4.0 * r2 * s_count * s_count);
    GoalSelection sel =
        select_goal(st, eps_vi_of(st.counter), delta_vi, radius, A, s0, cfg);

    RoundLog log;
    log.algo = "lasd";
    log.round = r;
    log.v_opt_s0 = sel.value;

    if (!sel.exists || sel.value > radius) {
      if (st.k_prime.empty()) {
        log.kind = RoundKind::kTerminate;
        log.k_size = st.k.size();
        log.u_size = st.u.size();
        log.n_min = st.n_min;
        log.samples = env.steps_taken();
        res.logs.push_back(log);
        break;
      }
      st.k.insert(st.k_prime.begin(), st.k_prime.end());
      st.k_prime.clear();
      st.u.clear();
      res.expansion_history.push_back(st.k);

      const auto discover_target = static_cast<std::uint64_t>(std::ceil(
          2.0 * radius * std::log(4.0 * s_count * A * radius * r2 / delta)));
      VisitCounter throwaway;
      st.u = explore(env, st.k, st.policies, throwaway, discover_target, radius, cfg,
                     streams.navigation, streams.explore);
      st.n_min = n_zero(static_cast<double>(st.k.size()), s_count, delta_vi, delta_vi,
                        radius, cfg);
      explore(env, st.k, st.policies, st.counter, st.n_min, radius, cfg,
              streams.navigation, streams.explore);
      log.kind = RoundKind::kExpansion;
    } else {
      const double v_at_s0 = sel.value;
      auto additive_test = [v_at_s0, eps, radius](double tau) {
        return tau > v_at_s0 + eps * radius / 2.0;
      };
      const EvalRoundResult out =
          evaluate_candidate(env, st.k, st.counter, sel.goal, sel.plan.policy, radius,
                             eps, delta / (4.0 * r2), additive_test, cfg,
                             streams.evaluation);
      log.kind = out.kind;
      log.goal = sel.goal;
      log.tau_hat = out.tau_hat;
      if (out.kind == RoundKind::kSuccess) {
        st.k_prime.insert(sel.goal);
        st.u.erase(sel.goal);
        st.policies[sel.goal] = sel.plan.policy;
        st.policy_value_s0[sel.goal] = sel.value;
      }
    }

    res.touched.insert(st.k.begin(), st.k.end());
    res.touched.insert(st.k_prime.begin(), st.k_prime.end());
    res.touched.insert(st.u.begin(), st.u.end());
    log.k_size = st.k.size();
    log.k_prime_size = st.k_prime.size();
    log.u_size = st.u.size();
    log.n_min = st.n_min;
    log.samples = env.steps_taken();
    res.logs.push_back(log);
    st.check_invariants();
  }

  res.k = st.k;
  res.policies = st.policies;
  res.policy_value_s0 = st.policy_value_s0;
  return res;
}

std::set<StateId> compute_u(EnvHandle& env, const std::set<StateId>& x,
                            const std::map<StateId, PolicyTable>& policies, double delta,
                            double radius, const ThresholdConfig& cfg,
                            StreamSet& streams) {
  const int A = env.num_actions();
  const StateId s0 = env.initial_state();

  const auto discover_target = static_cast<std::uint64_t>(std::ceil(
      2.0 * radius *
      std::log(4.0 * radius * A * std::max<double>(1.0, static_cast<double>(x.size())) /
               delta)));
  VisitCounter scratch;
  const std::set<StateId> candidates = explore(env, x, policies, scratch, discover_target,
                                               radius, cfg, streams.navigation,
                                               streams.explore);
  if (candidates.empty()) return {};

  const double delta_fresh = delta / (4.0 * static_cast<double>(candidates.size()));
  VisitCounter fresh;
  explore(env, x, policies, fresh,
          n_one(static_cast<double>(x.size()), delta_fresh, delta_fresh, radius, cfg),
          radius, cfg, streams.navigation, streams.explore);

  VisgoConfig vcfg;
  vcfg.max_sweeps = cfg.visgo_max_sweeps;
  std::set<StateId> filtered;
  for (StateId g : candidates) {
    const VisgoResult plan = visgo(x, g, 1.0 / 16.0, fresh, delta_fresh, radius, A, s0,
                                   vcfg);
    if (plan.value(s0) <= radius) filtered.insert(g);
  }
  return filtered;
}

DiscoveryResult lasd_plus(EnvHandle& env, double radius, double eps, double delta,
                          const ThresholdConfig& cfg, StreamSet& streams) {
  if (eps <= 0.0 || eps > 1.0)
    throw std::invalid_argument("lasd_plus: eps must be in (0, 1]");
  if (delta <= 0.0 || delta >= 1.0)
    throw std::invalid_argument("lasd_plus: delta must be in (0, 1)");
  const StateId s0 = env.initial_state();
  const int A = env.num_actions();

  DiscoveryResult res;
  res.touched.insert(s0);
  std::uint64_t z = 2;

  for (int trial = 1;; ++trial) {
    DiscoveryState st;
    st.trial = trial;
    st.z = z;
    st.n_min = 1;
    st.k_prime = {s0};
    st.policies[s0] = PolicyTable::reset_everywhere();
    st.policy_value_s0[s0] = 0.0;

    bool restart = false;
    for (int r = 1; !restart; ++r) {
      st.round = r;
      if (st.k.size() + st.k_prime.size() >= z) {
        z = 2 * (st.k.size() + st.k_prime.size());
        restart = true;
        break;
      }
      const double r2 = static_cast<double>(r) * r;
      const double tau2 = static_cast<double>(trial) * trial;
      const double z4 = static_cast<double>(z) * z * z * z;
      const double delta_vi = delta / (4.0 * tau2 * z4 * A * radius);
      GoalSelection sel =
          select_goal(st, eps_vi_of(st.counter), delta_vi, radius, A, s0, cfg);

      RoundLog log;
      log.algo = "lasd+";
      log.trial = trial;
      log.round = r;
      log.v_opt_s0 = sel.value;

      if (!sel.exists || sel.value > radius) {
        if (st.k_prime.empty()) {
          log.kind = RoundKind::kTerminate;
          log.k_size = st.k.size();
          log.u_size = st.u.size();
          log.z = z;
          log.n_min = st.n_min;
          log.samples = env.steps_taken();
          res.logs.push_back(log);
          res.k = st.k;
          res.policies = st.policies;
          res.policy_value_s0 = st.policy_value_s0;
          res.trials = trial;
          res.final_z = z;
          return res;
        }
        st.k.insert(st.k_prime.begin(), st.k_prime.end());
        st.k_prime.clear();
        st.u.clear();
        res.expansion_history.push_back(st.k);
        st.u = compute_u(env, st.k, st.policies, delta / (4.0 * tau2 * r2), radius, cfg,
                         streams);
        log.kind = RoundKind::kExpansion;
      } else if (!rtest(env, st.k, st.policies, sel.plan.policy, sel.goal,
                        delta / (4.0 * tau2 * r2), radius, cfg, streams.navigation,
                        streams.rtest)) {
        st.n_min *= 2;
        explore(env, st.k, st.policies, st.counter, st.n_min, radius, cfg,
                streams.navigation, streams.explore);
        log.kind = RoundKind::kRtestFail;
        log.goal = sel.goal;
      } else {
        const double v_at_s0 = sel.value;
        auto additive_test = [v_at_s0, eps, radius](double tau) {
          return tau > v_at_s0 + eps * radius / 2.0;
        };
        const EvalRoundResult out =
            evaluate_candidate(env, st.k, st.counter, sel.goal, sel.plan.policy, radius,
                               eps, delta / (2.0 * r2), additive_test, cfg,
                               streams.evaluation);
        log.kind = out.kind;
        log.goal = sel.goal;
        log.tau_hat = out.tau_hat;
        if (out.kind == RoundKind::kSuccess) {
          st.k_prime.insert(sel.goal);
          st.u.erase(sel.goal);
          st.policies[sel.goal] = sel.plan.policy;
          st.policy_value_s0[sel.goal] = sel.value;
        }
      }

      res.touched.insert(st.k.begin(), st.k.end());
      res.touched.insert(st.k_prime.begin(), st.k_prime.end());
      res.touched.insert(st.u.begin(), st.u.end());
      log.k_size = st.k.size();
      log.k_prime_size = st.k_prime.size();
      log.u_size = st.u.size();
      log.z = z;
      log.n_min = st.n_min;
      log.samples = env.steps_taken();
      res.logs.push_back(log);
      st.check_invariants();
    }
  }
}

}  // namespace axlab
