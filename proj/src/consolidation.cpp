#include "axlab/consolidation.hpp"

#include <cmath>
#include <stdexcept>

#include "axlab/visgo.hpp"

namespace axlab {

ConsolidationResult policy_consolidation(EnvHandle& env, double radius, double eps,
                                         double delta, const std::set<StateId>& targets,
                                         const std::map<StateId, PolicyTable>& initial_policies,
                                         const ThresholdConfig& cfg, StreamSet& streams) {
  if (eps <= 0.0 || eps > 1.0)
    throw std::invalid_argument("policy_consolidation: eps must be in (0, 1]");
  if (delta <= 0.0 || delta >= 1.0)
    throw std::invalid_argument("policy_consolidation: delta must be in (0, 1)");
  if (targets.empty())
    throw std::invalid_argument("policy_consolidation: empty target set");
  for (StateId g : targets)
    if (!initial_policies.count(g))
      throw std::invalid_argument("policy_consolidation: target " + std::to_string(g) +
                                  " has no initial policy");

  const StateId s0 = env.initial_state();
  const int A = env.num_actions();
  const double t_count = static_cast<double>(targets.size());

  VisitCounter counter;
  explore(env, targets, initial_policies, counter,
          n_one(t_count - 1.0, delta / t_count, delta / t_count, radius, cfg), radius,
          cfg, streams.navigation, streams.explore);

  ConsolidationResult res;
  std::set<StateId> remaining = targets;
  VisgoConfig vcfg;
  vcfg.max_sweeps = cfg.visgo_max_sweeps;

  for (int r = 1; !remaining.empty(); ++r) {
    const StateId goal = *remaining.begin();
    std::set<StateId> x = targets;
    x.erase(goal);

    const double eps_vi = 1.0 / std::max<double>(16.0, static_cast<double>(counter.total()));
    const VisgoResult plan =
        visgo(x, goal, eps_vi, counter, delta / t_count, radius, A, s0, vcfg);

    const double v_hat = plan.value(s0);
    auto multiplicative_test = [v_hat, eps](double tau) {
      return tau > v_hat * (1.0 + eps / 2.0);
    };
    const double r2 = static_cast<double>(r) * r;
    const EvalRoundResult out =
        evaluate_candidate(env, targets, counter, goal, plan.policy, radius, eps,
                           delta / (2.0 * r2), multiplicative_test, cfg,
                           streams.evaluation);

    RoundLog log;
    log.algo = "pc";
    log.round = r;
    log.kind = out.kind;
    log.goal = goal;
    log.tau_hat = out.tau_hat;
    log.v_opt_s0 = v_hat;
    log.k_size = targets.size();
    log.k_prime_size = res.policies.size();
    log.u_size = remaining.size();
    log.samples = env.steps_taken();
    res.logs.push_back(log);

    if (out.kind == RoundKind::kSuccess) {
      remaining.erase(goal);
      res.policies[goal] = plan.policy;
      res.policy_value_s0[goal] = v_hat;
    }
  }
  return res;
}

LaeResult lae(EnvHandle& env, double radius, double eps, double delta,
              const ThresholdConfig& cfg, StreamSet& streams, bool use_lasd_plus,
              int num_states_for_lasd) {
  LaeResult res;
  res.discovery = use_lasd_plus
                      ? lasd_plus(env, radius, eps, delta, cfg, streams)
                      : lasd(env, num_states_for_lasd, radius, eps, delta, cfg, streams);
  res.consolidation = policy_consolidation(env, radius, eps, delta, res.discovery.k,
                                           res.discovery.policies, cfg, streams);
  return res;
}

}  // namespace axlab
