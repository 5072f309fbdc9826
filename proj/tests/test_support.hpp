#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "axlab/evaluation.hpp"
#include "axlab/mdp.hpp"

// Brute-force reference computations and shared fixtures. These enumerate
// policies directly and never go through optimal_restricted_values, so they
// stay independent of the code paths they check.
namespace testsupport {

using namespace axlab;

// minimum over all deterministic policies restricted on X of V^pi_g(s0)
inline double brute_optimal_value_s0(const TabularMdp& mdp, const std::set<StateId>& x,
                                     StateId g) {
  const std::vector<StateId> free_states(x.begin(), x.end());
  const int a_count = mdp.num_actions();
  double best = kInfValue;
  std::vector<int> choice(free_states.size(), 0);
  for (;;) {
    std::map<StateId, ActionId> actions;
    for (std::size_t i = 0; i < free_states.size(); ++i)
      actions[free_states[i]] = choice[i];
    const PolicyTable pi(actions, x);
    const double v = evaluate_policy(mdp, pi, g).at(mdp.initial_state());
    if (v < best) best = v;
    // odometer
    std::size_t pos = 0;
    while (pos < choice.size()) {
      if (++choice[pos] < a_count) break;
      choice[pos] = 0;
      ++pos;
    }
    if (pos == choice.size()) break;
    if (choice.empty()) break;
  }
  return best;
}

inline std::set<StateId> brute_t_l(const TabularMdp& mdp, const std::set<StateId>& x,
                                   double radius, double tol = 1e-8) {
  std::set<StateId> result;
  for (StateId g = 0; g < mdp.num_states(); ++g)
    if (brute_optimal_value_s0(mdp, x, g) <= radius + tol) result.insert(g);
  return result;
}

// layer sequence from {s0} to the fixed point, by policy enumeration only
inline std::vector<std::set<StateId>> brute_layers(const TabularMdp& mdp, double radius,
                                                   double tol = 1e-8) {
  std::vector<std::set<StateId>> layers;
  std::set<StateId> current = {mdp.initial_state()};
  layers.push_back(current);
  for (int i = 0; i <= mdp.num_states(); ++i) {
    std::set<StateId> next = brute_t_l(mdp, current, radius, tol);
    if (next == current) return layers;
    layers.push_back(next);
    current = std::move(next);
  }
  throw std::logic_error("brute_layers: no stabilization");
}

// two states, one non-RESET action: stay at s0 or move to s1 with prob 1/2
inline TabularMdp half_loop_mdp() {
  TabularMdpBuilder b(2, 2, 0);
  b.add(0, 1, 0, 0.5).add(0, 1, 1, 0.5);
  b.add(1, 1, 1, 1.0);
  return b.build();
}

// log P(Bin(n, p) <= k), exact summation in log space
inline double log_binom_cdf(std::uint64_t n, double p, std::uint64_t k) {
  double log_sum = -kInfValue;
  double log_pmf = static_cast<double>(n) * std::log1p(-p);  // i = 0
  for (std::uint64_t i = 0;; ++i) {
    const double hi = std::max(log_sum, log_pmf);
    log_sum = hi + std::log(std::exp(log_sum - hi) + std::exp(log_pmf - hi));
    if (i == k) break;
    log_pmf += std::log(static_cast<double>(n - i) / static_cast<double>(i + 1)) +
               std::log(p) - std::log1p(-p);
  }
  return log_sum;
}

}  // namespace testsupport
