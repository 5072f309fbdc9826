#include "axlab/visgo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace axlab {

namespace {
constexpr double kC1 = 3.0;
constexpr double kC2 = 512.0;
}

VisgoResult visgo(const std::set<StateId>& x, StateId goal, double eps_vi,
                  const VisitCounter& counter, double delta, double radius,
                  int num_actions, StateId initial_state, const VisgoConfig& cfg) {
  if (eps_vi <= 0.0) throw std::invalid_argument("visgo: eps_vi must be positive");
  if (delta <= 0.0 || delta >= 1.0) throw std::invalid_argument("visgo: delta in (0,1)");
  if (x.count(goal)) throw std::invalid_argument("visgo: goal must lie outside X");

  VisgoResult res;
  res.goal = goal;
  res.x = x;

  const double size_x = static_cast<double>(std::max<std::size_t>(x.size(), 1));
  const double two_l = 2.0 * radius;

  std::map<StateId, double> v_prev;
  for (StateId s : x) v_prev[s] = 0.0;
  double outside_prev = 0.0;

  auto value_of = [&](StateId s) {
    if (s == goal) return 0.0;
    auto it = v_prev.find(s);
    return it == v_prev.end() ? outside_prev : it->second;
  };
  auto sup_norm = [&]() {
    double m = outside_prev;
    for (const auto& [s, val] : v_prev) m = std::max(m, val);
    return m;
  };

  std::map<StateId, double> v_next;
  std::map<StateId, std::vector<double>> q;
  double diff = 0.0;

  for (std::uint64_t i = 0;; ++i) {
    if (i > 0 && diff <= eps_vi) break;
    if (sup_norm() > two_l) {
      res.diverged = true;
      res.policy = PolicyTable::reset_everywhere();
      res.sweeps = i;
      return res;
    }
    if (i >= cfg.max_sweeps)
      throw InternalError("visgo: sweep cap exceeded before convergence");

    diff = 0.0;
    for (StateId s : x) {
      auto& qs = q[s];
      qs.assign(num_actions, 0.0);
      double best = kInfValue;
      for (ActionId a = 0; a < num_actions; ++a) {
        const std::uint64_t n = counter.n(s, a);
        const double n_plus = static_cast<double>(counter.n_plus(s, a));
        const double iota = std::log(2.0 * size_x * num_actions * n_plus / delta);

        double mean = 0.0, second = 0.0;
        for (const auto& [next, cnt] : counter.support(s, a)) {
          const double p = static_cast<double>(cnt) / n_plus;
          const double val = value_of(next);
          mean += p * val;
          second += p * val * val;
        }
        const double var = std::max(0.0, second - mean * mean);
        const double bonus = std::max(kC1 * std::sqrt(var * iota / n_plus),
                                      kC2 * radius * iota / n_plus);
        // goal-skewed kernel: the extra 1/(n+1) mass sits on the goal, value 0
        const double skewed = mean * (static_cast<double>(n) / (n + 1.0));
        qs[a] = std::max(0.0, 1.0 + skewed - bonus);
        if (qs[a] < best) best = qs[a];
      }
      v_next[s] = best;
    }
    const double outside_next = 1.0 + value_of(initial_state);

    for (StateId s : x) {
      const double prev = v_prev[s];
      if (v_next[s] < prev - 1e-9)
        throw InternalError("visgo: iterate decreased, monotone update violated");
      diff = std::max(diff, std::abs(v_next[s] - prev));
    }
    diff = std::max(diff, std::abs(outside_next - outside_prev));

    v_prev = v_next;
    outside_prev = outside_next;
    res.sweeps = i + 1;
    if (cfg.trace) std::fprintf(stderr, "visgo sweep %llu delta %.3e\n",
                                static_cast<unsigned long long>(i + 1), diff);
  }

  // the loop-top check cannot see a final sub-eps_vi step past the bound
  if (sup_norm() > two_l) {
    res.diverged = true;
    res.policy = PolicyTable::reset_everywhere();
    return res;
  }

  res.v_in_x = v_prev;
  res.q_in_x = q;
  res.outside_value = outside_prev;
  std::map<StateId, ActionId> actions;
  for (StateId s : x) {
    const auto& qs = q[s];
    ActionId best_a = 0;
    for (ActionId a = 1; a < num_actions; ++a)
      if (qs[a] < qs[best_a]) best_a = a;
    actions[s] = best_a;
  }
  res.policy = PolicyTable(std::move(actions), x);
  return res;
}

}  // namespace axlab
