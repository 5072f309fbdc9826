#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "axlab/envs.hpp"
#include "axlab/evaluation.hpp"
#include "test_support.hpp"

using namespace axlab;
using namespace testsupport;

namespace {

PolicyTable always_advance(int n) {
  PolicyTable pi;
  for (StateId s = 0; s < n; ++s) pi.set_action(s, 1);
  return pi;
}

}  // namespace

TEST_CASE("evaluate_policy on the deterministic chain") {
  const TabularMdp chain = make_chain(3);
  const GoalValueFn v = evaluate_policy(chain, always_advance(3), 2);
  CHECK(v.at(0) == doctest::Approx(2.0));
  CHECK(v.at(1) == doctest::Approx(1.0));
  CHECK(v.at(2) == 0.0);
}

TEST_CASE("evaluate_policy: goal equal to the start state") {
  const TabularMdp chain = make_chain(3);
  const GoalValueFn v = evaluate_policy(chain, PolicyTable::reset_everywhere(), 0);
  CHECK(v.at(0) == 0.0);
}

TEST_CASE("evaluate_policy: geometric half-loop has value 2") {
  // V(s0) = sum_k k (1/2)^k = 2, the geometric-series value
  const TabularMdp mdp = half_loop_mdp();
  PolicyTable pi;
  pi.set_action(0, 1);
  const GoalValueFn v = evaluate_policy(mdp, pi, 1);
  CHECK(v.at(0) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("evaluate_policy: unreachable goals get the infinity sentinel") {
  const TabularMdp chain = make_chain(3);
  const GoalValueFn v = evaluate_policy(chain, PolicyTable::reset_everywhere(), 2);
  CHECK(v.at(0) == kInfValue);
  CHECK(v.at(1) == kInfValue);
  CHECK(v.at(2) == 0.0);
}

TEST_CASE("evaluate_policy: positive escape mass to a dead end is infinite") {
  // s0 -a1-> {goal w.p. 1/2, trap w.p. 1/2}, trap self-loops: hitting happens
  // with probability 1/2 only, so the expectation is infinite
  TabularMdpBuilder b(3, 2, 0);
  b.add(0, 1, 2, 0.5).add(0, 1, 1, 0.5);
  b.add(1, 1, 1, 1.0);
  b.add(2, 1, 2, 1.0);
  const TabularMdp mdp = b.build();
  PolicyTable pi;
  pi.set_action(0, 1);
  pi.set_action(1, 1);
  CHECK(evaluate_policy(mdp, pi, 2).at(0) == kInfValue);
}

TEST_CASE("optimal_restricted_values: empty restriction leaves only RESET") {
  const TabularMdp chain = make_chain(3);
  const auto [v, pi] = optimal_restricted_values(chain, {}, 0);
  CHECK(v.at(0) == 0.0);
  CHECK(v.at(1) == doctest::Approx(1.0));
  CHECK(v.at(2) == doctest::Approx(1.0));
  CHECK(pi.action(1) == kResetAction);
}

TEST_CASE("optimal_restricted_values matches brute-force policy enumeration") {
  const TabularMdp chain = make_chain(3);
  const std::set<StateId> x = {0, 1};
  const auto [v, pi] = optimal_restricted_values(chain, x, 2);
  const double brute = brute_optimal_value_s0(chain, x, 2);
  CHECK(brute == doctest::Approx(2.0));
  CHECK(v.at(0) == doctest::Approx(brute));

  const TabularMdp grid = make_gridworld(2, 2, 0.3);
  for (StateId g = 0; g < grid.num_states(); ++g) {
    const std::set<StateId> sets[] = {{}, {0}, {0, 1}, {0, 1, 2}, {0, 1, 2, 3}};
    for (const auto& set_x : sets) {
      const auto [vals, p] = optimal_restricted_values(grid, set_x, g);
      const double expected = brute_optimal_value_s0(grid, set_x, g);
      if (expected == kInfValue)
        CHECK(vals.at(0) == kInfValue);
      else
        CHECK(vals.at(0) == doctest::Approx(expected).epsilon(1e-8));
    }
  }
}

TEST_CASE("restriction monotonicity on random MDPs, all subset pairs") {
  // 5 states so every ordered pair X subseteq X' is enumerable
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const TabularMdp mdp = make_random_mdp(5, 3, 2, seed);
    for (StateId g = 0; g < 5; ++g) {
      std::vector<std::vector<double>> value_of_mask(32);
      for (int mask = 0; mask < 32; ++mask) {
        std::set<StateId> x;
        for (int s = 0; s < 5; ++s)
          if (mask & (1 << s)) x.insert(s);
        value_of_mask[mask] = optimal_restricted_values(mdp, x, g).first.values;
      }
      for (int lo = 0; lo < 32; ++lo)
        for (int hi = 0; hi < 32; ++hi) {
          if ((lo & hi) != lo) continue;  // lo subset of hi
          for (int s = 0; s < 5; ++s)
            CHECK(value_of_mask[hi][s] <= value_of_mask[lo][s] + 1e-8);
        }
    }
  }
}

TEST_CASE("bellman residual of returned optimal values is within tolerance") {
  const TabularMdp grid = make_gridworld(3, 3, 0.1);
  const std::set<StateId> x = {0, 1, 2, 3, 4, 5, 6, 7, 8};
  for (StateId g : {2, 4, 8}) {
    const auto [v, pi] = optimal_restricted_values(grid, x, g);
    for (StateId s = 0; s < grid.num_states(); ++s) {
      if (s == g || v.at(s) == kInfValue) continue;
      double best = kInfValue;
      for (ActionId a = 0; a < grid.num_actions(); ++a) {
        double q = 1.0;
        bool finite = true;
        for (const auto& t : grid.row(s, a)) {
          if (v.at(t.next) == kInfValue && t.prob > 0.0) finite = false;
          else q += t.prob * v.at(t.next);
        }
        if (finite) best = std::min(best, q);
      }
      CHECK(std::abs(best - v.at(s)) <= 1e-7);
    }
  }
}

TEST_CASE("evaluate_policy agrees with Monte-Carlo estimates within 3 SE") {
  const TabularMdp grid = make_gridworld(3, 3, 0.1);
  const std::set<StateId> all = {0, 1, 2, 3, 4, 5, 6, 7, 8};
  const auto [v, pi] = optimal_restricted_values(grid, all, 8);
  RngStream rng(2024);
  const int n = 10000;
  std::vector<double> lengths;
  lengths.reserve(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto traj = rollout(grid, pi, 8, 1000000, rng);
    lengths.push_back(static_cast<double>(traj.step_count()));
    total += lengths.back();
  }
  const double mean = total / n;
  double var = 0.0;
  for (double len : lengths) var += (len - mean) * (len - mean);
  var /= (n - 1);
  const double se = std::sqrt(var / n);
  CHECK(std::abs(mean - v.at(0)) <= 3.0 * se);
}

TEST_CASE("argmin ties break toward the lowest action index") {
  // two actions with identical deterministic rows
  TabularMdpBuilder b(2, 3, 0);
  b.add(0, 1, 1, 1.0).add(0, 2, 1, 1.0);
  b.add(1, 1, 1, 1.0).add(1, 2, 1, 1.0);
  const TabularMdp mdp = b.build();
  const auto [v, pi] = optimal_restricted_values(mdp, {0}, 1);
  CHECK(pi.action(0) == 1);
}
