#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "axlab/envs.hpp"
#include "axlab/mdp_io.hpp"
#include "axlab/oracle.hpp"
#include "test_support.hpp"

using namespace axlab;
using namespace testsupport;

TEST_CASE("chain constructor") {
  CHECK(make_chain(1).num_states() == 1);
  const TabularMdp chain = make_chain(4);
  CHECK(chain.num_states() == 4);
  CHECK(chain.prob(0, 1, 1) == 1.0);
  CHECK(chain.prob(3, 1, 3) == 1.0);  // last state self-loops
  // S_L^-> for L = n-1 is the whole chain
  const auto dec = incrementally_controllable_set(chain, 3.0);
  CHECK(dec.fixed_point == std::set<StateId>{0, 1, 2, 3});
  CHECK(branching_factor(chain, 3.0) == 1);
}

TEST_CASE("example_2l constructor: shape and RESET rows") {
  const TabularMdp mdp = make_example_2l(2, 3);
  CHECK(mdp.num_states() == 35);  // 1 + L + (2^5 - 1)
  CHECK(mdp.num_actions() == 3);  // RESET + branching
  for (StateId s = 0; s < mdp.num_states(); ++s)
    CHECK(mdp.prob(s, kResetAction, 0) == 1.0);
  // scatter rows are uniform over s1..sL
  for (int i = 1; i <= 3; ++i) CHECK(mdp.prob(0, 1, i) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(make_example_2l(1, 3), std::invalid_argument);
  CHECK_THROWS_AS(make_example_2l(2, 1), std::invalid_argument);
}

TEST_CASE("example_2l separation reproduces exactly for (2,3) and (3,2)") {
  {
    const TabularMdp mdp = make_example_2l(2, 3);
    const double radius = 3.0 * 1.5;  // L(1+eps), eps = 0.5
    const auto dec = incrementally_controllable_set(mdp, radius);
    CHECK(dec.fixed_point == std::set<StateId>{0});
    CHECK(branching_factor(mdp, radius) == 1);
    const auto wide = incrementally_controllable_set(mdp, 6.0);
    CHECK(wide.fixed_point.size() >= 16);  // >= A^{2(L-1)}
    CHECK(wide.fixed_point.size() == 35);
  }
  {
    const TabularMdp mdp = make_example_2l(3, 2);
    const double radius = 2.0 * 1.4;  // eps = 0.4
    const auto dec = incrementally_controllable_set(mdp, radius);
    CHECK(dec.fixed_point == std::set<StateId>{0});
    CHECK(branching_factor(mdp, radius) == 1);
    const auto wide = incrementally_controllable_set(mdp, 4.0);
    CHECK(wide.fixed_point.size() >= 9);
  }
}

TEST_CASE("gridworld: slip-free distances and row stochasticity") {
  const TabularMdp grid = make_gridworld(3, 3, 0.0);
  const std::set<StateId> all = {0, 1, 2, 3, 4, 5, 6, 7, 8};
  for (int y = 0; y < 3; ++y)
    for (int x = 0; x < 3; ++x) {
      const StateId g = y * 3 + x;
      const auto [v, pi] = optimal_restricted_values(grid, all, g);
      CHECK(v.at(0) == doctest::Approx(x + y));  // Manhattan distance from the corner
    }

  const TabularMdp slippery = make_gridworld(3, 3, 0.25);
  for (StateId s = 0; s < slippery.num_states(); ++s)
    for (ActionId a = 0; a < slippery.num_actions(); ++a) {
      double mass = 0.0;
      for (const auto& t : slippery.row(s, a)) mass += t.prob;
      CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("gridworld controllable set cross-checked by policy enumeration") {
  // 2x2 keeps the full restricted-policy enumeration tractable
  const TabularMdp grid = make_gridworld(2, 2, 0.2);
  for (double radius : {1.0, 2.0, 4.0}) {
    const auto layers = brute_layers(grid, radius);
    const auto dec = incrementally_controllable_set(grid, radius);
    CHECK(layers.back() == dec.fixed_point);
  }
  // 3x3: the oracle set is exactly the fixed point of the operator
  const TabularMdp big = make_gridworld(3, 3, 0.1);
  const auto dec = incrementally_controllable_set(big, 6.0);
  CHECK(t_l_operator(big, dec.fixed_point, 6.0) == dec.fixed_point);
  for (StateId g : dec.fixed_point) {
    const auto [v, pi] = optimal_restricted_values(big, dec.fixed_point, g);
    CHECK(v.at(0) <= 6.0 + 1e-8);
  }
}

TEST_CASE("random mdp: determinism, stochasticity, out-degree") {
  const TabularMdp a = make_random_mdp(12, 3, 2, 99);
  const TabularMdp b = make_random_mdp(12, 3, 2, 99);
  CHECK(mdp_to_json(a) == mdp_to_json(b));  // identical seed, identical bytes
  const TabularMdp c = make_random_mdp(12, 3, 2, 100);
  CHECK(mdp_to_json(a) != mdp_to_json(c));

  for (StateId s = 0; s < a.num_states(); ++s)
    for (ActionId act = 1; act < a.num_actions(); ++act) {
      CHECK(a.row(s, act).size() <= 2);
      double mass = 0.0;
      for (const auto& t : a.row(s, act)) {
        CHECK(t.prob >= 0.0);
        mass += t.prob;
      }
      CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    }
}
