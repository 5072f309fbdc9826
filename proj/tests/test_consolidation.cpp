#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "axlab/consolidation.hpp"
#include "axlab/envs.hpp"
#include "axlab/oracle.hpp"
#include "test_support.hpp"

using namespace axlab;
using namespace testsupport;

TEST_CASE("degenerate target set: the initial state consolidates instantly") {
  TabularMdpBuilder b(1, 2, 0);
  b.add(0, 1, 0, 1.0);
  const TabularMdp mdp = b.build();
  EnvHandle env(mdp, 1'000'000);
  StreamSet streams = StreamSet::from_master_seed(1);
  std::map<StateId, PolicyTable> initial = {{0, PolicyTable::reset_everywhere()}};
  const ConsolidationResult res =
      policy_consolidation(env, 1.0, 0.5, 0.1, {0}, initial, {}, streams);
  REQUIRE(res.policies.count(0) == 1);
  REQUIRE(res.logs.size() == 1);
  CHECK(res.logs[0].kind == RoundKind::kSuccess);
  CHECK(res.logs[0].tau_hat == 0.0);
  CHECK(res.logs[0].algo == "pc");
}

TEST_CASE("consolidation rejects targets without initial policies") {
  const TabularMdp chain = make_chain(3);
  EnvHandle env(chain, 1'000'000);
  StreamSet streams = StreamSet::from_master_seed(2);
  std::map<StateId, PolicyTable> initial = {{0, PolicyTable::reset_everywhere()}};
  CHECK_THROWS_AS(policy_consolidation(env, 3.0, 0.3, 0.1, {0, 1}, initial, {}, streams),
                  std::invalid_argument);
}

TEST_CASE("multiplicative bound is strictly stronger than the additive one here") {
  // a goal at optimal distance 1 with a large radius
  const double radius = 10.0;
  const double eps = 0.3;
  const double v_star = 1.0;
  CHECK(v_star * (1.0 + eps) < v_star + radius * eps);
}

TEST_CASE("consolidated chain policies meet the multiplicative guarantee") {
  const TabularMdp chain = make_chain(3);
  const double radius = 3.0;
  const double eps = 0.3;
  const auto oracle = incrementally_controllable_set(chain, radius);
  std::map<StateId, PolicyTable> initial;
  for (StateId g : oracle.fixed_point)
    initial[g] = optimal_restricted_values(chain, oracle.fixed_point, g).second;

  int pass = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    EnvHandle env(chain, 100'000'000);
    StreamSet streams = StreamSet::from_master_seed(100 + seed);
    const ConsolidationResult res = policy_consolidation(
        env, radius, eps, 0.1, oracle.fixed_point, initial, {}, streams);

    // every goal consolidated exactly once, never re-evaluated
    std::map<StateId, int> successes;
    for (const auto& log : res.logs)
      if (log.kind == RoundKind::kSuccess) ++successes[*log.goal];
    CHECK(successes.size() == oracle.fixed_point.size());
    for (const auto& [g, n] : successes) CHECK(n == 1);

    const AxReport report =
        verify_ax(chain, radius, eps, oracle.fixed_point, res.policies, AxMode::kAxPlus);
    pass += report.pass ? 1 : 0;
  }
  CHECK(pass >= 4);
}

TEST_CASE("lae end to end: guarantee dominance chain on the chain environment") {
  const TabularMdp chain = make_chain(3);
  const double radius = 3.0;
  const double eps = 0.3;
  int plus_pass = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    EnvHandle env(chain, 100'000'000);
    StreamSet streams = StreamSet::from_master_seed(300 + seed);
    const LaeResult res = lae(env, radius, eps, 0.1, {}, streams, /*use_lasd_plus=*/true);
    const AxReport plus =
        verify_ax(chain, radius, eps, res.discovery.k, res.consolidation.policies,
                  AxMode::kAxPlus);
    if (!plus.pass) continue;
    ++plus_pass;
    // the multiplicative guarantee implies the additive and the radius ones
    CHECK(verify_ax(chain, radius, eps, res.discovery.k, res.consolidation.policies,
                    AxMode::kAxStar)
              .pass);
    CHECK(verify_ax(chain, radius, eps, res.discovery.k, res.consolidation.policies,
                    AxMode::kAxL)
              .pass);
  }
  CHECK(plus_pass >= 4);
}

TEST_CASE("lae on the separation environment collapses to the initial state") {
  const TabularMdp mdp = make_example_2l(2, 3);
  EnvHandle env(mdp, 100'000'000);
  StreamSet streams = StreamSet::from_master_seed(7);
  const LaeResult res = lae(env, 3.0, 0.5, 0.1, {}, streams, /*use_lasd_plus=*/true);
  CHECK(res.discovery.k == std::set<StateId>{0});
  REQUIRE(res.consolidation.policies.count(0) == 1);
}
