#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "axlab/evaluation.hpp"
#include "axlab/mdp.hpp"

namespace axlab {

struct OracleOptions {
  // g belongs to T_L(X) iff V*_{X,g}(s0) <= L + membership_tol
  double membership_tol = 1e-8;
  EvalOptions eval;
};

// Ascending layer sequence K*_1 = {s0}, K*_{j+1} = T_L(K*_j) up to its fixed
// point, the incrementally L-controllable set.
struct LayerDecomposition {
  double radius = 0.0;
  std::vector<std::set<StateId>> layers;
  std::set<StateId> fixed_point;
  int stabilized_at = 0;  // J: layers.size(), with T_L(layers back) = layers back
};

// T_L(X): goals whose optimal restricted hitting time from s0 is within L.
std::set<StateId> t_l_operator(const TabularMdp& mdp, const std::set<StateId>& x,
                               double radius, const OracleOptions& opts = {});

LayerDecomposition incrementally_controllable_set(const TabularMdp& mdp, double radius,
                                                  const OracleOptions& opts = {});

// Max number of controllable-set successors over (s, a) with s controllable.
int branching_factor(const TabularMdp& mdp, double radius, const OracleOptions& opts = {});

struct IdentifiabilityReport {
  bool identifiable = false;
  // first failing (layer index j, goal) when not identifiable
  std::optional<std::pair<int, StateId>> witness;
};

// Layers are exactly recoverable at accuracy eps iff every goal outside the
// next layer is more than L(1+eps) away from the previous one.
IdentifiabilityReport check_identifiability(const TabularMdp& mdp, double radius,
                                            double eps, const OracleOptions& opts = {});

enum class AxMode { kAxL, kAxStar, kAxPlus };

const char* ax_mode_name(AxMode mode);

struct AxGoalCheck {
  StateId goal = 0;
  double policy_value = 0.0;  // exact V^{pi_g}_g(s0)
  double bound = 0.0;
  bool pass = false;
};

struct AxReport {
  AxMode mode = AxMode::kAxL;
  bool controllable_set_covered = false;  // S_L^-> subset of K
  std::vector<AxGoalCheck> goals;         // one per goal in S_L^->
  bool pass = false;
};

// Exact verification of a learner's output against the requested guarantee.
// Requires a policy for every goal in K.
AxReport verify_ax(const TabularMdp& mdp, double radius, double eps,
                   const std::set<StateId>& k,
                   const std::map<StateId, PolicyTable>& policies, AxMode mode,
                   const OracleOptions& opts = {});

// layers, fixed point, branching factor and per-goal optimal values as JSON
std::string oracle_report_json(const TabularMdp& mdp, double radius,
                               std::optional<double> eps = std::nullopt,
                               const OracleOptions& opts = {});

}  // namespace axlab
