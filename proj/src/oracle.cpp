#include "axlab/oracle.hpp"

#include <json.hpp>

namespace axlab {

std::set<StateId> t_l_operator(const TabularMdp& mdp, const std::set<StateId>& x,
                               double radius, const OracleOptions& opts) {
  if (radius < 1.0) throw std::invalid_argument("t_l_operator: radius must be >= 1");
  std::set<StateId> result;
  for (StateId g = 0; g < mdp.num_states(); ++g) {
    const auto [values, policy] = optimal_restricted_values(mdp, x, g, opts.eval);
    if (values.at(mdp.initial_state()) <= radius + opts.membership_tol) result.insert(g);
  }
  return result;
}

LayerDecomposition incrementally_controllable_set(const TabularMdp& mdp, double radius,
                                                  const OracleOptions& opts) {
  LayerDecomposition dec;
  dec.radius = radius;
  std::set<StateId> current = {mdp.initial_state()};
  dec.layers.push_back(current);
  for (int iter = 0; iter <= mdp.num_states(); ++iter) {
    std::set<StateId> next = t_l_operator(mdp, current, radius, opts);
    if (next == current) {
      dec.fixed_point = current;
      dec.stabilized_at = static_cast<int>(dec.layers.size());
      return dec;
    }
    dec.layers.push_back(next);
    current = std::move(next);
  }
  throw InternalError("incrementally_controllable_set: no stabilization after S iterations");
}

int branching_factor(const TabularMdp& mdp, double radius, const OracleOptions& opts) {
  const auto dec = incrementally_controllable_set(mdp, radius, opts);
  int best = 0;
  for (StateId s : dec.fixed_point)
    for (ActionId a = 0; a < mdp.num_actions(); ++a) {
      int count = 0;
      for (const auto& t : mdp.row(s, a))
        if (t.prob > 0.0 && dec.fixed_point.count(t.next)) ++count;
      best = std::max(best, count);
    }
  return best;
}

IdentifiabilityReport check_identifiability(const TabularMdp& mdp, double radius,
                                            double eps, const OracleOptions& opts) {
  if (eps <= 0.0 || eps > 1.0)
    throw std::invalid_argument("check_identifiability: eps must be in (0, 1]");
  const auto dec = incrementally_controllable_set(mdp, radius, opts);
  const double threshold = radius * (1.0 + eps);
  const int j_max = dec.stabilized_at + 1;  // one step past the fixed point

  IdentifiabilityReport report;
  for (int j = 2; j <= j_max; ++j) {
    const auto& prev = dec.layers[std::min<std::size_t>(j - 2, dec.layers.size() - 1)];
    const auto& layer = dec.layers[std::min<std::size_t>(j - 1, dec.layers.size() - 1)];
    for (StateId g = 0; g < mdp.num_states(); ++g) {
      if (layer.count(g)) continue;
      const auto [values, policy] = optimal_restricted_values(mdp, prev, g, opts.eval);
      if (!(values.at(mdp.initial_state()) > threshold + opts.membership_tol)) {
        report.identifiable = false;
        report.witness = {j, g};
        return report;
      }
    }
  }
  report.identifiable = true;
  return report;
}

const char* ax_mode_name(AxMode mode) {
  switch (mode) {
    case AxMode::kAxL: return "ax_l";
    case AxMode::kAxStar: return "ax_star";
    case AxMode::kAxPlus: return "ax_plus";
  }
  return "unknown";
}

AxReport verify_ax(const TabularMdp& mdp, double radius, double eps,
                   const std::set<StateId>& k,
                   const std::map<StateId, PolicyTable>& policies, AxMode mode,
                   const OracleOptions& opts) {
  for (StateId g : k)
    if (!policies.count(g))
      throw std::invalid_argument("verify_ax: goal " + std::to_string(g) +
                                  " in K has no policy");

  const auto dec = incrementally_controllable_set(mdp, radius, opts);
  AxReport report;
  report.mode = mode;
  report.controllable_set_covered = true;
  for (StateId g : dec.fixed_point)
    if (!k.count(g)) report.controllable_set_covered = false;

  bool all_goals_pass = true;
  for (StateId g : dec.fixed_point) {
    AxGoalCheck check;
    check.goal = g;
    switch (mode) {
      case AxMode::kAxL:
        check.bound = radius * (1.0 + eps);
        break;
      case AxMode::kAxStar:
      case AxMode::kAxPlus: {
        const auto [opt_values, opt_policy] =
            optimal_restricted_values(mdp, dec.fixed_point, g, opts.eval);
        const double v_star = opt_values.at(mdp.initial_state());
        check.bound = mode == AxMode::kAxStar ? v_star + radius * eps
                                              : v_star * (1.0 + eps);
        break;
      }
    }
    auto it = policies.find(g);
    if (it == policies.end()) {
      check.policy_value = kInfValue;
      check.pass = false;
    } else {
      check.policy_value =
          evaluate_policy(mdp, it->second, g, opts.eval).at(mdp.initial_state());
      check.pass = check.policy_value <= check.bound + opts.membership_tol;
    }
    all_goals_pass = all_goals_pass && check.pass;
    report.goals.push_back(check);
  }
  report.pass = report.controllable_set_covered && all_goals_pass;
  return report;
}

std::string oracle_report_json(const TabularMdp& mdp, double radius,
                               std::optional<double> eps, const OracleOptions& opts) {
  using nlohmann::json;
  const auto dec = incrementally_controllable_set(mdp, radius, opts);

  json doc;
  doc["radius"] = radius;
  doc["stabilized_at"] = dec.stabilized_at;
  json layers = json::array();
  for (const auto& layer : dec.layers)
    layers.push_back(std::vector<StateId>(layer.begin(), layer.end()));
  doc["layers"] = std::move(layers);
  doc["controllable_set"] =
      std::vector<StateId>(dec.fixed_point.begin(), dec.fixed_point.end());
  doc["branching_factor"] = branching_factor(mdp, radius, opts);

  json values = json::object();
  for (StateId g : dec.fixed_point) {
    const auto [vf, policy] = optimal_restricted_values(mdp, dec.fixed_point, g, opts.eval);
    const double v = vf.at(mdp.initial_state());
    values[std::to_string(g)] = v;
  }
  doc["optimal_value_from_s0"] = std::move(values);

  if (eps) {
    const auto id = check_identifiability(mdp, radius, *eps, opts);
    doc["eps"] = *eps;
    doc["identifiable"] = id.identifiable;
    if (id.witness) doc["identifiability_witness"] = {id.witness->first, id.witness->second};
  }
  return doc.dump(2);
}

}  // namespace axlab
