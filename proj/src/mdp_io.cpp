#include "axlab/mdp_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace axlab {

using nlohmann::json;

TabularMdp parse_mdp_json(const std::string& text) {
  json doc = json::parse(text);
  const int num_states = doc.at("num_states").get<int>();
  const int num_actions = doc.at("num_actions").get<int>();
  const StateId initial = doc.at("initial_state").get<StateId>();
  if (num_states <= 0 || num_actions <= 0)
    throw std::invalid_argument("mdp json: state and action counts must be positive");

  std::vector<std::vector<Transition>> rows(
      static_cast<std::size_t>(num_states) * num_actions);
  std::set<std::pair<StateId, ActionId>> seen;
  for (const auto& entry : doc.at("transitions")) {
    const StateId s = entry.at(0).get<StateId>();
    const ActionId a = entry.at(1).get<ActionId>();
    if (s < 0 || s >= num_states || a < 0 || a >= num_actions)
      throw std::invalid_argument("mdp json: (s, a) out of range");
    if (!seen.insert({s, a}).second)
      throw std::invalid_argument("mdp json: duplicate (s, a) entry");
    std::vector<Transition> row;
    for (const auto& t : entry.at(2))
      row.push_back({t.at(0).get<StateId>(), t.at(1).get<double>()});
    rows[static_cast<std::size_t>(s) * num_actions + a] = std::move(row);
  }
  if (seen.size() != rows.size())
    throw std::invalid_argument("mdp json: missing (s, a) entries");
  return TabularMdp(num_states, num_actions, initial, std::move(rows));
}

TabularMdp load_mdp_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("mdp json: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_mdp_json(buf.str());
}

std::string mdp_to_json(const TabularMdp& mdp) {
  json transitions = json::array();
  for (StateId s = 0; s < mdp.num_states(); ++s)
    for (ActionId a = 0; a < mdp.num_actions(); ++a) {
      json row = json::array();
      for (const auto& t : mdp.row(s, a)) row.push_back({t.next, t.prob});
      transitions.push_back({s, a, row});
    }
  json doc;
  doc["num_states"] = mdp.num_states();
  doc["num_actions"] = mdp.num_actions();
  doc["initial_state"] = mdp.initial_state();
  doc["transitions"] = std::move(transitions);
  return doc.dump();
}

void save_mdp_json(const TabularMdp& mdp, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("mdp json: cannot write " + path);
  out << mdp_to_json(mdp);
}

}  // namespace axlab
