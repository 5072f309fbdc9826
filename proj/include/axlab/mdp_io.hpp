#pragma once

#include <string>

#include "axlab/mdp.hpp"

namespace axlab {

// File format:
//   {"num_states": n, "num_actions": m, "initial_state": 0,
//    "transitions": [[s, a, [[s', p], ...]], ...]}
// Every (s, a) pair must appear exactly once; all TabularMdp invariants
// (stochasticity, RESET convention) are enforced on load.
TabularMdp load_mdp_json(const std::string& path);
TabularMdp parse_mdp_json(const std::string& text);

std::string mdp_to_json(const TabularMdp& mdp);
void save_mdp_json(const TabularMdp& mdp, const std::string& path);

}  // namespace axlab
