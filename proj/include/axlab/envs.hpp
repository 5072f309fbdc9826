#pragma once

#include <cstdint>

#include "axlab/mdp.hpp"

namespace axlab {

// Deterministic line s0 -> s1 -> ... -> s_{n-1}: one advance action (the last
// state self-loops) plus RESET.
TabularMdp make_chain(int length);

// Separation construction: s0 scatters uniformly over {s1..sL} under every
// non-RESET action, each s_i leads to the root of a full A-ary tree of depth
// 2(L-1). A is the branching factor (non-RESET actions); the MDP has A+1
// actions in total. At radius L(1+eps) with eps < (L-1)/L only s0 is
// incrementally controllable, while at radius 2L the whole tree is.
TabularMdp make_example_2l(int branching, int radius);

// w x h grid, s0 at the (0,0) corner, 4 move actions plus RESET. A move goes
// in the intended direction with probability 1-slip and slips to the two
// lateral neighbours with slip/2 each; bumping a wall stays in place.
TabularMdp make_gridworld(int width, int height, double slip);

// Random sparse kernel: every non-RESET action gets out_degree distinct
// successors with Dirichlet(1) weights. Identical seeds give identical MDPs.
TabularMdp make_random_mdp(int num_states, int num_actions, int out_degree,
                           std::uint64_t seed);

}  // namespace axlab
