#include "axlab/envs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "axlab/rng.hpp"

namespace axlab {

TabularMdp make_chain(int length) {
  if (length < 1) throw std::invalid_argument("make_chain: length must be >= 1");
  TabularMdpBuilder b(length, 2, 0);
  for (StateId s = 0; s < length; ++s) {
    const StateId next = std::min(s + 1, length - 1);
    b.add(s, 1, next, 1.0);
  }
  return b.build();
}

TabularMdp make_example_2l(int branching, int radius) {
  if (branching < 2) throw std::invalid_argument("make_example_2l: branching must be >= 2");
  if (radius < 2) throw std::invalid_argument("make_example_2l: radius must be >= 2");
  const int A = branching;
  const int L = radius;
  const int depth = 2 * (L - 1);

  // tree nodes stored level by level below the root
  std::int64_t tree_nodes = 0;
  std::int64_t level_size = 1;
  for (int d = 0; d <= depth; ++d) {
    tree_nodes += level_size;
    level_size *= A;
  }
  const std::int64_t total = 1 + L + tree_nodes;
  if (total > 2'000'000)
    throw std::invalid_argument("make_example_2l: parameter range produces too many states");

  const int S = static_cast<int>(total);
  TabularMdpBuilder b(S, A + 1, 0);

  // scatter states s1..sL, then the tree root
  const StateId root = L + 1;
  for (ActionId a = 1; a <= A; ++a) {
    std::vector<Transition> row;
    for (int i = 1; i <= L; ++i) row.push_back({i, 1.0 / L});
    b.set_row(0, a, row);
    for (int i = 1; i <= L; ++i) b.set_row(i, a, {{root, 1.0}});
  }

  // full A-ary tree: node v at level d has children right after the level
  StateId level_start = root;
  std::int64_t width = 1;
  for (int d = 0; d < depth; ++d) {
    const StateId next_start = level_start + static_cast<StateId>(width);
    for (std::int64_t i = 0; i < width; ++i) {
      const StateId v = level_start + static_cast<StateId>(i);
      for (ActionId a = 1; a <= A; ++a)
        b.set_row(v, a, {{next_start + static_cast<StateId>(i * A + (a - 1)), 1.0}});
    }
    level_start = next_start;
    width *= A;
  }
  // leaves self-loop under every non-RESET action
  for (std::int64_t i = 0; i < width; ++i) {
    const StateId leaf = level_start + static_cast<StateId>(i);
    for (ActionId a = 1; a <= A; ++a) b.set_row(leaf, a, {{leaf, 1.0}});
  }
  return b.build();
}

TabularMdp make_gridworld(int width, int height, double slip) {
  if (width < 1 || height < 1)
    throw std::invalid_argument("make_gridworld: dimensions must be >= 1");
  if (slip < 0.0 || slip > 1.0)
    throw std::invalid_argument("make_gridworld: slip must be in [0, 1]");

  const int S = width * height;
  TabularMdpBuilder b(S, 5, 0);
  const int dx[4] = {0, 0, -1, 1};  // up, down, left, right
  const int dy[4] = {-1, 1, 0, 0};

  auto cell = [&](int x, int y) { return y * width + x; };
  auto move = [&](int x, int y, int dir) {
    const int nx = x + dx[dir];
    const int ny = y + dy[dir];
    if (nx < 0 || nx >= width || ny < 0 || ny >= height) return cell(x, y);
    return cell(nx, ny);
  };

  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      for (int dir = 0; dir < 4; ++dir) {
        // lateral directions are the two perpendicular ones
        const int lat0 = (dir < 2) ? 2 : 0;
        std::vector<Transition> row;
        auto deposit = [&row](StateId next, double p) {
          for (auto& t : row)
            if (t.next == next) {
              t.prob += p;
              return;
            }
          row.push_back({next, p});
        };
        deposit(move(x, y, dir), 1.0 - slip);
        if (slip > 0.0) {
          deposit(move(x, y, lat0), slip / 2.0);
          deposit(move(x, y, lat0 + 1), slip / 2.0);
        }
        b.set_row(cell(x, y), 1 + dir, row);
      }
  return b.build();
}

TabularMdp make_random_mdp(int num_states, int num_actions, int out_degree,
                           std::uint64_t seed) {
  if (num_states < 1 || num_actions < 2)
    throw std::invalid_argument("make_random_mdp: need >= 1 state and >= 2 actions");
  if (out_degree < 1 || out_degree > num_states)
    throw std::invalid_argument("make_random_mdp: out_degree out of range");

  RngStream rng(seed ^ 0xd1b54a32d192ed03ull);
  TabularMdpBuilder b(num_states, num_actions, 0);
  std::vector<StateId> pool(num_states);
  for (StateId s = 0; s < num_states; ++s)
    for (ActionId a = 1; a < num_actions; ++a) {
      // distinct successors via a partial Fisher-Yates shuffle
      for (StateId i = 0; i < num_states; ++i) pool[i] = i;
      std::vector<Transition> row;
      double total = 0.0;
      for (int k = 0; k < out_degree; ++k) {
        const auto j = k + static_cast<int>(rng.next_below(num_states - k));
        std::swap(pool[k], pool[j]);
        // Dirichlet(1,...,1) weights from normalized Exp(1) draws
        double w = -std::log(1.0 - rng.next_double());
        if (w <= 0.0) w = 1e-300;
        row.push_back({pool[k], w});
        total += w;
      }
      std::sort(row.begin(), row.end(),
                [](const Transition& a_, const Transition& b_) { return a_.next < b_.next; });
      for (auto& t : row) t.prob /= total;
      // nudge the largest entry so the row sums to exactly 1
      double mass = 0.0;
      for (const auto& t : row) mass += t.prob;
      auto largest = std::max_element(
          row.begin(), row.end(),
          [](const Transition& a_, const Transition& b_) { return a_.prob < b_.prob; });
      largest->prob += 1.0 - mass;
      b.set_row(s, a, row);
    }
  return b.build();
}

}  // namespace axlab
