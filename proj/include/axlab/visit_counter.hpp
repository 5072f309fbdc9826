#pragma once

#include <cstdint>
#include <map>

#include "axlab/types.hpp"

namespace axlab {

// Monotone per-(s,a) and per-(s,a,s') sample counts. Ordered containers so
// every iteration over support is deterministic.
class VisitCounter {
 public:
  void record(StateId s, ActionId a, StateId next) {
    auto& e = entries_[{s, a}];
    ++e.n;
    ++e.next[next];
    ++total_;
  }

  std::uint64_t n(StateId s, ActionId a) const {
    auto it = entries_.find({s, a});
    return it == entries_.end() ? 0 : it->second.n;
  }

  std::uint64_t n_plus(StateId s, ActionId a) const {
    const std::uint64_t v = n(s, a);
    return v == 0 ? 1 : v;
  }

  std::uint64_t n(StateId s, ActionId a, StateId next) const {
    auto it = entries_.find({s, a});
    if (it == entries_.end()) return 0;
    auto jt = it->second.next.find(next);
    return jt == it->second.next.end() ? 0 : jt->second;
  }

  // observed successor counts of (s, a); empty when unvisited
  const std::map<StateId, std::uint64_t>& support(StateId s, ActionId a) const {
    static const std::map<StateId, std::uint64_t> kEmpty;
    auto it = entries_.find({s, a});
    return it == entries_.end() ? kEmpty : it->second.next;
  }

  std::uint64_t total() const { return total_; }

  void clear() {
    entries_.clear();
    total_ = 0;
  }

 private:
  struct Entry {
    std::uint64_t n = 0;
    std::map<StateId, std::uint64_t> next;
  };
  std::map<std::pair<StateId, ActionId>, Entry> entries_;
  std::uint64_t total_ = 0;
};

inline bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

}  // namespace axlab
