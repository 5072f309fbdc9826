#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace axlab {

// Deterministic random stream. Draws are produced by hand so identical seeds
// give identical sequences on every platform and standard library.
class RngStream {
 public:
  RngStream() : engine_(0) {}
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // uniform in [0, 1)
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // uniform in {0, ..., n-1}, n >= 1 (rejection-free modulo bias is fine at
  // the magnitudes used here, but reject anyway to keep draws exact)
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return v % n;
  }

 private:
  std::mt19937_64 engine_;
};

namespace detail {
inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}
}  // namespace detail

// Splits one master seed into independent named streams so a change in one
// subroutine's draw pattern does not perturb the others.
struct StreamSet {
  RngStream navigation;
  RngStream evaluation;
  RngStream explore;
  RngStream rtest;

  static StreamSet from_master_seed(std::uint64_t master) {
    StreamSet s;
    s.navigation = stream(master, "navigation");
    s.evaluation = stream(master, "evaluation");
    s.explore = stream(master, "explore");
    s.rtest = stream(master, "rtest");
    return s;
  }

  static RngStream stream(std::uint64_t master, std::string_view name) {
    return RngStream(master * 0x9e3779b97f4a7c15ull ^ detail::fnv1a(name));
  }
};

}  // namespace axlab
