#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace axlab {

using StateId = int;
using ActionId = int;

// Action 0 is RESET in every environment.
inline constexpr ActionId kResetAction = 0;

inline constexpr double kInfValue = std::numeric_limits<double>::infinity();

// Raised when a run exceeds its global environment-step budget.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a navigation rollout toward a supposedly reachable state blows
// through the safety cap: a caller contract violation, not a recoverable event.
struct NavigationCapExceeded : std::runtime_error {
  explicit NavigationCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Internal-consistency failure (e.g. value iteration hit its sweep cap).
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace axlab
