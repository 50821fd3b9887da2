#pragma once

// Full analysis of one system: connectedness, cyclic detection and a verdict
// per requested mode. Cyclic systems are decided by the closed-form criterion
// and, when small enough, also by the LP; other systems by the LP only.

#include <optional>
#include <span>
#include <vector>

#include "cbd/cyclic.hpp"
#include "cbd/decision.hpp"

namespace cbd {

struct ModeAnalysis {
  Mode mode = Mode::cbd;
  bool contextual = false;
  /// Closed-form verdict (cyclic systems only). In traditional mode an
  /// inconsistently connected system is contextual outright.
  std::optional<bool> formula;
  /// LP verdict when the system fits under the cell limit.
  std::optional<Verdict> lp;
};

struct Analysis {
  std::size_t cells = 0;
  ConnectednessReport connectedness;
  std::optional<CyclicArrangement> arrangement;
  std::optional<CyclicVerdict> cyclic;
  std::vector<ModeAnalysis> modes;
};

/// Throws SizeLimitError for non-cyclic systems above the cell limit.
Analysis analyze(const System& system, std::span<const Mode> modes, const DecisionOptions& options = {});

}  // namespace cbd
