#include "cbd/analysis.hpp"

namespace cbd {

Analysis analyze(const System& system, std::span<const Mode> modes, const DecisionOptions& options) {
  Analysis out;
  out.cells = system.cell_count();
  out.connectedness = connectedness_report(system);
  out.arrangement = detect_cyclic(system);
  if (out.arrangement) out.cyclic = cyclic_contextuality(system, *out.arrangement);

  const bool fits = out.cells <= options.max_cells;
  if (!fits && !out.cyclic) {
    throw SizeLimitError("system has N = " + std::to_string(out.cells) + " measurement cells, over the limit of " +
                             std::to_string(options.max_cells),
                         out.cells, options.max_cells);
  }

  for (const Mode mode : modes) {
    ModeAnalysis m;
    m.mode = mode;
    if (out.cyclic) {
      m.formula = mode == Mode::cbd ? out.cyclic->contextual
                                    : (!out.connectedness.consistently_connected || out.cyclic->contextual);
    }
    if (fits) m.lp = decide(system, mode, options);
    m.contextual = m.lp ? m.lp->contextual : *m.formula;
    out.modes.push_back(std::move(m));
  }
  return out;
}

}  // namespace cbd
