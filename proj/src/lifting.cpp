#include "earring/lifting.hpp"

namespace earring {

  LiftTrace lift_word(GraphOracle const&      g,
                      std::span<Letter const> w,
                      Vertex const&           start) {
    LiftTrace trace{start, {}, start};
    trace.steps.reserve(w.size());
    for (auto x : w) {
      auto move = g.neighbor(trace.endpoint, x);
      trace.steps.push_back(LiftStep{x, move.kind, move.to});
      trace.endpoint = std::move(move.to);
    }
    return trace;
  }

  Vertex endpoint(GraphOracle const&      g,
                  std::span<Letter const> w,
                  Vertex const&           start) {
    Vertex at = start;
    for (auto x : w) {
      at = g.neighbor(at, x).to;
    }
    return at;
  }

  bool in_K(GraphOracle const& g, std::span<Letter const> w) {
    return endpoint(g, w, g.base()).is_base();
  }

  Word project(LiftTrace const& trace) {
    Word w;
    w.reserve(trace.steps.size());
    for (auto const& step : trace.steps) {
      w.push_back(step.letter);
    }
    return w;
  }

}  // namespace earring
