// Lifting finite edge-words through q, and membership in K.
//
// At a vertex v the letter a_i^{+-1} either moves along the tree edge to
// reduce(v a_i^{+-1}) (when i is in E_v) or runs once around the loop
// labelled a_i at v. A word therefore has exactly one lift from each start
// vertex.

#ifndef EARRING_LIFTING_HPP_
#define EARRING_LIFTING_HPP_

#include <span>
#include <vector>

#include "earring/graph.hpp"
#include "earring/words.hpp"

namespace earring {

  struct LiftStep {
    Letter   letter;
    StepKind kind;
    Vertex   at;  // position after the step
  };

  struct LiftTrace {
    Vertex                start;
    std::vector<LiftStep> steps;
    Vertex                endpoint;
  };

  LiftTrace lift_word(GraphOracle const&      g,
                      std::span<Letter const> w,
                      Vertex const&           start);

  // Same fold as lift_word without recording the steps.
  Vertex endpoint(GraphOracle const&      g,
                  std::span<Letter const> w,
                  Vertex const&           start);

  // The class of w lies in K iff its lift from the base point is a loop.
  bool in_K(GraphOracle const& g, std::span<Letter const> w);

  // The edge-word read off a trace: q applied to the lift.
  Word project(LiftTrace const& trace);

}  // namespace earring

#endif  // EARRING_LIFTING_HPP_
