// Conjugation witnesses showing that K contains no nontrivial normal
// subgroup, for finitely supported classes.
//
// For an essential word w = w_j the conjugator is the anchor word
// beta = anchor(j). The lift of beta from the base point runs along the
// zig-zag ray to anchor(j); the lift of w from there follows the Z_j path
// through the tree, so beta w beta^-1 lifts to a path that is not a loop.

#ifndef EARRING_COREFREE_HPP_
#define EARRING_COREFREE_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "earring/graph.hpp"
#include "earring/lifting.hpp"
#include "earring/words.hpp"

namespace earring {

  struct ConjugationCertificate {
    Word        w;
    Index       j;
    ReducedWord beta;
    Vertex      midpoint;  // lift position after beta
    Vertex      conjugate_endpoint;
    bool        verdict;  // conjugate_endpoint is not the base point
    std::optional<LiftTrace> trace;  // lift of beta w beta^-1, on request
  };

  // Throws std::invalid_argument if w reduces to the identity.
  ConjugationCertificate witness_conjugator(GraphOracle const&      g,
                                            std::span<Letter const> w,
                                            bool keep_trace = false);

  struct MidpointStep {
    Letter      letter;
    StepKind    kind;
    ReducedWord at;
    ReducedWord expected;  // z_path entry, or the previous vertex for loops
    bool        in_island;
  };

  struct MidpointReport {
    Index                     j;
    bool                      starts_at_anchor;
    std::vector<MidpointStep> steps;

    std::size_t agreeing() const noexcept;
    bool        stays_in_island() const noexcept;
    bool        ok() const noexcept;
  };

  // Re-lifts w from the certificate's midpoint and compares each step with
  // the Z_j path of island j.
  MidpointReport midpoint_structure_check(GraphOracle const&            g,
                                          ConjugationCertificate const& cert);

  struct ScanEntry {
    Index       j;
    Word        w;
    bool        w_in_K;
    bool        verdict;
    std::size_t beta_length;
    ReducedWord conjugate_endpoint;
  };

  struct ScanReport {
    std::uint64_t          max_weight;
    Index                  enumerated;
    Index                  trivial_skipped;
    std::vector<ScanEntry> entries;   // essential words, by index
    std::vector<Index>     failures;  // indices whose verdict was false

    std::size_t in_K_count() const noexcept;
    std::size_t out_of_K_count() const noexcept;
    bool        ok() const noexcept;
  };

  // Certifies every essential word of weight <= max_weight. threads = 0
  // picks the hardware concurrency; results are ordered by index either way.
  ScanReport core_free_scan(GraphOracle const& g,
                            std::uint64_t      max_weight,
                            unsigned           threads = 0);

}  // namespace earring

#endif  // EARRING_COREFREE_HPP_
