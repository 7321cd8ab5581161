// Lazy oracle for the graph H-hat.
//
// Nothing infinite is materialized. A reduced word v names a vertex of the
// Cayley tree of F_inf; the oracle decides whether v survives the pruning
// into the subtree Gamma*, which island Y_j (if any) it belongs to, and its
// tree-label set E_v. Every label outside E_v is a loop at v.
//
// Island j is built from the j-th enumerated word w_j grafted onto the
// zig-zag ray at the anchor word anchor(j):
//   Z_j      vertices visited by the path from anchor(j) along w_j
//   L_{u,s}  the a_s-line through u, for u in Z_j and s <= level(j)
//   Y_j      Z_j together with all of its lines

#ifndef EARRING_GRAPH_HPP_
#define EARRING_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "earring/words.hpp"

namespace earring {

  struct IslandData {
    Index       j;
    Word        word;    // w_j, possibly unreduced
    ReducedWord anchor;  // anchor(j)
    int         level;   // max(2, max_index(w_j))
    // reduce(anchor . x_1 ... x_i) for i = 0..|w_j|, with repetitions
    std::vector<ReducedWord> z_path;
    // distinct z_path entries, sorted by length
    std::vector<ReducedWord> z_set;
    // shortest vertex of Y_j; every vertex of Y_j has it as a prefix
    ReducedWord root;
  };

  // The finite set E_v of tree labels at a vertex.
  class LabelSet {
   public:
    LabelSet() = default;
    explicit LabelSet(std::vector<int> indices);

    bool contains(int i) const noexcept;
    int  max() const noexcept { return indices_.empty() ? 0 : indices_.back(); }
    std::vector<int> const& indices() const noexcept { return indices_; }
    std::string             to_string() const;

    friend bool operator==(LabelSet const&, LabelSet const&) = default;

   private:
    std::vector<int> indices_;  // sorted, distinct
  };

  class GraphOracle;

  // A reduced word certified to survive into Gamma*. Only GraphOracle can
  // construct one.
  class Vertex {
   public:
    ReducedWord const& word() const noexcept { return word_; }
    bool is_base() const noexcept { return word_.empty(); }

    friend bool operator==(Vertex const&, Vertex const&) = default;

   private:
    friend class GraphOracle;
    explicit Vertex(ReducedWord w) : word_(std::move(w)) {}
    ReducedWord word_;
  };

  enum class StepKind { tree, loop };

  char const* to_string(StepKind k) noexcept;

  struct Move {
    StepKind kind;
    Vertex   to;
  };

  // One vertex on which the two island-pruning rules disagree.
  // `final_agree` records whether the two complete pruning routes (each
  // followed by its own off-island pruning) still agree on survival.
  struct Disagreement {
    ReducedWord vertex;
    bool        prefix_rule_removes;
    bool        neighbour_rule_removes;
    bool        final_agree;
  };

  struct CrossCheckReport {
    Index                     j;
    int                       radius;
    std::size_t               length_cap;
    std::size_t               vertices_checked;
    std::size_t               prefix_rule_removed;
    std::size_t               neighbour_rule_removed;
    std::vector<Disagreement> disagreements;

    std::size_t unreconciled() const noexcept;
  };

  // v = reduce(u . a_s^r) for the returned r, if such an r exists.
  std::optional<std::int64_t> in_line(ReducedWord const& v,
                                      ReducedWord const& u,
                                      int                s);

  class GraphOracle {
   public:
    static constexpr std::size_t kDefaultCacheBytes = std::size_t(256) << 20;

    // cache_bytes caps the memory used by memoized island data and
    // verdicts; 0 disables memoization. Results never depend on it.
    explicit GraphOracle(std::size_t cache_bytes = kDefaultCacheBytes);

    // Reads EARRING_CACHE_BYTES (unset: kDefaultCacheBytes). Throws
    // std::invalid_argument when it is not a non-negative integer.
    static GraphOracle from_environment();

    GraphOracle(GraphOracle const&)            = delete;
    GraphOracle& operator=(GraphOracle const&) = delete;

    std::size_t cache_bytes() const noexcept { return cache_limit_; }

    std::shared_ptr<IslandData const> island_data(Index j) const;

    // Y_j membership tests.
    bool                       in_island(ReducedWord const& v, Index j) const;
    std::optional<Index>       island_of(ReducedWord const& v) const;
    bool                       survives(ReducedWord const& v) const;

    // Certifies survival; throws std::domain_error otherwise.
    Vertex vertex(ReducedWord v) const;
    Vertex base() const { return Vertex(ReducedWord()); }

    LabelSet e_set(Vertex const& v) const;
    Move     neighbor(Vertex const& v, Letter x) const;

    // Island pruning: removal of v because of island j, described two ways.
    // The prefix rule matches a decomposition v = z a_s^{+-r} a_k ... with z
    // the last Z_j-prefix of v. The neighbour rule removes every vertex one
    // edge away from Y_j through a label other than a_1, a_2, plus
    // everything behind it.
    bool prefix_rule_removes(ReducedWord const& v, Index j) const;
    bool neighbour_rule_removes(ReducedWord const& v, Index j) const;

    // Survival under the neighbour rule for every island, followed by
    // off-island pruning below vertices that lie in no Y_j.
    bool survives_neighbour_rule(ReducedWord const& v) const;

    // Exhaustive comparison of the two island-pruning rules on the
    // radius-neighbourhood of Y_j (lines truncated at |r| <= radius + 1).
    CrossCheckReport removal_cross_check(Index j, int radius) const;

    // Islands whose vertices could share the alternating prefix length of v.
    std::vector<Index> candidate_islands(ReducedWord const& v) const;

   private:
    struct Extent {
      Word          word;
      std::uint64_t anchor_length;
      std::uint64_t lo;  // every Y_j vertex has alternating prefix in [lo, hi]
      std::uint64_t hi;
    };

    std::shared_ptr<IslandData const> build_island(Index j) const;
    void               ensure_extents(std::uint64_t alt) const;
    std::vector<Index> candidates_for(std::size_t alt) const;

    std::vector<std::size_t> z_prefix_lengths(ReducedWord const& v,
                                              IslandData const&  isl) const;
    bool finite_valence(ReducedWord const& u) const;
    bool finite_valence_in(ReducedWord const& u, IslandData const& isl) const;
    std::vector<int> line_labels(ReducedWord const& v,
                                 IslandData const&  isl) const;
    bool             survives_uncached(ReducedWord const& v) const;
    LabelSet         e_set_uncached(ReducedWord const& v) const;

    bool charge(std::size_t bytes) const;

    std::size_t const cache_limit_;

    mutable std::shared_mutex extent_mutex_;
    mutable std::deque<Extent> extents_;  // extents_[j - 1]
    mutable std::uint64_t      extent_total_length_ = 0;

    mutable std::shared_mutex cache_mutex_;
    mutable std::size_t       cache_used_ = 0;
    mutable std::unordered_map<Index, std::shared_ptr<IslandData const>>
        islands_;
    mutable std::unordered_map<ReducedWord, bool>     survives_cache_;
    mutable std::unordered_map<ReducedWord, LabelSet> e_set_cache_;
  };

}  // namespace earring

#endif  // EARRING_GRAPH_HPP_
