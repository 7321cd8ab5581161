#include "earring/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace earring {

  ////////////////////////////////////////////////////////////////////////
  // Small helpers
  ////////////////////////////////////////////////////////////////////////

  LabelSet::LabelSet(std::vector<int> indices) : indices_(std::move(indices)) {
    std::sort(indices_.begin(), indices_.end());
    indices_.erase(std::unique(indices_.begin(), indices_.end()),
                   indices_.end());
  }

  bool LabelSet::contains(int i) const noexcept {
    return std::binary_search(indices_.begin(), indices_.end(), i);
  }

  std::string LabelSet::to_string() const {
    std::string out = "{";
    for (std::size_t k = 0; k < indices_.size(); ++k) {
      if (k > 0) {
        out += ',';
      }
      out += std::to_string(indices_[k]);
    }
    return out + "}";
  }

  char const* to_string(StepKind k) noexcept {
    return k == StepKind::tree ? "tree" : "loop";
  }

  std::size_t CrossCheckReport::unreconciled() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(disagreements.begin(),
                      disagreements.end(),
                      [](Disagreement const& d) { return !d.final_agree; }));
  }

  std::optional<std::int64_t> in_line(ReducedWord const& v,
                                      ReducedWord const& u,
                                      int                s) {
    // reduce(u^-1 v) is inv(u[k..]) v[k..] where k is the common prefix
    // length; it must be a pure power of a_s.
    auto const   lv = v.letters();
    auto const   lu = u.letters();
    std::size_t  k  = static_cast<std::size_t>(
        std::mismatch(lv.begin(), lv.end(), lu.begin(), lu.end()).first
        - lv.begin());
    std::size_t const len = (lu.size() - k) + (lv.size() - k);
    if (len == 0) {
      return 0;
    }
    Letter const first = k < lu.size() ? lu.back().inverse() : lv[k];
    if (first.index() != s) {
      return std::nullopt;
    }
    for (std::size_t i = k; i < lu.size(); ++i) {
      if (lu[i].inverse() != first) {
        return std::nullopt;
      }
    }
    for (std::size_t i = k; i < lv.size(); ++i) {
      if (lv[i] != first) {
        return std::nullopt;
      }
    }
    return first.sign() * static_cast<std::int64_t>(len);
  }

  namespace {
    std::size_t approx_bytes(ReducedWord const& w) {
      return w.size() * sizeof(Letter) + 64;
    }

    bool y_member(ReducedWord const&              v,
                  std::vector<ReducedWord> const& z_set,
                  int                             level) {
      if (std::binary_search(z_set.begin(), z_set.end(), v)) {
        return true;
      }
      for (auto const& u : z_set) {
        for (int s = 1; s <= level; ++s) {
          if (in_line(v, u, s)) {
            return true;
          }
        }
      }
      return false;
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Construction and caches
  ////////////////////////////////////////////////////////////////////////

  GraphOracle::GraphOracle(std::size_t cache_bytes) : cache_limit_(cache_bytes) {}

  GraphOracle GraphOracle::from_environment() {
    char const* env = std::getenv("EARRING_CACHE_BYTES");
    if (env == nullptr || *env == '\0') {
      return GraphOracle(kDefaultCacheBytes);
    }
    std::string const text(env);
    std::size_t       pos = 0;
    unsigned long long value = 0;
    try {
      value = std::stoull(text, &pos);
    } catch (std::exception const&) {
      pos = 0;
    }
    if (pos == 0 || pos != text.size() || text.front() == '-') {
      throw std::invalid_argument("EARRING_CACHE_BYTES must be a byte count, got '"
                                  + text + "'");
    }
    return GraphOracle(static_cast<std::size_t>(value));
  }

  bool GraphOracle::charge(std::size_t bytes) const {
    if (cache_used_ + bytes > cache_limit_) {
      return false;
    }
    cache_used_ += bytes;
    return true;
  }

  void GraphOracle::ensure_extents(std::uint64_t alt) const {
    {
      std::shared_lock lock(extent_mutex_);
      if (!extents_.empty() && extents_.back().lo > alt + 2) {
        return;
      }
    }
    std::unique_lock lock(extent_mutex_);
    while (extents_.empty() || extents_.back().lo <= alt + 2) {
      Index const   j   = extents_.size() + 1;
      Word          w   = enumerate(j);
      std::uint64_t len = 2 * extent_total_length_ + 3 * j + w.size();
      extent_total_length_ += w.size();
      std::uint64_t lo = len - w.size() - 1;
      std::uint64_t hi = len + w.size() + 1;
      extents_.push_back(Extent{std::move(w), len, lo, hi});
    }
  }

  std::vector<Index> GraphOracle::candidates_for(std::size_t alt) const {
    ensure_extents(alt);
    std::shared_lock   lock(extent_mutex_);
    std::vector<Index> result;
    // lo and hi are both strictly increasing in j.
    auto it = std::partition_point(
        extents_.begin(), extents_.end(), [&](Extent const& e) {
          return e.hi + 2 < alt;
        });
    for (; it != extents_.end() && it->lo <= alt + 2; ++it) {
      result.push_back(static_cast<Index>(it - extents_.begin()) + 1);
    }
    return result;
  }

  std::vector<Index> GraphOracle::candidate_islands(ReducedWord const& v) const {
    return candidates_for(v.alternating_prefix_length());
  }

  std::shared_ptr<IslandData const> GraphOracle::build_island(Index j) const {
    auto isl    = std::make_shared<IslandData>();
    isl->j      = j;
    isl->word   = enumerate(j);
    isl->anchor = anchor(j);
    isl->level  = std::max<int>(2, max_index(isl->word));

    ReducedWord cur = isl->anchor;
    isl->z_path.reserve(isl->word.size() + 1);
    isl->z_path.push_back(cur);
    for (auto x : isl->word) {
      cur.multiply_in_place(x);
      isl->z_path.push_back(cur);
    }
    isl->z_set = isl->z_path;
    std::sort(isl->z_set.begin(), isl->z_set.end());
    isl->z_set.erase(std::unique(isl->z_set.begin(), isl->z_set.end()),
                     isl->z_set.end());

    ReducedWord root = isl->z_set.front();
    while (!root.empty()
           && y_member(root.prefix(root.size() - 1), isl->z_set, isl->level)) {
      root = root.prefix(root.size() - 1);
    }
    isl->root = std::move(root);
    return isl;
  }

  std::shared_ptr<IslandData const> GraphOracle::island_data(Index j) const {
    if (j == 0) {
      throw std::invalid_argument("island index must be >= 1");
    }
    if (cache_limit_ == 0) {
      return build_island(j);
    }
    {
      std::shared_lock lock(cache_mutex_);
      if (auto it = islands_.find(j); it != islands_.end()) {
        return it->second;
      }
    }
    auto isl = build_island(j);
    std::size_t bytes = 128;
    for (auto const& z : isl->z_path) {
      bytes += 2 * approx_bytes(z);
    }
    std::unique_lock lock(cache_mutex_);
    if (auto it = islands_.find(j); it != islands_.end()) {
      return it->second;
    }
    if (charge(bytes)) {
      islands_.emplace(j, isl);
    }
    return isl;
  }

  ////////////////////////////////////////////////////////////////////////
  // Island membership
  ////////////////////////////////////////////////////////////////////////

  bool GraphOracle::in_island(ReducedWord const& v, Index j) const {
    auto const alt = v.alternating_prefix_length();
    ensure_extents(alt);
    {
      std::shared_lock lock(extent_mutex_);
      if (j <= extents_.size()) {
        auto const& e = extents_[j - 1];
        if (alt + 2 < e.lo || alt > e.hi + 2) {
          return false;
        }
      }
    }
    auto isl = island_data(j);
    return y_member(v, isl->z_set, isl->level);
  }

  std::optional<Index> GraphOracle::island_of(ReducedWord const& v) const {
    for (Index j : candidate_islands(v)) {
      auto isl = island_data(j);
      if (y_member(v, isl->z_set, isl->level)) {
        return j;
      }
    }
    return std::nullopt;
  }

  std::vector<std::size_t>
  GraphOracle::z_prefix_lengths(ReducedWord const& v,
                                IslandData const&  isl) const {
    std::vector<std::size_t> result;
    for (auto const& z : isl.z_set) {
      if (v.has_prefix(z)) {
        result.push_back(z.size());
      }
    }
    return result;
  }

  std::vector<int> GraphOracle::line_labels(ReducedWord const& v,
                                            IslandData const&  isl) const {
    std::vector<int> result;
    for (int s = 1; s <= isl.level; ++s) {
      for (auto const& u : isl.z_set) {
        if (in_line(v, u, s)) {
          result.push_back(s);
          break;
        }
      }
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Pruning
  ////////////////////////////////////////////////////////////////////////

  bool GraphOracle::prefix_rule_removes(ReducedWord const& v, Index j) const {
    auto const isl = island_data(j);
    auto const T   = z_prefix_lengths(v, *isl);
    auto in_T      = [&](std::size_t t) {
      return std::binary_search(T.begin(), T.end(), t);
    };
    for (std::size_t t : T) {
      if (t >= v.size() || in_T(t + 1)) {
        continue;
      }
      Letter const x = v[t];
      if (x.index() > isl->level) {
        return true;  // r = 0, k > n
      }
      std::size_t r = 1;
      while (t + r < v.size() && v[t + r] == x) {
        ++r;
      }
      if (t + r < v.size()) {
        int const k = v[t + r].index();
        if (k != 1 && k != 2 && k != x.index()) {
          return true;  // r > 0, k not in {1, 2, s}
        }
      }
    }
    return false;
  }

  // u has finite valence after island pruning iff its high-label children are cut
  // by some island: u lies in Z_j, or u = z a_s^{+-r} with z the last
  // Z_j-prefix of u and s <= level(j).
  bool GraphOracle::finite_valence_in(ReducedWord const& u,
                                      IslandData const&  isl) const {
    auto const T = z_prefix_lengths(u, isl);
    if (!T.empty() && T.back() == u.size()) {
      return true;
    }
    for (std::size_t t : T) {
      if (std::binary_search(T.begin(), T.end(), t + 1)) {
        continue;
      }
      Letter const x = u[t];
      if (x.index() > isl.level) {
        continue;
      }
      bool pure = true;
      for (std::size_t i = t; i < u.size() && pure; ++i) {
        pure = (u[i] == x);
      }
      if (pure) {
        return true;
      }
    }
    return false;
  }

  bool GraphOracle::finite_valence(ReducedWord const& u) const {
    for (Index j : candidate_islands(u)) {
      if (finite_valence_in(u, *island_data(j))) {
        return true;
      }
    }
    return false;
  }

  bool GraphOracle::survives_uncached(ReducedWord const& v) const {
    for (Index j : candidate_islands(v)) {
      if (prefix_rule_removes(v, j)) {
        return false;
      }
    }
    // Off-island pruning: below an infinite-valence vertex only a_1, a_2
    // edges remain.
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i].index() >= 3 && !finite_valence(v.prefix(i))) {
        return false;
      }
    }
    return true;
  }

  bool GraphOracle::survives(ReducedWord const& v) const {
    if (cache_limit_ == 0) {
      return survives_uncached(v);
    }
    {
      std::shared_lock lock(cache_mutex_);
      if (auto it = survives_cache_.find(v); it != survives_cache_.end()) {
        return it->second;
      }
    }
    bool const verdict = survives_uncached(v);
    std::unique_lock lock(cache_mutex_);
    if (!survives_cache_.contains(v) && charge(approx_bytes(v))) {
      survives_cache_.emplace(v, verdict);
    }
    return verdict;
  }

  bool GraphOracle::neighbour_rule_removes(ReducedWord const& v, Index j) const {
    auto const isl = island_data(j);
    auto const& root = isl->root;
    auto const  lv   = v.letters();
    auto const  lr   = root.letters();
    std::size_t const k = static_cast<std::size_t>(
        std::mismatch(lv.begin(), lv.end(), lr.begin(), lr.end()).first
        - lv.begin());

    // Geodesic from v to root: up to the meet, then down.
    std::vector<ReducedWord> path;
    for (std::size_t len = v.size();; --len) {
      path.push_back(v.prefix(len));
      if (len == k) {
        break;
      }
    }
    for (std::size_t len = k + 1; len <= root.size(); ++len) {
      path.push_back(root.prefix(len));
    }
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (!y_member(path[i], isl->z_set, isl->level)) {
        continue;
      }
      if (i == 0) {
        return false;
      }
      auto const& outside = path[i - 1];
      auto const& inside  = path[i];
      Letter const label
          = outside.size() > inside.size() ? outside.back() : inside.back();
      return label.index() >= 3;
    }
    return false;
  }

  bool GraphOracle::survives_neighbour_rule(ReducedWord const& v) const {
    for (Index j : candidate_islands(v)) {
      if (neighbour_rule_removes(v, j)) {
        return false;
      }
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i].index() >= 3 && !island_of(v.prefix(i))) {
        return false;
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Vertices and labels
  ////////////////////////////////////////////////////////////////////////

  Vertex GraphOracle::vertex(ReducedWord v) const {
    if (!survives(v)) {
      throw std::domain_error("word is not a vertex of Gamma*: "
                              + format_word(v));
    }
    return Vertex(std::move(v));
  }

  LabelSet GraphOracle::e_set_uncached(ReducedWord const& v) const {
    auto const j = island_of(v);
    if (!j) {
      return LabelSet({1, 2});
    }
    auto const isl = island_data(*j);
    if (std::binary_search(isl->z_set.begin(), isl->z_set.end(), v)) {
      std::vector<int> all;
      for (int i = 1; i <= isl->level; ++i) {
        all.push_back(i);
      }
      return LabelSet(std::move(all));
    }
    auto labels = line_labels(v, *isl);
    labels.push_back(1);
    labels.push_back(2);
    return LabelSet(std::move(labels));
  }

  LabelSet GraphOracle::e_set(Vertex const& v) const {
    if (cache_limit_ == 0) {
      return e_set_uncached(v.word());
    }
    {
      std::shared_lock lock(cache_mutex_);
      if (auto it = e_set_cache_.find(v.word()); it != e_set_cache_.end()) {
        return it->second;
      }
    }
    LabelSet result = e_set_uncached(v.word());
    std::unique_lock lock(cache_mutex_);
    if (!e_set_cache_.contains(v.word())
        && charge(approx_bytes(v.word()) + 4 * result.indices().size())) {
      e_set_cache_.emplace(v.word(), result);
    }
    return result;
  }

  Move GraphOracle::neighbor(Vertex const& v, Letter x) const {
    if (e_set(v).contains(x.index())) {
      auto next = v.word().times(x);
      if (!survives(next)) {
        throw std::logic_error("tree edge " + std::to_string(x.value())
                               + " at " + format_word(v.word())
                               + " leaves Gamma*");
      }
      return Move{StepKind::tree, Vertex(std::move(next))};
    }
    return Move{StepKind::loop, v};
  }

  ////////////////////////////////////////////////////////////////////////
  // Cross-check of the two island-pruning rules
  ////////////////////////////////////////////////////////////////////////

  CrossCheckReport GraphOracle::removal_cross_check(Index j, int radius) const {
    if (j == 0 || radius < 1) {
      throw std::invalid_argument("crosscheck needs j >= 1 and radius >= 1");
    }
    auto const isl    = island_data(j);
    int const  extent = radius + 1;
    int const  labels = isl->level + 2;

    std::unordered_set<ReducedWord> seen;
    std::vector<ReducedWord>        frontier;
    auto add = [&](ReducedWord w) {
      if (seen.insert(w).second) {
        frontier.push_back(std::move(w));
      }
    };
    add(isl->root);
    for (auto const& u : isl->z_set) {
      add(u);
      for (int s = 1; s <= isl->level; ++s) {
        for (int sign : {+1, -1}) {
          ReducedWord w = u;
          for (int r = 0; r < extent; ++r) {
            w.multiply_in_place(Letter::generator(s, sign));
            add(w);
          }
        }
      }
    }

    std::size_t const cap = isl->anchor.size() + isl->word.size()
                            + static_cast<std::size_t>(extent + radius);
    for (int d = 0; d < radius; ++d) {
      std::vector<ReducedWord> next;
      next.swap(frontier);
      for (auto const& w : next) {
        for (int i = 1; i <= labels; ++i) {
          for (int sign : {+1, -1}) {
            auto n = w.times(Letter::generator(i, sign));
            if (n.size() <= cap) {
              add(std::move(n));
            }
          }
        }
      }
    }

    CrossCheckReport report{j, radius, cap, 0, 0, 0, {}};
    std::vector<ReducedWord> ordered(seen.begin(), seen.end());
    std::sort(ordered.begin(), ordered.end());
    for (auto const& v : ordered) {
      bool const f = prefix_rule_removes(v, j);
      bool const p = neighbour_rule_removes(v, j);
      ++report.vertices_checked;
      report.prefix_rule_removed += f;
      report.neighbour_rule_removed += p;
      if (f != p) {
        bool const agree = survives(v) == survives_neighbour_rule(v);
        report.disagreements.push_back(Disagreement{v, f, p, agree});
      }
    }
    return report;
  }

}  // namespace earring
