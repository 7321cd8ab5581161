// Test-side helpers: word literals, samplers, and reference implementations
// written directly from the definitions (no shared code with the library
// beyond the Letter / ReducedWord types).

#ifndef EARRING_TESTS_SUPPORT_HPP_
#define EARRING_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "earring/graph.hpp"
#include "earring/lifting.hpp"
#include "earring/words.hpp"

namespace earring::test {

  inline Word W(std::initializer_list<int> xs) {
    Word w;
    for (int x : xs) {
      w.emplace_back(x);
    }
    return w;
  }

  inline ReducedWord R(std::initializer_list<int> xs) {
    return reduce(W(xs));
  }

  inline std::vector<int> values(std::span<Letter const> w) {
    std::vector<int> out;
    for (auto x : w) {
      out.push_back(x.value());
    }
    return out;
  }

  inline std::vector<int> values(ReducedWord const& w) {
    return values(w.letters());
  }

  // Repeatedly delete the leftmost cancelling pair.
  inline Word naive_reduce(Word w) {
    for (bool again = true; again;) {
      again = false;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i].value() == -w[i + 1].value()) {
          w.erase(w.begin() + i, w.begin() + i + 2);
          again = true;
          break;
        }
      }
    }
    return w;
  }

  inline Word random_word(std::mt19937_64& rng,
                          std::size_t      max_length,
                          int              max_index) {
    std::uniform_int_distribution<std::size_t> len(0, max_length);
    std::uniform_int_distribution<int>         idx(1, max_index);
    std::bernoulli_distribution                neg(0.5);
    Word                                       w(len(rng), a1);
    for (auto& x : w) {
      x = Letter::generator(idx(rng), neg(rng) ? -1 : 1);
    }
    return w;
  }

  // All words of the given length over a_1^{+-1}, ..., a_m^{+-1} that use
  // a_m, in the letter order a_1 < a_1^-1 < a_2 < ...
  inline std::vector<Word> words_with_max_index(std::size_t length, int m) {
    std::vector<Word> out;
    std::vector<int>  digits(length, 0);  // 0 .. 2m-1
    for (;;) {
      Word w;
      int  top = 0;
      for (int d : digits) {
        int i = d / 2 + 1;
        top   = std::max(top, i);
        w.push_back(Letter::generator(i, d % 2 == 0 ? 1 : -1));
      }
      if (top == m) {
        out.push_back(std::move(w));
      }
      std::size_t k = length;
      while (k > 0 && digits[k - 1] == 2 * m - 1) {
        digits[--k] = 0;
      }
      if (k == 0) {
        break;
      }
      ++digits[k - 1];
    }
    return out;
  }

  // w_1, w_2, ... for all weights up to max_weight, straight from the
  // ordering rule: weight, then length, then lexicographic.
  inline std::vector<Word> brute_enumeration(std::uint64_t max_weight) {
    std::vector<Word> out;
    for (std::uint64_t weight = 2; weight <= max_weight; ++weight) {
      for (std::uint64_t length = 1; length < weight; ++length) {
        auto block = words_with_max_index(length, int(weight - length));
        out.insert(out.end(), block.begin(), block.end());
      }
    }
    return out;
  }

  // Island j from the definitions: Z_j as reduced prefixes of anchor . w_j,
  // Y_j membership via reduce(u^-1 v) being a power of a single a_s.
  struct RefIsland {
    Index                    j;
    int                      level;
    std::vector<ReducedWord> z;

    explicit RefIsland(Index jj) : j(jj) {
      Word w = enumerate(j);
      level  = 2;
      for (auto x : w) {
        level = std::max(level, int(x.index()));
      }
      Word path = anchor(j).word();
      z.push_back(reduce(path));
      for (auto x : w) {
        path.push_back(x);
        z.push_back(reduce(path));
      }
    }

    bool in_z(ReducedWord const& v) const {
      return std::find(z.begin(), z.end(), v) != z.end();
    }

    bool in_y(ReducedWord const& v) const {
      if (in_z(v)) {
        return true;
      }
      for (auto const& u : z) {
        Word d = naive_reduce(concat(invert(u.letters()), v.letters()));
        if (d.empty()) {
          return true;
        }
        if (d.front().index() > level) {
          continue;
        }
        if (std::all_of(d.begin(), d.end(), [&](Letter x) { return x == d.front(); })) {
          return true;
        }
      }
      return false;
    }
  };

  class RefGraph {
   public:
    RefIsland const& island(Index j) {
      auto it = islands_.find(j);
      if (it == islands_.end()) {
        it = islands_.emplace(j, RefIsland(j)).first;
      }
      return it->second;
    }

    // Every Y_j vertex has length >= |anchor(j)| - 2|w_j| - 1, and that bound
    // increases with j.
    std::optional<Index> island_of(ReducedWord const& v) {
      for (Index j = 1;; ++j) {
        auto bound = anchor_length(j) - 2 * enumerated_length(j) - 1;
        if (bound > v.size()) {
          return std::nullopt;
        }
        if (island(j).in_y(v)) {
          return j;
        }
      }
    }

    // Pruning stated on prefixes: a step along a label of index >= 3 must
    // stay inside a single island, otherwise island pruning (leaving an
    // island) or off-island pruning cuts the vertex and everything behind it.
    bool survives(ReducedWord const& v) {
      for (std::size_t t = 0; t < v.size(); ++t) {
        if (v[t].index() < 3) {
          continue;
        }
        auto here = island_of(v.prefix(t));
        if (!here || !island(*here).in_y(v.prefix(t + 1))) {
          return false;
        }
      }
      return true;
    }

   private:
    std::map<Index, RefIsland> islands_;
  };

  // Random walk through Gamma* along tree edges, labels up to max_index.
  inline ReducedWord random_vertex(GraphOracle const& g,
                                   std::mt19937_64&   rng,
                                   std::size_t        steps,
                                   int                max_index) {
    std::uniform_int_distribution<int> idx(1, max_index);
    std::bernoulli_distribution        neg(0.5);
    Vertex                             at = g.base();
    for (std::size_t i = 0; i < steps; ++i) {
      at = g.neighbor(at, Letter::generator(idx(rng), neg(rng) ? -1 : 1)).to;
    }
    return at.word();
  }

  // Z_j, plus the lines through it for |r| <= reach, then every reduced
  // word within `radius` further letters (labels up to level + 2).
  inline std::vector<ReducedWord> island_neighbourhood(GraphOracle const& g,
                                                       Index              j,
                                                       int                reach,
                                                       int                radius) {
    auto                  isl = g.island_data(j);
    std::set<ReducedWord> seen;
    for (auto const& u : isl->z_set) {
      for (int s = 1; s <= isl->level; ++s) {
        for (int sign : {1, -1}) {
          ReducedWord v = u;
          for (int r = 0; r <= reach; ++r) {
            seen.insert(v);
            v = v.times(Letter::generator(s, sign));
          }
        }
      }
    }
    std::vector<ReducedWord> frontier(seen.begin(), seen.end());
    for (int step = 0; step < radius; ++step) {
      std::vector<ReducedWord> next;
      for (auto const& v : frontier) {
        for (int i = 1; i <= isl->level + 2; ++i) {
          for (int sign : {1, -1}) {
            auto n = v.times(Letter::generator(i, sign));
            if (seen.insert(n).second) {
              next.push_back(n);
            }
          }
        }
      }
      frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
  }

}  // namespace earring::test

#endif  // EARRING_TESTS_SUPPORT_HPP_
