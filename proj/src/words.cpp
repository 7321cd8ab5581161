#include "earring/words.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <stdexcept>

namespace earring {

  ////////////////////////////////////////////////////////////////////////
  // ReducedWord
  ////////////////////////////////////////////////////////////////////////

  ReducedWord ReducedWord::from_reduced(Word letters) {
    if (!is_reduced(letters)) {
      throw std::invalid_argument("word is not reduced: "
                                  + format_word(letters));
    }
    return ReducedWord(std::move(letters));
  }

  ReducedWord ReducedWord::prefix(std::size_t n) const {
    n = std::min(n, letters_.size());
    return ReducedWord(Word(letters_.begin(), letters_.begin() + n));
  }

  bool ReducedWord::has_prefix(ReducedWord const& p) const noexcept {
    return p.size() <= size()
           && std::equal(p.letters_.begin(), p.letters_.end(), letters_.begin());
  }

  ReducedWord ReducedWord::times(Letter x) const {
    ReducedWord result(*this);
    result.multiply_in_place(x);
    return result;
  }

  void ReducedWord::multiply_in_place(Letter x) {
    if (!letters_.empty() && letters_.back() == x.inverse()) {
      letters_.pop_back();
    } else {
      letters_.push_back(x);
    }
  }

  std::size_t ReducedWord::alternating_prefix_length() const noexcept {
    std::size_t i = 0;
    while (i < letters_.size() && letters_[i] == (i % 2 == 0 ? a1 : a2)) {
      ++i;
    }
    return i;
  }

  ////////////////////////////////////////////////////////////////////////
  // Basic operations
  ////////////////////////////////////////////////////////////////////////

  ReducedWord reduce(std::span<Letter const> w) {
    Word stack;
    stack.reserve(w.size());
    for (auto x : w) {
      if (!stack.empty() && stack.back() == x.inverse()) {
        stack.pop_back();
      } else {
        stack.push_back(x);
      }
    }
    return ReducedWord(std::move(stack));
  }

  bool is_reduced(std::span<Letter const> w) noexcept {
    return std::adjacent_find(w.begin(), w.end(), [](Letter x, Letter y) {
             return y == x.inverse();
           })
           == w.end();
  }

  Word concat(std::span<Letter const> u, std::span<Letter const> v) {
    Word result(u.begin(), u.end());
    result.insert(result.end(), v.begin(), v.end());
    return result;
  }

  Word invert(std::span<Letter const> w) {
    Word result;
    result.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      result.push_back(it->inverse());
    }
    return result;
  }

  std::int32_t max_index(std::span<Letter const> w) noexcept {
    std::int32_t m = 0;
    for (auto x : w) {
      m = std::max(m, x.index());
    }
    return m;
  }

  std::uint64_t weight(std::span<Letter const> w) noexcept {
    return w.size() + static_cast<std::uint64_t>(max_index(w));
  }

  ////////////////////////////////////////////////////////////////////////
  // Canonical enumeration
  ////////////////////////////////////////////////////////////////////////

  namespace {
    // Counts are kept in 128 bits and saturate at kCap. Any saturated count
    // exceeds every representable Index, which is all the ranking needs.
    using Count                 = unsigned __int128;
    constexpr Count kCap        = Count(1) << 100;
    constexpr Count kIndexLimit = std::numeric_limits<Index>::max();

    Count pow_sat(std::uint64_t base, std::uint64_t exp) {
      Count result = 1;
      for (std::uint64_t i = 0; i < exp; ++i) {
        if (base == 0) {
          return 0;
        }
        result *= base;
        if (result >= kCap) {
          return kCap;
        }
      }
      return result;
    }

    // Words of length `len` over a_1..a_m (both signs), containing at least
    // one a_m^{+-1} if `need_top`.
    Count completions(std::uint64_t len, std::uint64_t m, bool need_top) {
      Count all = pow_sat(2 * m, len);
      if (!need_top) {
        return all;
      }
      if (all == kCap) {
        return kCap;
      }
      return all - pow_sat(2 * m - 2, len);
    }

    // Words with |w| = len and max index exactly m.
    Count group_count(std::uint64_t len, std::uint64_t m) {
      return completions(len, m, true);
    }

    // Walks the (weight, length) groups in enumeration order and calls
    // f(weight, length, count); stops when f returns false.
    template <typename F>
    void for_each_group(F&& f) {
      for (std::uint64_t w = 2;; ++w) {
        for (std::uint64_t len = 1; len < w; ++len) {
          if (!f(w, len, group_count(len, w - len))) {
            return;
          }
        }
      }
    }

    Word unrank(std::uint64_t len, std::uint64_t m, Count r) {
      Word result;
      result.reserve(len);
      bool has_top = false;
      for (std::uint64_t pos = 0; pos < len; ++pos) {
        for (std::uint64_t key = 0; key < 2 * m; ++key) {
          bool top = has_top || key >= 2 * m - 2;
          Count c  = completions(len - pos - 1, m, !top);
          if (r < c) {
            auto idx = static_cast<std::int32_t>(key / 2 + 1);
            result.push_back(Letter::generator(idx, key % 2 == 0 ? +1 : -1));
            has_top = top;
            break;
          }
          r -= c;
        }
      }
      return result;
    }
  }  // namespace

  Word enumerate(Index j) {
    if (j == 0) {
      throw std::invalid_argument("enumeration index must be >= 1");
    }
    Count rem = j - 1;
    Word  result;
    for_each_group([&](std::uint64_t w, std::uint64_t len, Count c) {
      if (rem < c) {
        result = unrank(len, w - len, rem);
        return false;
      }
      rem -= c;
      return true;
    });
    return result;
  }

  Index index_of(std::span<Letter const> w) {
    if (w.empty()) {
      throw std::invalid_argument("the empty word has no enumeration index");
    }
    std::uint64_t const target_w   = weight(w);
    std::uint64_t const target_len = w.size();
    std::uint64_t const m          = static_cast<std::uint64_t>(max_index(w));

    Count rank = 0;
    for_each_group([&](std::uint64_t wt, std::uint64_t len, Count c) {
      if (wt == target_w && len == target_len) {
        return false;
      }
      rank += c;
      if (rank > kIndexLimit) {
        throw std::overflow_error("enumeration index exceeds 64 bits");
      }
      return true;
    });

    bool has_top = false;
    for (std::size_t pos = 0; pos < w.size(); ++pos) {
      std::uint64_t const key = w[pos].order_key();
      for (std::uint64_t k = 0; k < key; ++k) {
        bool top = has_top || k >= 2 * m - 2;
        rank += completions(target_len - pos - 1, m, !top);
        if (rank > kIndexLimit) {
          throw std::overflow_error("enumeration index exceeds 64 bits");
        }
      }
      has_top = has_top || key >= 2 * m - 2;
    }
    if (rank + 1 > kIndexLimit) {
      throw std::overflow_error("enumeration index exceeds 64 bits");
    }
    return static_cast<Index>(rank + 1);
  }

  Index count_up_to_weight(std::uint64_t max_weight) {
    Count total = 0;
    if (max_weight < 2) {
      return 0;
    }
    for_each_group([&](std::uint64_t w, std::uint64_t, Count c) {
      if (w > max_weight) {
        return false;
      }
      total += c;
      if (total > kIndexLimit) {
        throw std::overflow_error("word count exceeds 64 bits");
      }
      return true;
    });
    return static_cast<Index>(total);
  }

  std::size_t enumerated_length(Index j) {
    if (j == 0) {
      throw std::invalid_argument("enumeration index must be >= 1");
    }
    Count       rem    = j - 1;
    std::size_t result = 0;
    for_each_group([&](std::uint64_t, std::uint64_t len, Count c) {
      if (rem < c) {
        result = len;
        return false;
      }
      rem -= c;
      return true;
    });
    return result;
  }

  std::uint64_t cumulative_length(Index k) {
    Count rem   = k;
    Count total = 0;
    if (k == 0) {
      return 0;
    }
    for_each_group([&](std::uint64_t, std::uint64_t len, Count c) {
      Count take = rem < c ? rem : c;
      total += take * len;
      rem -= take;
      if (total > kIndexLimit) {
        throw std::overflow_error("cumulative length exceeds 64 bits");
      }
      return rem > 0;
    });
    return static_cast<std::uint64_t>(total);
  }

  std::uint64_t anchor_length(Index j) {
    if (j == 0) {
      throw std::invalid_argument("anchor index must be >= 1");
    }
    Count len = Count(2) * cumulative_length(j - 1) + Count(3) * j
                + enumerated_length(j);
    if (len > kIndexLimit) {
      throw std::overflow_error("anchor length exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(len);
  }

  ReducedWord zigzag(std::size_t n) {
    Word w;
    w.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      w.push_back(i % 2 == 0 ? a1 : a2);
    }
    return ReducedWord::from_reduced(std::move(w));
  }

  ReducedWord anchor(Index j) {
    constexpr std::uint64_t kMaxMaterialized = std::uint64_t(1) << 28;
    auto const              len              = anchor_length(j);
    if (len > kMaxMaterialized) {
      throw std::length_error("anchor word too long to materialize");
    }
    return zigzag(static_cast<std::size_t>(len));
  }

  ////////////////////////////////////////////////////////////////////////
  // Text format
  ////////////////////////////////////////////////////////////////////////

  Word parse_word(std::string_view text) {
    auto is_sep = [](char c) {
      return c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r';
    };
    std::vector<std::string_view> tokens;
    std::size_t                   i = 0;
    while (i < text.size()) {
      while (i < text.size() && is_sep(text[i])) {
        ++i;
      }
      std::size_t start = i;
      while (i < text.size() && !is_sep(text[i])) {
        ++i;
      }
      if (i > start) {
        tokens.push_back(text.substr(start, i - start));
      }
    }
    if (tokens.empty()) {
      throw std::invalid_argument("empty word text (use `e` for the identity)");
    }
    if (tokens.size() == 1 && tokens[0] == "e") {
      return {};
    }
    Word result;
    result.reserve(tokens.size());
    for (auto tok : tokens) {
      std::int32_t value = 0;
      auto const*  first = tok.data();
      auto const*  last  = tok.data() + tok.size();
      if (!tok.empty() && tok[0] == '+') {
        ++first;
      }
      auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc() || ptr != last || first == last) {
        throw std::invalid_argument("malformed letter `" + std::string(tok)
                                    + "`");
      }
      if (value == 0) {
        throw std::invalid_argument("letter index 0 is invalid");
      }
      result.emplace_back(value);
    }
    return result;
  }

  std::string format_word(std::span<Letter const> w) {
    if (w.empty()) {
      return "e";
    }
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i > 0) {
        out += ' ';
      }
      out += std::to_string(w[i].value());
    }
    return out;
  }

  std::string pretty_word(std::span<Letter const> w) {
    if (w.empty()) {
      return "1";
    }
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i > 0) {
        out += ' ';
      }
      out += "a" + std::to_string(w[i].index());
      if (w[i].sign() < 0) {
        out += "^-1";
      }
    }
    return out;
  }

}  // namespace earring
