// Free-group words over the countable alphabet {a_1, a_2, ...}.
//
// A Letter is a signed generator index: +k is a_k, -k is a_k^-1. Words are
// flat letter sequences and may be unreduced; ReducedWord carries the
// no-adjacent-cancellation invariant and is what the graph layer uses as a
// vertex name.

#ifndef EARRING_WORDS_HPP_
#define EARRING_WORDS_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace earring {

  // Position in the canonical enumeration w_1, w_2, ... (1-based).
  using Index = std::uint64_t;

  class Letter {
   public:
    constexpr explicit Letter(std::int32_t signed_index) : value_(signed_index) {
      if (signed_index == 0) {
        throw std::invalid_argument("letter index must be non-zero");
      }
    }

    static constexpr Letter generator(std::int32_t index, int sign = +1) {
      if (index < 1) {
        throw std::invalid_argument("generator index must be >= 1");
      }
      return Letter(sign < 0 ? -index : index);
    }

    constexpr std::int32_t index() const noexcept {
      return value_ < 0 ? -value_ : value_;
    }
    constexpr int sign() const noexcept { return value_ < 0 ? -1 : +1; }
    constexpr std::int32_t value() const noexcept { return value_; }
    constexpr Letter inverse() const noexcept { return Letter(-value_, 0); }

    // Position in the order a_1 < a_1^-1 < a_2 < a_2^-1 < ...
    constexpr std::uint64_t order_key() const noexcept {
      return 2 * (static_cast<std::uint64_t>(index()) - 1) + (value_ < 0 ? 1 : 0);
    }

    friend constexpr bool operator==(Letter, Letter) = default;
    friend constexpr auto operator<=>(Letter a, Letter b) noexcept {
      return a.order_key() <=> b.order_key();
    }

   private:
    constexpr Letter(std::int32_t v, int) noexcept : value_(v) {}
    std::int32_t value_;
  };

  inline constexpr Letter a1 = Letter(1);
  inline constexpr Letter a2 = Letter(2);

  using Word = std::vector<Letter>;

  class ReducedWord {
   public:
    ReducedWord() = default;

    // Throws std::invalid_argument if `letters` contains a cancelling pair.
    static ReducedWord from_reduced(Word letters);

    std::span<Letter const> letters() const noexcept { return letters_; }
    Word const&             word() const noexcept { return letters_; }
    std::size_t             size() const noexcept { return letters_.size(); }
    bool                    empty() const noexcept { return letters_.empty(); }
    Letter operator[](std::size_t i) const { return letters_[i]; }
    Letter back() const { return letters_.back(); }

    // The first n letters; a prefix of a reduced word is reduced.
    ReducedWord prefix(std::size_t n) const;
    bool        has_prefix(ReducedWord const& p) const noexcept;

    // reduce(this . x): either appends x or cancels the last letter.
    ReducedWord times(Letter x) const;
    void        multiply_in_place(Letter x);

    // Number of leading letters that follow the zig-zag a_1 a_2 a_1 a_2 ...
    std::size_t alternating_prefix_length() const noexcept;

    friend bool operator==(ReducedWord const&, ReducedWord const&) = default;
    friend auto operator<=>(ReducedWord const& a, ReducedWord const& b) {
      if (a.size() != b.size()) {
        return a.size() <=> b.size();
      }
      return a.letters_ <=> b.letters_;
    }

   private:
    explicit ReducedWord(Word w) : letters_(std::move(w)) {}
    friend ReducedWord reduce(std::span<Letter const> w);
    Word letters_;
  };

  ReducedWord reduce(std::span<Letter const> w);
  inline ReducedWord reduce(Word const& w) {
    return reduce(std::span<Letter const>(w));
  }

  bool is_reduced(std::span<Letter const> w) noexcept;

  Word concat(std::span<Letter const> u, std::span<Letter const> v);
  Word invert(std::span<Letter const> w);

  // Largest generator index occurring in w, 0 for the empty word.
  std::int32_t max_index(std::span<Letter const> w) noexcept;

  // |w| + max_index(w); the primary key of the canonical enumeration.
  std::uint64_t weight(std::span<Letter const> w) noexcept;

  // w_j: non-empty words ordered by weight, then length, then
  // lexicographically under a_1 < a_1^-1 < a_2 < ... Unreduced words and
  // words reducing to the identity are included.
  Word  enumerate(Index j);
  Index index_of(std::span<Letter const> w);

  // Number of words with weight(w) <= max_weight.
  Index count_up_to_weight(std::uint64_t max_weight);

  // |w_j| without materializing w_j.
  std::size_t enumerated_length(Index j);

  // |w_1| + ... + |w_k|.
  std::uint64_t cumulative_length(Index k);

  // |anchor(j)| = 2(|w_1| + ... + |w_{j-1}|) + 3j + |w_j|.
  std::uint64_t anchor_length(Index j);

  // The alternating word a_1 a_2 a_1 ... of length anchor_length(j).
  ReducedWord anchor(Index j);

  // The zig-zag ray vertex a_1 a_2 a_1 ... of length n.
  ReducedWord zigzag(std::size_t n);

  // Text format: whitespace- or comma-separated signed integers, `e` for the
  // empty word. Throws std::invalid_argument on malformed input.
  Word        parse_word(std::string_view text);
  std::string format_word(std::span<Letter const> w);
  inline std::string format_word(ReducedWord const& w) {
    return format_word(w.letters());
  }

  // Human-readable form, e.g. "a1 a2^-1"; `1` for the empty word.
  std::string pretty_word(std::span<Letter const> w);

}  // namespace earring

template <>
struct std::hash<earring::ReducedWord> {
  std::size_t operator()(earring::ReducedWord const& w) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto x : w.letters()) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(x.value()));
      h *= 0x100000001b3ULL;
    }
    return h;
  }
};

#endif  // EARRING_WORDS_HPP_
