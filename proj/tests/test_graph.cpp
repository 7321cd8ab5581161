#include <random>
#include <thread>

#include "catch2/catch_amalgamated.hpp"

#include "support.hpp"

using namespace earring;
using namespace earring::test;

namespace {
  GraphOracle const& oracle() {
    static GraphOracle g;
    return g;
  }

  ReducedWord anchor_times(Index j, std::initializer_list<int> xs) {
    return reduce(concat(anchor(j).letters(), W(xs)));
  }
}  // namespace

TEST_CASE("island data", "[graph]") {
  auto const& g = oracle();
  auto        one = g.island_data(1);
  CHECK(one->level == 2);
  REQUIRE(one->z_path.size() == 2);
  CHECK(one->z_path[0] == R({1, 2, 1, 2}));
  CHECK(one->z_path[1] == R({1, 2, 1, 2, 1}));

  auto two = g.island_data(2);
  CHECK(two->z_path[1] == R({1, 2, 1, 2, 1, 2, 1, 2}));

  auto nine = g.island_data(9);
  CHECK(nine->level == 3);
  CHECK(nine->z_path[1] == anchor_times(9, {3}));

  for (Index j = 1; j <= 60; ++j) {
    auto isl = g.island_data(j);
    REQUIRE(isl->z_path.front() == anchor(j));
    REQUIRE(isl->z_path.size() == isl->word.size() + 1);
    RefIsland ref(j);
    REQUIRE(isl->z_path == ref.z);
    REQUIRE(isl->level == ref.level);
    for (std::size_t i = 0; i + 1 < isl->z_path.size(); ++i) {
      REQUIRE(isl->z_path[i].times(isl->word[i]) == isl->z_path[i + 1]);
    }
  }
}

TEST_CASE("in_line", "[graph]") {
  CHECK(in_line(R({1, 2}), R({1, 2}), 5) == 0);
  CHECK(in_line(R({1, 2, 3, 3}), R({1, 2}), 3) == 2);
  CHECK(in_line(R({1}), R({1, 2}), 2) == -1);
  CHECK_FALSE(in_line(R({1, 3}), R({1, 2}), 3).has_value());
  CHECK(in_line(R({1, 2, 3, -3}), R({1, 2}), 3) == 0);
  CHECK(in_line(R({1, 2, -3}), R({1, 2, 3}), 3) == -2);
}

TEST_CASE("island membership examples", "[graph]") {
  auto const& g = oracle();
  CHECK_FALSE(g.island_of(ReducedWord()).has_value());
  for (Index j = 1; j <= 50; ++j) {
    REQUIRE(g.island_of(anchor(j)) == j);
  }
  CHECK(g.island_of(anchor_times(9, {3, 3})) == 9);
}

TEST_CASE("island membership matches the definition", "[graph][property]") {
  auto const&     g = oracle();
  RefGraph        ref;
  std::mt19937_64 rng(5);
  for (Index j : {1, 2, 3, 5, 9, 10, 13, 31, 33, 45}) {
    for (auto const& v : island_neighbourhood(g, j, 3, 1)) {
      INFO(format_word(v));
      REQUIRE(g.island_of(v) == ref.island_of(v));
    }
  }
  for (int n = 0; n < 3000; ++n) {
    auto v = reduce(random_word(rng, 30, 3));
    REQUIRE(g.island_of(v) == ref.island_of(v));
  }
}

TEST_CASE("candidate islands are sound", "[graph][property]") {
  auto const& g = oracle();
  for (Index j = 1; j <= 40; ++j) {
    for (auto const& v : island_neighbourhood(g, j, 4, 0)) {
      auto c = g.candidate_islands(v);
      REQUIRE(std::find(c.begin(), c.end(), j) != c.end());
    }
  }
}

TEST_CASE("survival examples", "[graph]") {
  auto const& g = oracle();
  CHECK(g.survives(ReducedWord()));
  CHECK_FALSE(g.survives(R({3})));
  CHECK(g.survives(anchor_times(9, {3})));
  CHECK(g.survives(R({1, 2, -1, -2, 1})));
  CHECK_THROWS_AS(g.vertex(R({3})), std::domain_error);
}

TEST_CASE("survival matches the literal pruning", "[graph][property]") {
  auto const&     g = oracle();
  RefGraph        ref;
  std::mt19937_64 rng(7);
  for (Index j : {1, 2, 4, 9, 10, 11, 31, 32, 33}) {
    for (auto const& v : island_neighbourhood(g, j, 3, 2)) {
      INFO(format_word(v));
      REQUIRE(g.survives(v) == ref.survives(v));
    }
  }
  for (int n = 0; n < 2000; ++n) {
    auto v = random_vertex(g, rng, 40, 4);
    REQUIRE(ref.survives(v));
    auto w = v.times(Letter::generator(3 + n % 3, n % 2 ? 1 : -1));
    REQUIRE(g.survives(w) == ref.survives(w));
  }
}

TEST_CASE("both pruning routes give the same graph", "[graph][property]") {
  auto const& g = oracle();
  for (Index j = 1; j <= 12; ++j) {
    for (auto const& v : island_neighbourhood(g, j, 3, 2)) {
      INFO(format_word(v));
      REQUIRE(g.survives(v) == g.survives_neighbour_rule(v));
    }
  }
}

TEST_CASE("island roots hang off a_1 or a_2 edges", "[graph][property]") {
  auto const& g = oracle();
  for (Index j = 1; j <= 200; ++j) {
    auto isl = g.island_data(j);
    REQUIRE(!isl->root.empty());
    REQUIRE(isl->root.back().index() <= 2);
    // Neighbouring islands may touch across a zig-zag edge, so only the
    // island's own membership is excluded here.
    REQUIRE_FALSE(g.in_island(isl->root.prefix(isl->root.size() - 1), j));
    for (auto const& z : isl->z_set) {
      REQUIRE(z.has_prefix(isl->root));
    }
  }
}

TEST_CASE("e_set examples", "[graph]") {
  auto const& g = oracle();
  CHECK(g.e_set(g.base()) == LabelSet({1, 2}));
  CHECK(g.e_set(g.vertex(anchor(9))) == LabelSet({1, 2, 3}));
  CHECK(g.e_set(g.vertex(anchor_times(9, {3, 3}))) == LabelSet({1, 2, 3}));
  CHECK(g.e_set(g.vertex(anchor(1))) == LabelSet({1, 2}));
  CHECK(LabelSet({3, 1, 2, 1}).to_string() == "{1,2,3}");
}

TEST_CASE("neighbor examples", "[graph]") {
  auto const& g  = oracle();
  auto        m1 = g.neighbor(g.base(), a1);
  CHECK(m1.kind == StepKind::tree);
  CHECK(m1.to.word() == R({1}));
  auto m3 = g.neighbor(g.base(), Letter(3));
  CHECK(m3.kind == StepKind::loop);
  CHECK(m3.to.is_base());
}

TEST_CASE("label symmetry and degree bounds", "[graph][property]") {
  auto const&              g = oracle();
  std::mt19937_64          rng(3);
  std::vector<ReducedWord> sample;
  for (int n = 0; n < 1500; ++n) {
    sample.push_back(random_vertex(g, rng, 50, 4));
  }
  for (Index j : {1, 9, 10, 31, 33, 45}) {
    for (auto const& v : island_neighbourhood(g, j, 2, 1)) {
      if (g.survives(v)) {
        sample.push_back(v);
      }
    }
  }
  for (auto const& w : sample) {
    INFO(format_word(w));
    auto v      = g.vertex(w);
    auto e      = g.e_set(v);
    auto island = g.island_of(w);
    REQUIRE(e.contains(1));
    REQUIRE(e.contains(2));
    if (!island) {
      REQUIRE(e == LabelSet({1, 2}));
    } else {
      REQUIRE(e.max() <= g.island_data(*island)->level);
    }
    int const top = island ? g.island_data(*island)->level + 2 : 4;
    for (int i = 1; i <= top; ++i) {
      bool const out = g.survives(w.times(Letter(i)));
      bool const in  = g.survives(w.times(Letter(-i)));
      REQUIRE(out == e.contains(i));
      REQUIRE(in == e.contains(i));
      if (island && i >= 3 && e.contains(i)) {
        REQUIRE(g.island_of(w.times(Letter(i))) == island);
        REQUIRE(g.island_of(w.times(Letter(-i))) == island);
      }
    }
    for (int i = 1; i <= top; ++i) {
      auto there = g.neighbor(v, Letter(i));
      REQUIRE(g.neighbor(there.to, Letter(-i)).to == v);
    }
  }
}

TEST_CASE("z_path lies in the pruned tree", "[graph][property]") {
  auto const& g = oracle();
  for (Index j = 1; j <= 124; ++j) {
    auto isl = g.island_data(j);
    for (std::size_t i = 0; i < isl->z_path.size(); ++i) {
      auto v = g.vertex(isl->z_path[i]);
      REQUIRE(g.e_set(v) == LabelSet([&] {
                std::vector<int> all;
                for (int k = 1; k <= isl->level; ++k) {
                  all.push_back(k);
                }
                return all;
              }()));
      if (i + 1 < isl->z_path.size()) {
        auto m = g.neighbor(v, isl->word[i]);
        REQUIRE(m.kind == StepKind::tree);
        REQUIRE(m.to.word() == isl->z_path[i + 1]);
      }
    }
  }
}

TEST_CASE("removal cross-check", "[graph]") {
  auto const& g   = oracle();
  auto        rep = g.removal_cross_check(1, 2);
  CHECK(rep.vertices_checked > 0);
  // Vertices one a_1 or a_2 edge away from Z_j are never removed.
  auto isl = g.island_data(1);
  for (auto const& z : isl->z_set) {
    for (int x : {1, -1, 2, -2}) {
      auto v = z.times(Letter(x));
      CHECK_FALSE(g.prefix_rule_removes(v, 1));
      CHECK_FALSE(g.neighbour_rule_removes(v, 1));
    }
  }
  // The two rules differ only on the branch through the root of the
  // island, and the pruned graphs agree regardless.
  CHECK(rep.unreconciled() == 0);
  for (auto const& d : rep.disagreements) {
    CHECK(d.neighbour_rule_removes);
    CHECK_FALSE(d.prefix_rule_removes);
    CHECK(d.final_agree);
    CHECK(d.vertex.has_prefix(isl->root));
  }
}

TEST_CASE("caching does not change answers", "[graph][property]") {
  GraphOracle     cached;
  GraphOracle     plain(0);
  std::mt19937_64 rng(19);
  for (int n = 0; n < 500; ++n) {
    auto v = reduce(random_word(rng, 40, 4));
    REQUIRE(cached.survives(v) == plain.survives(v));
    REQUIRE(cached.island_of(v) == plain.island_of(v));
    if (cached.survives(v)) {
      REQUIRE(cached.e_set(cached.vertex(v)) == plain.e_set(plain.vertex(v)));
    }
  }
  CHECK(plain.cache_bytes() == 0);
}

TEST_CASE("concurrent queries agree with serial ones", "[graph][property]") {
  GraphOracle              shared;
  GraphOracle              serial;
  std::mt19937_64          rng(23);
  std::vector<ReducedWord> sample;
  for (int n = 0; n < 2000; ++n) {
    sample.push_back(reduce(random_word(rng, 60, 3)));
  }
  std::vector<char>        got(sample.size());
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < 4; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < sample.size(); i += 4) {
        got[i] = shared.survives(sample[i]);
      }
    });
  }
  for (auto& t : pool) {
    t.join();
  }
  for (std::size_t i = 0; i < sample.size(); ++i) {
    REQUIRE(bool(got[i]) == serial.survives(sample[i]));
  }
}
