#include <doctest.h>

#include <random>
#include <set>

#include <redukt/errors.hpp>
#include <redukt/words.hpp>

#include "helpers.hpp"

using namespace redukt;

namespace {

AlphabetPtr ab() { return Alphabet::raw({"a", "b"}); }
AlphabetPtr abc() { return Alphabet::raw({"a", "b", "c"}); }

CanonicalWord cw(const AlphabetPtr& al, std::vector<Letter> prefix, std::vector<Letter> cycle) {
  return CanonicalWord(al, std::move(prefix), std::move(cycle));
}

} // namespace

TEST_CASE("canonicalization reduces the cycle to its primitive root") {
  auto w = cw(ab(), {}, {0, 1, 0, 1});
  CHECK(w.cycle() == std::vector<Letter>{0, 1});
  CHECK(w.prefix().empty());

  auto stutter = cw(ab(), {}, {1, 1, 1});
  CHECK(stutter.cycle() == std::vector<Letter>{1});
}

TEST_CASE("canonicalization absorbs prefix letters into the cycle") {
  // a.(a)^w is just (a)^w
  auto w = cw(ab(), {0}, {0});
  CHECK(w.prefix().empty());
  CHECK(w.cycle() == std::vector<Letter>{0});

  // a.a.b.(a.b)^w rotates twice and settles as a.(a.b)^w
  auto v = cw(ab(), {0, 0, 1}, {0, 1});
  CHECK(v.prefix() == std::vector<Letter>{0});
  CHECK(v.cycle() == std::vector<Letter>{0, 1});

  // b.(a.b)^w = (b.a)^w
  auto u = cw(ab(), {1}, {0, 1});
  CHECK(u.prefix().empty());
  CHECK(u.cycle() == std::vector<Letter>{1, 0});
}

TEST_CASE("equal words in different spellings compare equal") {
  CHECK(cw(ab(), {0}, {1}) == cw(ab(), {0}, {1, 1}));
  CHECK(cw(ab(), {0}, {1, 0}) == cw(ab(), {}, {0, 1}));
  CHECK(cw(ab(), {0}, {1}) != cw(ab(), {1}, {0}));
}

TEST_CASE("construction rejects bad input") {
  CHECK_THROWS_AS(cw(ab(), {0}, {}), InvalidWordError);
  CHECK_THROWS_AS(cw(ab(), {5}, {0}), InvalidWordError);
  CHECK_THROWS_AS(cw(ab(), {}, {0, 7}), InvalidWordError);
}

TEST_CASE("at walks prefix then cycle") {
  auto w = cw(abc(), {0, 1}, {2, 0});
  CHECK(w.at(0) == 0);
  CHECK(w.at(1) == 1);
  CHECK(w.at(2) == 2);
  CHECK(w.at(3) == 0);
  CHECK(w.at(4) == 2);
  CHECK(w.positions() == 4);
}

TEST_CASE("str renders prefix dot-joined and the cycle in parentheses") {
  auto pq = Alphabet::powerset({"p", "q"});
  CHECK(cw(pq, {3, 2}, {0}).str() == "{p,q}.{q} | ({})");
  CHECK(cw(ab(), {0}, {1}).str() == "a | (b)");
  CHECK(cw(ab(), {}, {0, 1}).str() == " | (a.b)");
}

TEST_CASE("rle_view splits terminal and alternating words") {
  auto t = rle_view(cw(ab(), {}, {0}));
  CHECK(t.prefix.empty());
  CHECK(t.cycle.empty());
  REQUIRE(t.terminal.has_value());
  CHECK(*t.terminal == 0);

  auto u = rle_view(cw(ab(), {0, 0}, {1}));
  REQUIRE(u.prefix.size() == 1);
  CHECK(u.prefix[0] == RleBlock{0, 2});
  CHECK(*u.terminal == 1);

  auto v = rle_view(cw(ab(), {}, {0, 1}));
  CHECK(!v.terminal.has_value());
  REQUIRE(v.cycle.size() == 2);
  CHECK(v.cycle[0] == RleBlock{0, 1});
  CHECK(v.cycle[1] == RleBlock{1, 1});
}

TEST_CASE("rle_view absorbs cycle letters stuttering across the seam") {
  // a.a.b.(a.b)^w, canonically a.(a.b)^w, in blocks: a^2 (b a)^w
  auto r = rle_view(cw(ab(), {0, 0, 1}, {0, 1}));
  REQUIRE(r.prefix.size() == 1);
  CHECK(r.prefix[0] == RleBlock{0, 2});
  REQUIRE(r.cycle.size() == 2);
  CHECK(r.cycle[0] == RleBlock{1, 1});
  CHECK(r.cycle[1] == RleBlock{0, 1});
}

TEST_CASE("rle_view blocks expand back to the word") {
  std::mt19937 rng(20240811);
  auto al = abc();
  for (int i = 0; i < 500; ++i) {
    auto w = testing::random_word(rng, al, 4, 4);
    auto r = rle_view(w);

    std::vector<Letter> flat;
    for (const auto& b : r.prefix)
      flat.insert(flat.end(), b.count, b.letter);
    std::size_t head = flat.size();

    // Adjacent blocks must change letters, prefix, seam, cycle and wrap.
    for (std::size_t j = 1; j < r.prefix.size(); ++j)
      CHECK(r.prefix[j].letter != r.prefix[j - 1].letter);
    if (r.terminal) {
      if (!r.prefix.empty())
        CHECK(r.prefix.back().letter != *r.terminal);
      for (std::size_t p = 0; p < head + 4; ++p)
        CHECK(w.at(p) == (p < head ? flat[p] : *r.terminal));
      continue;
    }
    REQUIRE(!r.cycle.empty());
    if (!r.prefix.empty())
      CHECK(r.prefix.back().letter != r.cycle.front().letter);
    for (std::size_t j = 1; j < r.cycle.size(); ++j)
      CHECK(r.cycle[j].letter != r.cycle[j - 1].letter);
    if (r.cycle.size() > 1)
      CHECK(r.cycle.back().letter != r.cycle.front().letter);

    std::size_t period = 0;
    for (const auto& b : r.cycle) {
      flat.insert(flat.end(), b.count, b.letter);
      period += b.count;
    }
    std::size_t keep = flat.size();
    for (int rep = 0; rep < 2; ++rep)
      flat.insert(flat.end(), flat.begin() + keep - period, flat.begin() + keep);
    for (std::size_t p = 0; p < flat.size(); ++p)
      CHECK(w.at(p) == flat[p]);
  }
}

TEST_CASE("shorter_than orders words along block exponents") {
  auto a_b = cw(ab(), {0}, {1});
  auto aa_b = cw(ab(), {0, 0}, {1});
  CHECK(shorter_than(a_b, a_b));
  CHECK(shorter_than(a_b, aa_b));
  CHECK(!shorter_than(aa_b, a_b));

  CHECK(shorter_than(cw(ab(), {}, {0, 1}), cw(ab(), {}, {0, 0, 1})));
  // the longer word may start its periodic region later
  CHECK(shorter_than(cw(ab(), {}, {0, 1}), cw(ab(), {0, 0, 1}, {0, 1})));
}

TEST_CASE("shorter_than rejects skeleton mismatches") {
  CHECK(!shorter_than(cw(ab(), {}, {0, 1}), cw(ab(), {}, {1, 0})));
  CHECK(!shorter_than(cw(ab(), {}, {1, 0}), cw(ab(), {}, {0, 1})));

  // infinite stutter vs forever alternating: never comparable
  CHECK(!shorter_than(cw(ab(), {0}, {1}), cw(ab(), {}, {0, 1})));
  CHECK(!shorter_than(cw(ab(), {}, {0, 1}), cw(ab(), {0}, {1})));

  // different terminal letters
  CHECK(!shorter_than(cw(ab(), {0}, {1}), cw(ab(), {1}, {0})));

  // different prefix block skeletons before the same terminal
  CHECK(!shorter_than(cw(abc(), {0, 1}, {2}), cw(abc(), {0}, {2})));
  CHECK(!shorter_than(cw(abc(), {0}, {2}), cw(abc(), {0, 1}, {2})));
}

TEST_CASE("shorter_than requires one alphabet") {
  CHECK_THROWS_AS(shorter_than(cw(ab(), {}, {0}), cw(abc(), {}, {0})), AlphabetMismatchError);
}

TEST_CASE("shortest_representative flattens every finite exponent") {
  CHECK(shortest_representative(cw(ab(), {0, 0, 1}, {0, 1})) == cw(ab(), {}, {0, 1}));
  CHECK(shortest_representative(cw(ab(), {0, 0}, {1})) == cw(ab(), {0}, {1}));
  auto flat = cw(ab(), {}, {0, 1});
  CHECK(shortest_representative(flat) == flat);
}

TEST_CASE("stutter equivalence is equality of shortest representatives") {
  CHECK(stutter_equivalent(cw(ab(), {0, 0, 1}, {0, 1}), cw(ab(), {}, {0, 1})));
  CHECK(stutter_equivalent(cw(ab(), {0}, {1}), cw(ab(), {0, 0}, {1})));
  CHECK(!stutter_equivalent(cw(ab(), {0}, {1}), cw(ab(), {1}, {0})));
  CHECK(!stutter_equivalent(cw(ab(), {0}, {1}), cw(ab(), {}, {0, 1})));
}

TEST_CASE("shorter neighbors decrease exponents one step at a time") {
  auto s1 = enumerate_neighbors(cw(ab(), {0, 0}, {1}), NeighborDirection::Shorter, 2);
  CHECK(s1 == std::set<CanonicalWord>{cw(ab(), {0}, {1})});

  CHECK(enumerate_neighbors(cw(ab(), {0}, {1}), NeighborDirection::Shorter, 3).empty());

  auto pq = Alphabet::powerset({"p", "q"});
  auto s2 = enumerate_neighbors(cw(pq, {3, 3}, {0}), NeighborDirection::Shorter, 1);
  CHECK(s2 == std::set<CanonicalWord>{cw(pq, {3}, {0})});
}

TEST_CASE("longer neighbors grow exponents, unrolling the cycle as needed") {
  auto l1 = enumerate_neighbors(cw(ab(), {0}, {1}), NeighborDirection::Longer, 1);
  CHECK(l1 == std::set<CanonicalWord>{cw(ab(), {0, 0}, {1})});

  auto l2 = enumerate_neighbors(cw(ab(), {}, {0, 1}), NeighborDirection::Longer, 2);
  CHECK(l2 == std::set<CanonicalWord>{cw(ab(), {0}, {0, 1}), cw(ab(), {0, 1, 1}, {0, 1})});

  // pumping into an infinite stutter changes nothing, so only the finite
  // block grows
  auto l3 = enumerate_neighbors(cw(ab(), {0, 0}, {1}), NeighborDirection::Longer, 2);
  CHECK(l3 == std::set<CanonicalWord>{cw(ab(), {0, 0, 0}, {1}), cw(ab(), {0, 0, 0, 0}, {1})});
}

TEST_CASE("every neighbor is comparable in the promised direction") {
  std::mt19937 rng(77);
  auto al = ab();
  for (int i = 0; i < 300; ++i) {
    auto w = testing::random_word(rng, al, 3, 3);
    for (const auto& n : enumerate_neighbors(w, NeighborDirection::Shorter, 3)) {
      CHECK(n != w);
      CHECK(shorter_than(n, w));
    }
    for (const auto& n : enumerate_neighbors(w, NeighborDirection::Longer, 3)) {
      CHECK(n != w);
      CHECK(shorter_than(w, n));
    }
  }
}

TEST_CASE("pumped words stay comparable through canonicalization") {
  // Pumping can merge cyclic blocks; comparability must survive that.
  std::mt19937 rng(4242);
  auto al = ab();
  for (int i = 0; i < 2000; ++i) {
    auto w = testing::random_word(rng, al, 3, 4);
    auto v = testing::pump(rng, w, 3);
    CHECK(shorter_than(w, v));
    if (!(w == v))
      CHECK(!shorter_than(v, w));
  }
}

TEST_CASE("all_lasso_words enumerates canonical words once") {
  auto words = testing::all_lasso_words(ab(), 3);
  CHECK(words.size() == 18);
  std::set<std::string> strs;
  for (const auto& w : words) {
    CHECK(w.positions() <= 3);
    strs.insert(w.str());
  }
  CHECK(strs.size() == words.size());
}
