#include <random>
#include <set>

#include "catch_amalgamated.hpp"
#include "psl/presentation.hpp"

using namespace psl;

namespace {

LetterString random_letters(std::mt19937& rng, std::size_t min_len, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<int> letter(0, 3);
  LetterString s;
  for (std::size_t n = len(rng); n > 0; --n) s.push_back(static_cast<char>(letter(rng)));
  return s;
}

// Irreducible words are prefix closed, so a breadth-first walk counts them.
std::size_t count_irreducible(RewritingSystem const& rs, std::size_t cap) {
  std::vector<LetterString> layer{LetterString{}};
  std::size_t total = 1;
  while (!layer.empty() && total <= cap) {
    std::vector<LetterString> next;
    for (auto const& w : layer)
      for (char l = 0; l < 4; ++l) {
        auto v = w + l;
        if (rs.irreducible(v)) next.push_back(v);
      }
    total += next.size();
    layer = std::move(next);
  }
  return total;
}

}  // namespace

TEST_CASE("free reduction system") {
  auto rs = RewritingSystem::free_reduction();
  CHECK(rs.size() == 4);
  CHECK(rs.rewrite(parse_letters("xyYXy")) == parse_letters("y"));
  CHECK(locally_confluent(rs));
}

TEST_CASE("orderings") {
  CHECK(shortlex_less(parse_letters("y"), parse_letters("xx")));
  CHECK(shortlex_less(parse_letters("xy"), parse_letters("Xy")));
  CHECK_FALSE(shortlex_less(parse_letters("xy"), parse_letters("xy")));
}

TEST_CASE("finite groups: normal forms count the group") {
  struct Case {
    char const* rels;
    std::size_t order;
  };
  for (auto [rels, order] : {Case{"x^2, y^3, (xy)^2", 6}, Case{"x^2, y^2, (xy)^5", 10},
                             Case{"x^4, x^2y^-2, y^-1xyx", 8}, Case{"x^3, y^3, (xy)^3, (xy^-1)^2", 0},
                             Case{"x^2, y^3, (xy)^3", 12}, Case{"x^2, y^3, (xy)^4", 24},
                             Case{"x^2, y^3, (xy)^5", 60}}) {
    auto p = parse_presentation(std::string(rels));
    auto kb = knuth_bendix(p);
    REQUIRE(kb.confluent);
    CHECK(locally_confluent(kb.system));
    auto tc = todd_coxeter(p, {}, 100000);
    REQUIRE(tc.complete());
    CHECK(count_irreducible(kb.system, 100000) == tc.index());
    if (order) CHECK(tc.index() == order);
  }
}

TEST_CASE("random presentations: completion agrees with coset enumeration") {
  std::mt19937 rng(2024);
  int compared = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<LetterString> rels;
    for (int i = 0; i < 3; ++i) rels.push_back(random_letters(rng, 2, 7));
    auto kb = knuth_bendix(rels, {300, 15});
    if (!kb.confluent) continue;
    REQUIRE(locally_confluent(kb.system));
    auto tc = todd_coxeter(2, rels, {}, 20000);
    if (!tc.complete()) continue;
    ++compared;
    REQUIRE(count_irreducible(kb.system, 20000) == tc.index());
    for (int k = 0; k < 50; ++k) {
      auto u = random_letters(rng, 0, 10), v = random_letters(rng, 0, 10);
      bool kb_equal = kb.system.rewrite(u) == kb.system.rewrite(v);
      bool tc_equal = tc.trace(0, u) == tc.trace(0, v);
      REQUIRE(kb_equal == tc_equal);
    }
  }
  CHECK(compared >= 30);
}

TEST_CASE("rewriting is idempotent and sound on relators") {
  auto kb = complete(parse_presentation(std::string("x^-2y^2")));
  REQUIRE(kb.confluent);
  CHECK(locally_confluent(kb.system));
  std::mt19937 rng(5);
  for (int i = 0; i < 2000; ++i) {
    auto w = random_letters(rng, 0, 12);
    auto r = kb.system.rewrite(w);
    REQUIRE(kb.system.irreducible(r));
    REQUIRE(kb.system.rewrite(r) == r);
    // conjugating a relator gives the identity
    REQUIRE(kb.system.rewrite(w + parse_letters("XXyy") + inverse_letters(w)).empty());
  }
  // the Klein bottle group is torsion free and non-abelian
  CHECK_FALSE(kb.system.rewrite(commutator_letters()).empty());
  CHECK_FALSE(kb.system.rewrite(parse_letters("xyxyxy")).empty());
}

TEST_CASE("shortlex fails where the recursive ordering succeeds") {
  Presentation p{2, {Word::parse("x^2y^-2")}};
  KnuthBendixCaps caps{2000, 20};
  CHECK_FALSE(knuth_bendix(p, caps).confluent);
  caps.order = WordOrder::recursive;
  auto r = knuth_bendix(p, caps);
  CHECK(r.confluent);
  CHECK(locally_confluent(r.system));
}
