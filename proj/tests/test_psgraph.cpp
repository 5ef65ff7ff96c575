#include <numeric>
#include <random>

#include "catch_amalgamated.hpp"
#include "psl/caselab.hpp"
#include "psl/psgraph.hpp"

using namespace psl;

namespace {

ElementSet random_subset(std::mt19937& rng, ElementSet const& pool, std::size_t n) {
  ElementSet s = pool;
  std::shuffle(s.begin(), s.end(), rng);
  s.resize(std::min(n, s.size()));
  return s;
}

CycleTuple tup(std::vector<int> h) { return CycleTuple{std::move(h)}; }

// Pattern tuples use 0 = 1, 1 = x, 2 = y.
CycleTuple tup(char const* s) {
  CycleTuple t;
  for (char const* p = s; *p; ++p) t.h.push_back(*p == '1' ? 0 : *p == 'x' ? 1 : 2);
  return t;
}

bool naive_embeds(std::vector<std::vector<std::size_t>> const& adj, Pattern const& pat) {
  std::size_t n = adj.size();
  if (pat.vertices > n) return false;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  auto adjacent = [&](std::size_t a, std::size_t b) {
    return std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end();
  };
  do {
    bool ok = true;
    for (auto [a, b] : pat.edges)
      if (!adjacent(perm[a - 1], perm[b - 1])) {
        ok = false;
        break;
      }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

TEST_CASE("graph of a pair in Z") {
  auto q = instantiate_quotient(Presentation{1, {}});
  REQUIRE(q.model);
  auto const& m = *q.model;
  auto one = m.gen_x();
  auto g = build_graph(m, {m.identity(), one}, {m.identity(), one});
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0].b == 0);
  CHECK(g.edges[0].bp == 1);
  CHECK(g.edges[0].c == 1);
  CHECK(g.edges[0].cp == 0);

  ElementSet three{m.identity(), one, m.power(one, 2)};
  auto h = build_graph(m, three, three);
  CHECK(h.has_multi_edge());
  auto chk = cayley_induced_check(m, three, three);
  CHECK_FALSE(chk.applicable);
  CHECK_FALSE(chk.ok());
}

TEST_CASE("edge count bound and translation invariance") {
  std::mt19937 rng(21);
  for (auto const& m : {GroupModel::free2(), GroupModel::klein(), GroupModel::heisenberg()}) {
    auto pool = m.ball(3);
    for (int i = 0; i < 200; ++i) {
      auto B = random_subset(rng, pool, 2 + rng() % 8);
      auto C = random_subset(rng, pool, 2 + rng() % 3);
      auto g = build_graph(m, B, C);
      auto s = product_stats(m, B, C);
      REQUIRE(g.edges.size() + s.BC.size() >= B.size() * C.size());
      auto u = pool[rng() % pool.size()], v = pool[rng() % pool.size()];
      ElementSet uB, Cv;
      for (auto const& b : B) uB.push_back(m.multiply(u, b));
      for (auto const& c : C) Cv.push_back(m.multiply(c, v));
      auto h = build_graph(m, uB, Cv);
      REQUIRE(h.edges == g.edges);
    }
  }
}

TEST_CASE("Cayley comparison on random non-cyclic cases") {
  std::mt19937 rng(22);
  int applicable = 0;
  for (auto const& m : {GroupModel::free2(), GroupModel::klein(), GroupModel::heisenberg(),
                        GroupModel::free_abelian2()}) {
    auto pool = m.ball(3);
    for (int i = 0; i < 100; ++i) {
      ElementSet C{m.identity()};
      while (C.size() < 3) {
        auto c = pool[rng() % pool.size()];
        if (std::find(C.begin(), C.end(), c) == C.end()) C.push_back(c);
      }
      auto B = random_subset(rng, pool, 3 + rng() % 9);
      CayleyCheck chk;
      REQUIRE_NOTHROW(chk = cayley_induced_check(m, B, C));
      if (chk.applicable) {
        ++applicable;
        REQUIRE(chk.ok());
      }
    }
  }
  CHECK(applicable >= 300);
}

TEST_CASE("cycle tuples evaluate to the identity") {
  std::mt19937 rng(23);
  for (auto const& m : {GroupModel::free2(), GroupModel::klein(), GroupModel::heisenberg()}) {
    ElementSet C{m.identity(), m.gen_x(), m.gen_y()};
    auto pool = m.ball(2);
    for (int i = 0; i < 100; ++i) {
      auto B = random_subset(rng, pool, 4 + rng() % 8);
      auto g = build_graph(m, B, C);
      for (std::size_t n : {3, 4, 5}) {
        std::vector<GraphCycle> cs;
        REQUIRE_NOTHROW(cs = cycles(m, g, n));
        for (auto const& c : cs) {
          REQUIRE(relator_value(m, C, c.tuple) == m.identity());
          REQUIRE(m.evaluate(relator_word(c.tuple)) == m.identity());
          for (std::size_t k = 0; k < n; ++k)
            REQUIRE(m.multiply(B[c.vertices[k]], C[c.tuple.h[2 * k]]) ==
                    m.multiply(B[c.vertices[(k + 1) % n]], C[c.tuple.h[2 * k + 1]]));
        }
      }
    }
  }
  auto m = GroupModel::free2();
  CHECK(cycles(m, build_graph(m, {m.identity(), m.gen_x()}, {m.identity(), m.gen_x()}), 3).empty());
}

TEST_CASE("tuple closure and canonical form") {
  auto t = tup("1x1yxy");
  auto closure = tuple_closure(t);
  std::vector<CycleTuple> expected = {tup("1x1yxy"), tup("1yxy1x"), tup("xy1x1y"),
                                      tup("yxy1x1"), tup("y1x1yx"), tup("x1yxy1")};
  std::sort(closure.begin(), closure.end());
  std::sort(expected.begin(), expected.end());
  CHECK(closure == expected);
  for (auto const& u : expected) CHECK(tuple_class(u) == tuple_class(t));
  CHECK(tuple_class(tup("1xy1yx")) != tuple_class(t));
  CHECK(relator_word(t) == Word::parse("x^-1y^-1xy^-1"));
  CHECK(relator_word(tup("1xy1yx")) == Word::parse("x^-1y^2x^-1"));

  std::mt19937 rng(24);
  std::uniform_int_distribution<int> d(0, 2);
  for (int i = 0; i < 1000; ++i) {
    CycleTuple r;
    for (int k = 0; k < 8; ++k) r.h.push_back(d(rng));
    auto c = tuple_class(r);
    REQUIRE(tuple_class(c) == c);
    for (auto const& u : tuple_closure(r)) REQUIRE(tuple_class(u) == c);
  }
}

TEST_CASE("cycle types") {
  CHECK(classify_cycle(tup("1xxyy1")) == CycleType::type_i);
  CHECK(classify_cycle(tup("1x1yxy")) == CycleType::type_ii);
  CHECK(classify_cycle(tup("1x1x1y1y")) == CycleType::type_ii);
  CHECK(classify_cycle(tup("1xxy1yx1")) != CycleType::type_ii);
  CHECK_THROWS_AS(classify_cycle(tup("1x1y")), std::invalid_argument);
}

TEST_CASE("Klein 4-atom graph") {
  auto m = GroupModel::klein();
  ElementSet C{m.identity(), m.gen_x(), m.gen_y()};
  auto rep = kappa_search(m, C, 4, m.ball(4), 4);
  REQUIRE_FALSE(rep.smallest_witnesses.empty());
  for (auto const& w : rep.smallest_witnesses) {
    auto g = build_graph(m, w.B, C);
    CHECK(g.edges.size() >= 4);
    CHECK(cayley_induced_check(m, w.B, C).ok());
    CHECK_FALSE(find_pattern(g, pattern_by_name("K4")));
  }
}

TEST_CASE("type (ii) squares in the Klein bottle group carry the Klein relations") {
  auto m = GroupModel::klein();
  std::set<LetterString> klein_relations;
  for (auto row : klein_rows) klein_relations.insert(cyclic_canonical(parse_letters(square_reference()[row - 1].relator)));
  auto a = m.gen_y(), b = m.multiply(m.gen_x(), m.gen_y());
  std::mt19937 rng(27);
  auto pool = m.ball(3);
  std::size_t type_ii = 0;
  for (auto const& C : {ElementSet{m.identity(), m.gen_x(), m.gen_y()}, ElementSet{m.identity(), a, b},
                        ElementSet{m.identity(), a, m.inverse(b)}}) {
    for (int i = 0; i < 300; ++i) {
      auto g = build_graph(m, random_subset(rng, pool, 5 + rng() % 8), C);
      for (auto const& c : cycles(m, g, 4)) {
        if (classify_cycle(c.tuple) != CycleType::type_ii) continue;
        ++type_ii;
        REQUIRE(klein_relations.count(cyclic_canonical(relator_word(c.tuple).letters())) == 1);
      }
    }
  }
  CHECK(type_ii > 0);
}

TEST_CASE("pattern search") {
  for (auto const& p : named_patterns()) {
    auto emb = find_embedding(pattern_adjacency(p), p);
    REQUIRE(emb);
  }
  auto const& g1 = pattern_by_name("Gamma1");
  auto emb = find_embedding(pattern_adjacency(g1), g1);
  REQUIRE(emb);
  std::vector<std::size_t> id(5);
  std::iota(id.begin(), id.end(), 0);
  CHECK(*emb == id);
  CHECK_FALSE(find_embedding(pattern_adjacency(pattern_by_name("K4")), pattern_by_name("Gamma5")));
  CHECK(find_embedding(pattern_adjacency(pattern_by_name("Gamma4")), g1));
  CHECK_THROWS_AS(pattern_by_name("Gamma9"), std::invalid_argument);

  // random graphs on 8 vertices against a brute-force search
  std::mt19937 rng(25);
  for (int i = 0; i < 150; ++i) {
    std::vector<std::vector<std::size_t>> adj(8);
    for (std::size_t a = 0; a < 8; ++a)
      for (std::size_t b = a + 1; b < 8; ++b)
        if (rng() % 100 < 45) {
          adj[a].push_back(b);
          adj[b].push_back(a);
        }
    for (auto& v : adj) std::sort(v.begin(), v.end());
    for (auto const& p : named_patterns()) {
      auto e = find_embedding(adj, p);
      REQUIRE(e.has_value() == naive_embeds(adj, p));
      if (e)
        for (auto [a, b] : p.edges)
          REQUIRE(std::binary_search(adj[(*e)[a - 1]].begin(), adj[(*e)[a - 1]].end(), (*e)[b - 1]));
    }
  }
}

TEST_CASE("no forbidden patterns outside the Klein bottle group") {
  std::mt19937 rng(26);
  for (auto const& m : {GroupModel::free2(), GroupModel::heisenberg()}) {
    ElementSet C{m.identity(), m.gen_x(), m.gen_y()};
    auto pool = m.ball(3);
    for (int i = 0; i < 300; ++i) {
      auto B = random_subset(rng, pool, 6 + rng() % 12);
      auto g = build_graph(m, B, C);
      for (auto const& p : named_patterns()) REQUIRE_FALSE(find_pattern(g, p));
    }
  }
}

TEST_CASE("dot export") {
  auto m = GroupModel::free2();
  std::ostringstream os;
  write_dot(os, m, build_graph(m, {m.identity(), m.gen_x()}, {m.identity(), m.gen_x()}));
  CHECK(os.str().find("v0 -- v1") != std::string::npos);
}
