#include <random>
#include <set>

#include "catch_amalgamated.hpp"
#include "psl/productset.hpp"

using namespace psl;

namespace {

std::vector<GroupModel> torsion_free_models() {
  return {GroupModel::free2(), GroupModel::free_abelian2(), GroupModel::klein(), GroupModel::heisenberg()};
}

ElementSet random_subset(std::mt19937& rng, ElementSet const& pool, std::size_t n) {
  ElementSet s = pool;
  std::shuffle(s.begin(), s.end(), rng);
  s.resize(std::min(n, s.size()));
  return s;
}

}  // namespace

TEST_CASE("product statistics agree with a naive count") {
  std::mt19937 rng(10);
  for (auto const& m : torsion_free_models()) {
    auto pool = m.ball(3);
    for (int i = 0; i < 300; ++i) {
      auto B = random_subset(rng, pool, 1 + rng() % 9);
      auto C = random_subset(rng, pool, 1 + rng() % 5);
      auto s = product_stats(m, B, C);
      REQUIRE(s.invariant_failure().empty());
      std::vector<std::pair<GroupElement, std::size_t>> naive;
      for (auto const& b : B)
        for (auto const& c : C) {
          auto x = m.multiply(b, c);
          auto it = std::find_if(naive.begin(), naive.end(), [&](auto const& p) { return p.first == x; });
          if (it == naive.end()) naive.emplace_back(x, 1);
          else ++it->second;
        }
      REQUIRE(naive.size() == s.BC.size());
      for (auto const& [x, n] : naive) REQUIRE(s.r(x) == n);
    }
  }
}

TEST_CASE("sum-set bounds on random pairs") {
  std::mt19937 rng(11);
  for (auto const& m : torsion_free_models()) {
    INFO(m.name());
    auto pool = m.ball(3);
    std::size_t applicable = 0;
    for (int i = 0; i < 1000; ++i) {
      auto B = random_subset(rng, pool, 1 + rng() % 10);
      auto C = random_subset(rng, pool, 2 + rng() % 4);
      if (std::find(C.begin(), C.end(), m.identity()) == C.end()) C[0] = m.identity();
      C = normalize_set(C);
      auto s = product_stats(m, B, C);
      REQUIRE(kemperman_bound_holds(s));
      if (auto h = hamidoune_bound_holds(m, s)) {
        ++applicable;
        REQUIRE(*h);
      }
    }
    if (m.kind() != ModelKind::free_abelian2) CHECK(applicable > 100);
    else CHECK(applicable == 0);
  }
}

TEST_CASE("bad input is rejected") {
  auto m = GroupModel::free2();
  CHECK_THROWS_AS(product_stats(m, {}, {m.identity()}), std::invalid_argument);
  CHECK_THROWS_AS(product_stats(m, {m.gen_x(), m.gen_x()}, {m.identity()}), std::invalid_argument);
}

TEST_CASE("pruned search agrees with exhaustive subsets") {
  for (auto const& m : torsion_free_models()) {
    auto C = ElementSet{m.identity(), m.gen_x(), m.gen_y()};
    auto U = m.ball(2);
    if (U.size() > 18) U.resize(18);
    if (std::find(U.begin(), U.end(), m.identity()) == U.end()) U.push_back(m.identity());
    for (std::size_t k = 1; k <= 5; ++k) {
      INFO(m.name() << " k=" << k);
      auto plain = kappa_search_plain(m, C, k, U, 8);
      auto rep = kappa_search(m, C, k, U, 8);
      KappaOptions no_prune;
      no_prune.prune = false;
      auto rep2 = kappa_search(m, C, k, U, 8, no_prune);
      REQUIRE(plain.has_value());
      REQUIRE(rep.kappa_min == plain);
      REQUIRE(rep2.kappa_min == plain);
      for (auto const& w : rep.witnesses) {
        auto s = product_stats(m, w.B, C);
        REQUIRE(s.boundary.size() == *plain);
        REQUIRE(s.BC.size() == w.product_size);
      }
    }
  }
}

TEST_CASE("worker count does not change the result") {
  auto m = GroupModel::klein();
  auto C = ElementSet{m.identity(), m.gen_x(), m.gen_y()};
  auto U = m.ball(3);
  KappaOptions one, three;
  three.workers = 3;
  auto a = kappa_search(m, C, 4, U, 7, one);
  auto b = kappa_search(m, C, 4, U, 7, three);
  CHECK(a.kappa_min == b.kappa_min);
  CHECK(a.optimal_count_by_size == b.optimal_count_by_size);
}

TEST_CASE("Klein 4-atom") {
  auto m = GroupModel::klein();
  auto C = ElementSet{m.identity(), m.gen_x(), m.gen_y()};
  auto U = m.ball(4);
  auto rep = kappa_search(m, C, 4, U, 6);
  REQUIRE(rep.kappa_min);
  CHECK(*rep.kappa_min == 4);
  CHECK(rep.min_product_size() == 8u);
  auto atoms = atom_candidates(m, rep, U);
  CHECK_FALSE(atoms.empty());
  for (auto const& a : atoms) CHECK(a.overlap_holds);
}

TEST_CASE("kappa on Z^2") {
  auto m = GroupModel::free_abelian2();
  auto C = ElementSet{m.identity(), m.gen_x(), m.gen_y()};
  auto rep = kappa_search(m, C, 2, m.ball(3), 6);
  REQUIRE(rep.kappa_min);
  CHECK(*rep.kappa_min == 3);
  auto rep1 = kappa_search(m, C, 1, m.ball(3), 6);
  CHECK(*rep1.kappa_min == 2);
}

TEST_CASE("unique products exist in torsion-free models") {
  std::mt19937 rng(12);
  for (auto const& m : torsion_free_models()) {
    auto pool = m.ball(3);
    for (int i = 0; i < 200; ++i) {
      auto B = random_subset(rng, pool, 1 + rng() % 8);
      auto C = random_subset(rng, pool, 1 + rng() % 8);
      REQUIRE_FALSE(unique_product_witnesses(m, B, C).empty());
    }
  }
}
