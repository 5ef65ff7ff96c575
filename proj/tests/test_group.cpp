#include <array>
#include <random>

#include "catch_amalgamated.hpp"
#include "psl/group.hpp"

using namespace psl;

namespace {

std::vector<GroupModel> builtin_models() {
  return {GroupModel::free2(), GroupModel::free_abelian2(), GroupModel::klein(), GroupModel::heisenberg()};
}

LetterString random_letters(std::mt19937& rng, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> letter(0, 3);
  LetterString s;
  for (std::size_t n = len(rng); n > 0; --n) s.push_back(static_cast<char>(letter(rng)));
  return s;
}

using Mat = std::array<long, 9>;

Mat mat_mul(Mat const& a, Mat const& b) {
  Mat c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[3 * i + j] += a[3 * i + k] * b[3 * k + j];
  return c;
}

// Upper unitriangular integer matrices, x = E + e12, y = E + e23.
Mat heisenberg_matrix(LetterString const& s) {
  Mat id{1, 0, 0, 0, 1, 0, 0, 0, 1};
  Mat gens[4] = {{1, 1, 0, 0, 1, 0, 0, 0, 1}, {1, -1, 0, 0, 1, 0, 0, 0, 1},
                 {1, 0, 0, 0, 1, 1, 0, 0, 1}, {1, 0, 0, 0, 1, -1, 0, 0, 1}};
  Mat out = id;
  for (char c : s) out = mat_mul(out, gens[static_cast<int>(c)]);
  return out;
}

}  // namespace

TEST_CASE("group axioms on random elements") {
  std::mt19937 rng(1);
  for (auto const& m : builtin_models()) {
    INFO(m.name());
    for (int i = 0; i < 10000; ++i) {
      auto a = m.evaluate_letters(random_letters(rng, 8));
      auto b = m.evaluate_letters(random_letters(rng, 8));
      auto c = m.evaluate_letters(random_letters(rng, 8));
      REQUIRE(m.multiply(m.multiply(a, b), c) == m.multiply(a, m.multiply(b, c)));
      REQUIRE(m.multiply(a, m.inverse(a)) == m.identity());
      REQUIRE(m.multiply(m.identity(), a) == a);
    }
  }
}

TEST_CASE("free group agrees with free reduction") {
  auto m = GroupModel::free2();
  std::mt19937 rng(2);
  for (int i = 0; i < 5000; ++i) {
    auto u = random_letters(rng, 10), v = random_letters(rng, 10);
    bool equal = m.evaluate_letters(u) == m.evaluate_letters(v);
    REQUIRE(equal == (free_reduce(u) == free_reduce(v)));
  }
}

TEST_CASE("Heisenberg group agrees with unitriangular matrices") {
  auto m = GroupModel::heisenberg();
  std::mt19937 rng(3);
  for (int i = 0; i < 5000; ++i) {
    auto u = random_letters(rng, 12), v = random_letters(rng, 12);
    bool equal = m.evaluate_letters(u) == m.evaluate_letters(v);
    REQUIRE(equal == (heisenberg_matrix(u) == heisenberg_matrix(v)));
  }
  auto z = m.evaluate(Word::parse("xyx^-1y^-1"));
  CHECK(z != m.identity());
  CHECK(m.commute(z, m.gen_x()));
  CHECK(m.commute(z, m.gen_y()));
}

TEST_CASE("Klein model agrees with the quotient <a, b | a^2 b^-2>") {
  auto q = instantiate_quotient(Presentation{2, {Word::parse("x^2y^-2")}});
  REQUIRE(q.model);
  auto k = GroupModel::klein();
  // a = y, b = xy satisfy a^2 = b^2 in the Klein model
  auto a = k.gen_y(), b = k.multiply(k.gen_x(), k.gen_y());
  REQUIRE(k.power(a, 2) == k.power(b, 2));
  std::mt19937 rng(4);
  for (int i = 0; i < 20000; ++i) {
    auto u = random_letters(rng, 8), v = random_letters(rng, 8);
    bool in_quotient = q.model->evaluate_letters(u) == q.model->evaluate_letters(v);
    bool in_klein = k.substitute(u, a, b) == k.substitute(v, a, b);
    REQUIRE(in_quotient == in_klein);
  }
}

TEST_CASE("free abelian model agrees with the commutator quotient") {
  auto q = instantiate_quotient(Presentation{2, {Word::parse("xyx^-1y^-1")}});
  REQUIRE(q.model);
  auto z = GroupModel::free_abelian2();
  std::mt19937 rng(5);
  for (int i = 0; i < 5000; ++i) {
    auto u = random_letters(rng, 10), v = random_letters(rng, 10);
    REQUIRE((q.model->evaluate_letters(u) == q.model->evaluate_letters(v)) ==
            (z.evaluate_letters(u) == z.evaluate_letters(v)));
  }
}

TEST_CASE("no torsion in the built-in models") {
  std::mt19937 rng(6);
  for (auto const& m : builtin_models())
    for (int i = 0; i < 2000; ++i) {
      auto g = m.evaluate_letters(random_letters(rng, 8));
      if (g == m.identity()) continue;
      for (long k = 1; k <= 12; ++k) REQUIRE(m.power(g, k) != m.identity());
    }
}

TEST_CASE("ball sizes") {
  CHECK(GroupModel::free2().ball(3).size() == 53);
  CHECK(GroupModel::free_abelian2().ball(3).size() == 25);
  CHECK(GroupModel::free_abelian2().ball(1).size() == 5);
}

TEST_CASE("parsing and printing elements") {
  for (auto const& m : builtin_models()) {
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
      auto g = m.evaluate_letters(random_letters(rng, 6));
      REQUIRE(m.parse_element(m.to_string(g)) == g);
    }
  }
  auto f = GroupModel::free2();
  CHECK(f.parse_set("1, x, y").size() == 3);
  CHECK_THROWS(f.parse_element("z"));
}

TEST_CASE("quotients with torsion") {
  auto q = instantiate_quotient(Presentation{2, {Word::parse("x^3"), Word::parse("y^2"), Word::parse("(xy)^2")}});
  REQUIRE(q.model);
  CHECK(q.model->power(q.model->gen_x(), 3) == q.model->identity());
  CHECK(q.model->gen_x() != q.model->identity());
  CHECK_THROWS_AS(GroupModel::quotient(Presentation{}, CompletionResult{}), undecidable_equality_error);
}
