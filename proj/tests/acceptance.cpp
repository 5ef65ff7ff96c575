// Acceptance run: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "psl/algebra.hpp"
#include "psl/caselab.hpp"
#include "psl/json_io.hpp"
#include "psl/psgraph.hpp"

using namespace psl;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, std::string const& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

bool run_criterion(int n, double limit_seconds, std::function<Outcome()> const& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (std::exception const& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > limit_seconds) {
    o.ok = false;
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("time limit exceeded");
  }
  std::printf("criterion %d: %s (%.2f s, limit %.0f s)%s%s\n", n, o.ok ? "PASS" : "FAIL", secs, limit_seconds,
              o.detail.empty() ? "" : ": ", o.detail.c_str());
  std::fflush(stdout);
  return o.ok;
}

ElementSet random_subset(std::mt19937& rng, ElementSet const& pool, std::size_t n) {
  ElementSet s = pool;
  std::shuffle(s.begin(), s.end(), rng);
  s.resize(std::min(n, s.size()));
  return s;
}

std::string str(std::size_t v) { return std::to_string(v); }

Outcome table_c4() {
  Outcome o;
  auto t = enumerate_square_relators();
  o.require(t.rows.size() == 36, "expected 36 classes, got " + str(t.rows.size()));
  auto const& ref = square_reference();
  std::size_t mismatched = 0;
  for (auto const& r : t.rows) {
    if (r.index > ref.size()) {
      ++mismatched;
      continue;
    }
    char expected = ref[r.index - 1].mark == '?' ? 'A' : ref[r.index - 1].mark;
    bool same_relator = relator_key(r.relator) == relator_key(Word::parse(ref[r.index - 1].relator));
    if (!same_relator || r.mark != expected) ++mismatched;
  }
  o.require(mismatched == 0, str(mismatched) + " rows differ from the reference");
  o.detail = o.ok ? "36 classes, all A/T/* marks match" : o.detail;
  return o;
}

Outcome triangles() {
  Outcome o;
  auto t = enumerate_triangle_relators();
  o.require(t.rows.size() == 13, "expected 13 classes, got " + str(t.rows.size()));
  o.require(t.matches_reference(), "triangle table differs from the reference");
  std::set<LetterString> survivors, expected;
  for (auto const& r : t.rows)
    if (r.mark == '*') survivors.insert(relator_key(r.relator));
  for (auto s : {"yxyx^-1", "xyxy^-1", "x^2y^-2"}) expected.insert(relator_key(Word::parse(s)));
  o.require(survivors == expected, "survivors are not yxy=x, xyx=y, x^2=y^2");
  auto ex = triangle_exclusivity(t);
  o.require(ex.size() == 3, "expected 3 exclusivity pairs");
  for (auto const& e : ex) {
    bool decided = e.verdict.outcome == PairOutcome::finite || e.verdict.outcome == PairOutcome::torsion_witness;
    o.require(decided, "pair (" + str(e.i) + "," + str(e.j) + ") unresolved");
    if (e.verdict.outcome == PairOutcome::finite) {
      Presentation p{2, {t.row(e.i).relator, t.row(e.j).relator}};
      auto tc = todd_coxeter(p, {}, 1000000, CosetStrategy::felsch);
      o.require(tc.complete() && tc.index() == e.verdict.order, "coset enumeration disagrees on a pair order");
    }
  }
  if (o.ok) o.detail = "13 classes, survivors yxy=x, xyx=y, x^2=y^2, 3 exclusive pairs finite";
  return o;
}

Outcome pairs() {
  Outcome o;
  auto t = enumerate_square_relators();
  auto rows = eliminable_rows(t);
  o.require(rows.size() == 21, "expected 21 eliminable rows, got " + str(rows.size()));
  PairCaps caps;  // 10^6 cosets, 10^4 rules
  auto verdicts = pair_elimination(t, caps);
  o.require(verdicts.size() == 210, "expected 210 pairs, got " + str(verdicts.size()));

  std::set<std::pair<std::size_t, std::size_t>> torsion, listed;
  for (auto const& e : exceptional_pairs()) listed.insert({e.i, e.j});
  std::size_t resolved = 0, contrary = 0, confirmed = 0;
  std::vector<std::string> refuted;
  for (auto const& v : verdicts) {
    if (v.outcome == PairOutcome::torsion_witness) torsion.insert({v.i, v.j});
    if (v.contrary) ++contrary;
    bool exceptional = listed.count({v.i, v.j}) != 0;
    if (!exceptional && (v.outcome == PairOutcome::finite || v.outcome == PairOutcome::abelian_proved)) ++resolved;
    if (!exceptional) continue;
    auto const& lw = *std::find_if(exceptional_pairs().begin(), exceptional_pairs().end(),
                                   [&](PairWitness const& e) { return e.i == v.i && e.j == v.j; });
    Word listed_word = Word::parse(lw.word);
    bool match = v.outcome == PairOutcome::torsion_witness && v.exponent == lw.exponent &&
                 relator_key(v.witness) == relator_key(listed_word);
    if (match) {
      // independent check of w^k = 1 by completion
      Presentation p{2, {t.row(v.i).relator, t.row(v.j).relator}};
      auto kb = complete(p, {caps.max_rules, caps.max_passes});
      match = kb.system.rewrite(listed_word.pow(lw.exponent).letters()).empty();
    }
    if (match) ++confirmed;
    else
      refuted.push_back("(" + str(v.i) + "," + str(v.j) + ") listed " + power_string(listed_word, lw.exponent) +
                        ", found " + (v.outcome == PairOutcome::torsion_witness ? power_string(v.witness, v.exponent)
                                                                                 : pair_outcome_name(v.outcome)));
  }
  o.require(torsion == listed, "exceptional set differs from the 9 listed pairs");
  o.require(resolved >= 190, "only " + str(resolved) + " of 201 regular pairs resolved");
  o.require(contrary == 0, str(contrary) + " pairs contrary to the listed outcome");
  std::string joined;
  for (auto const& r : refuted) joined += (joined.empty() ? "" : ", ") + r;
  o.require(confirmed == listed.size(), str(confirmed) + "/9 listed witnesses confirmed; " + joined);
  std::string summary = "210 pairs, exceptional set equals listed 9, " + str(resolved) + "/201 regular resolved";
  o.detail = o.ok ? summary : summary + "; " + o.detail;
  return o;
}

Outcome families() {
  Outcome o;
  auto m = GroupModel::klein();
  auto a = m.gen_y(), b = m.multiply(m.gen_x(), m.gen_y());  // a^2 = b^2
  o.require(m.power(a, 2) == m.power(b, 2), "a^2 != b^2 in the Klein model");
  auto size_of = [&](std::string const& set) {
    auto B = family_set(m, set, a, b);
    ElementSet C{m.identity(), a, b};
    return product_stats(m, B, C).BC.size();
  };
  for (auto const& f : atom_families()) {
    if (f.id != "4.9" && f.id != "5" && f.id != "6") continue;
    for (auto const& s : f.sets) {
      auto n = size_of(s);
      o.require(n == f.expected_product, "family " + f.id + " set {" + s + "} has |BC| = " + str(n));
    }
  }
  o.require(size_of("e,a^-1,b^-1,b^-1a") == 8, "4-atom |BC| != 8");
  std::size_t five = 0;
  for (auto const& f : atom_families())
    if (f.id == "5") five = f.sets.size();
  o.require(five == 3, "expected three 5-atom sets");
  for (auto const& f : verify_atom_families())
    o.require(f.ok(), "family " + f.family.id + " failed verification " + f.notice);
  auto seventh = klein_seventh_element(4);
  o.require(seventh.min_product_size == 12, "7-set minimum |BC| = " + str(seventh.min_product_size));
  auto desk = run_desk_check(default_desk_checks().front());
  o.require(desk.min_product_size && *desk.min_product_size == 12, "restricted 7-set search minimum is not 12");
  if (o.ok) o.detail = "4-atom 8, 5-atoms 9, 6-atom 10, 7-sets min 12 (radius 4, size 7)";
  return o;
}

Outcome desk_checks() {
  Outcome o;
  std::string parts;
  for (auto const& d : theorem_desk_checks(default_desk_checks())) {
    o.require(d.min_product_size.has_value(), d.name + " produced no sets");
    if (!d.min_product_size) continue;
    o.require(d.holds(), d.name + ": min |BC| = " + str(*d.min_product_size) + " violates " + d.claim);
    parts += (parts.empty() ? "" : ", ") + d.name + " min " + str(*d.min_product_size) + " (radius " +
             std::to_string(d.radius) + ")";
  }
  o.detail = o.ok ? parts : o.detail;
  return o;
}

Outcome properties() {
  Outcome o;
  std::mt19937 rng(20240601);
  std::vector<GroupModel> models{GroupModel::free2(), GroupModel::free_abelian2(), GroupModel::klein(),
                                 GroupModel::heisenberg()};
  for (auto const& m : models) {
    auto pool = m.ball(3);
    for (int i = 0; i < 1000; ++i) {
      auto B = random_subset(rng, pool, 1 + rng() % 10);
      auto C = random_subset(rng, pool, 2 + rng() % 4);
      if (std::find(C.begin(), C.end(), m.identity()) == C.end()) C[0] = m.identity();
      auto s = product_stats(m, B, C);
      std::set<GroupElement> naive;
      for (auto const& x : B)
        for (auto const& y : C) naive.insert(m.multiply(x, y));
      if (naive.size() != s.BC.size() || !s.invariant_failure().empty()) {
        o.require(false, m.name() + ": product_stats disagrees with the naive count");
        break;
      }
      if (!kemperman_bound_holds(s)) o.require(false, m.name() + ": |BC| >= |B|+|C|-1 violated");
      if (auto h = hamidoune_bound_holds(m, s); h && !*h) o.require(false, m.name() + ": |BC| >= |B|+|C|+1 violated");
    }
  }
  std::size_t cayley = 0;
  while (cayley < 100) {
    auto const& m = models[rng() % models.size()];
    auto pool = m.ball(3);
    ElementSet C{m.identity()};
    while (C.size() < 3) {
      auto c = pool[rng() % pool.size()];
      if (std::find(C.begin(), C.end(), c) == C.end()) C.push_back(c);
    }
    if (!quotients_distinct(m, C) && !generates_nonabelian(m, C)) continue;
    auto B = random_subset(rng, pool, 4 + rng() % 8);
    try {
      if (!cayley_induced_check(m, B, C).ok()) o.require(false, "Cayley comparison failed");
    } catch (claim_contradiction const& e) {
      o.require(false, e.what());
    }
    ++cayley;
  }
  std::size_t graphs = 0, tuples = 0;
  for (auto const& m : {GroupModel::free2(), GroupModel::heisenberg()}) {
    ElementSet C{m.identity(), m.gen_x(), m.gen_y()};
    auto pool = m.ball(2);
    for (int i = 0; i < 200; ++i, ++graphs) {
      auto g = build_graph(m, random_subset(rng, pool, 6 + rng() % 8), C);
      for (auto const& p : named_patterns())
        if (find_pattern(g, p)) o.require(false, p.name + " embeds in a " + m.name() + " graph");
      for (std::size_t n : {3, 4})
        for (auto const& c : cycles(m, g, n)) {
          ++tuples;
          if (relator_value(m, C, c.tuple) != m.identity()) o.require(false, "cycle tuple with r(T) != 1");
        }
    }
  }
  auto cert = positive_control_certificate();
  o.require(verify_certificate(cert), "positive control rejected");
  auto mutated = cert;
  mutated.beta.add(mutated.beta.model().gen_x(), 1);
  o.require(!verify_certificate(mutated), "mutated certificate accepted");
  if (o.ok)
    o.detail = "bounds on 4x1000 pairs, Cayley on 100 cases, no patterns in " + str(graphs) + " graphs, " +
               str(tuples) + " tuples with r(T) = 1, certificate control ok";
  return o;
}

}  // namespace

int main() {
  std::printf("scope: finite computations in the stated universes and caps; the global statements over all "
              "torsion-free groups are not decided here\n");
  bool ok = true;
  ok &= run_criterion(1, 5, table_c4);
  ok &= run_criterion(2, 30, triangles);
  ok &= run_criterion(3, 600, pairs);
  ok &= run_criterion(4, 300, families);
  ok &= run_criterion(5, 900, desk_checks);
  ok &= run_criterion(6, 600, properties);
  return ok ? 0 : 1;
}
