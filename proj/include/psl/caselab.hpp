// Finite case analyses for C = {1, x, y}: the triangle and square relator
// tables, elimination of pairs of square relators, the small atom
// families, and bounded searches behind the main inequalities.

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "psl/group.hpp"
#include "psl/presentation.hpp"
#include "psl/productset.hpp"
#include "psl/psgraph.hpp"

namespace psl {

// ---------------------------------------------------------------------------
// Frozen reference tables.

struct ReferenceRow {
  char const* relator;  // reference spelling
  char mark;            // 'A', 'T', '*', or '?' when the source leaves it open
};

/// The 36 relators of type (ii) squares and their E column.
inline std::vector<ReferenceRow> const& square_reference() {
  static std::vector<ReferenceRow> const rows = {
      {"x^-4", 'T'},
      {"x^-3y^-1", 'A'},
      {"x^-3yx^-1", 'A'},
      {"x^-2y^-2", '*'},
      {"x^-2y^-1xy^-1", '*'},
      {"x^-2yxy^-1", '*'},
      {"x^-2y^2x^-1", '*'},
      {"x^-2yx^-1y^-1", '*'},
      {"x^-1(x^-1y)^2x^-1", '*'},
      {"(x^-1y^-1)^2", 'A'},
      {"x^-1y^-1x^-1yx^-1", '*'},
      {"x^-1y^-3", 'A'},
      {"x^-1y^-2xy^-1", '*'},
      {"x^-1y^-1x^2y^-1", '*'},
      {"x^-1y^-1xyx^-1", '*'},
      {"x^-1y^-1xy^-2", '*'},
      {"x^-1(y^-1x)^2y^-1", '*'},
      {"x^-1yxy^-2", '*'},
      {"x^-1y(xy^-1)^2", '*'},
      {"x^-1y^2xy^-1", '*'},
      {"x^-1y^3x^-1", '*'},
      {"x^-1y^2x^-1y^-1", '*'},
      {"x^-1y(yx^-1)^2", '*'},
      {"(x^-1yx^-1)^2", 'A'},
      {"x^-1yx^-1y^-2", '*'},
      {"x^-1yx^-1y^-1xy^-1", '*'},
      {"(x^-1y)^2xy^-1", '*'},
      {"(x^-1y)^2yx^-1", '*'},
      {"(x^-1y)^2x^-1y^-1", '*'},
      {"(x^-1y)^3x^-1", 'A'},
      {"y^-4", 'T'},
      {"y^-3xy^-1", 'A'},
      {"y^-1(y^-1x)^2y^-1", '*'},
      {"(y^-1xy^-1)^2", 'A'},
      {"(y^-1x)^3y^-1", 'A'},
      {"(xy^-1)^4", 'A'},
  };
  return rows;
}

/// The set of 13 relators of type (ii) triangles.  Element 12 is not
/// assigned a consequence in the source.
inline std::vector<ReferenceRow> const& triangle_reference() {
  static std::vector<ReferenceRow> const rows = {
      {"x^-3", 'T'},         {"y^-1xy^-1xy^-1", 'A'}, {"x^-2y^-1", 'A'}, {"x^-1y^-2", 'A'},
      {"x^-1y^-1xy^-1", '*'}, {"x^-1yxy^-1", 'A'},    {"x^-1yx^-1y^-1", '*'}, {"x^-1yx^-1yx^-1", 'A'},
      {"y^-3", 'T'},         {"y^-2xy^-1", 'A'},      {"x^-1y^2x^-1", '*'}, {"(x^-1y)^3", '?'},
      {"x^-2yx^-1", 'A'},
  };
  return rows;
}

/// Square-table rows that force <C> to be the Klein bottle group.
inline std::array<std::size_t, 3> constexpr klein_rows{4, 9, 33};

/// Exceptional pairs of starred rows and the torsion each one forces.
struct PairWitness {
  std::size_t i, j;
  char const* word;
  long exponent;
};

inline std::vector<PairWitness> const& exceptional_pairs() {
  static std::vector<PairWitness> const rows = {
      {6, 11, "x", 5},      {6, 15, "x", 3},      {8, 15, "x", 5},
      {13, 18, "y", 5},     {16, 20, "y", 5},     {18, 20, "y", 3},
      {19, 27, "x^-1y", 3}, {19, 28, "yx^-1", 3}, {23, 27, "xy^-1", 3},
  };
  return rows;
}

// ---------------------------------------------------------------------------
// Relator tables.

/// Key identifying a relator up to rotation and inversion.
inline LetterString relator_key(Word const& w) { return cyclic_canonical(w.letters()); }

struct CaseRow {
  std::size_t index = 0;  // 1-based, order of canonical tuples
  CycleTuple tuple;       // canonical
  std::size_t class_size = 0;
  Word relator;           // r(T) of the canonical tuple
  RelatorClass cls;
  char mark = '*';
  std::optional<std::size_t> reference_index;  // matching frozen row
};

struct CaseTable {
  std::size_t cycle_length = 0;
  std::size_t tuples = 0;  // type (ii) tuples enumerated
  std::vector<CaseRow> rows;
  std::vector<std::string> mismatches;  // empty when the table matches the frozen copy

  CaseRow const& row(std::size_t index) const { return rows.at(index - 1); }
  bool matches_reference() const noexcept { return mismatches.empty(); }
};

namespace detail {

inline void enumerate_type_ii(std::size_t n, std::vector<int>& cur, std::set<CycleTuple>& classes,
                              std::map<CycleTuple, std::size_t>& sizes, std::size_t& count) {
  if (cur.size() == 2 * n) {
    if (cur.back() == cur.front()) return;
    ++count;
    auto cls = tuple_class(CycleTuple{cur});
    classes.insert(cls);
    ++sizes[cls];
    return;
  }
  for (int h = 0; h < 3; ++h) {
    if (!cur.empty() && cur.back() == h) continue;
    cur.push_back(h);
    enumerate_type_ii(n, cur, classes, sizes, count);
    cur.pop_back();
  }
}

inline CaseTable build_case_table(std::size_t n, std::vector<ReferenceRow> const& ref, bool positional) {
  CaseTable t;
  t.cycle_length = n;
  std::set<CycleTuple> classes;
  std::map<CycleTuple, std::size_t> sizes;
  std::vector<int> cur;
  enumerate_type_ii(n, cur, classes, sizes, t.tuples);

  std::map<LetterString, std::size_t> ref_index;
  for (std::size_t i = 0; i < ref.size(); ++i) ref_index[relator_key(Word::parse(ref[i].relator))] = i + 1;

  std::size_t idx = 0;
  for (auto const& c : classes) {
    CaseRow r;
    r.index = ++idx;
    r.tuple = c;
    r.class_size = sizes[c];
    r.relator = relator_word(c);
    r.cls = classify_relator(r.relator);
    r.mark = relator_mark(r.cls.tag);
    if (auto it = ref_index.find(relator_key(r.relator)); it != ref_index.end()) r.reference_index = it->second;
    t.rows.push_back(std::move(r));
  }

  auto& mm = t.mismatches;
  if (t.rows.size() != ref.size())
    mm.push_back("class count " + std::to_string(t.rows.size()) + ", expected " + std::to_string(ref.size()));
  std::set<std::size_t> hit;
  for (auto const& r : t.rows) {
    std::string where = "row " + std::to_string(r.index) + " (" + r.relator.to_string() + ")";
    if (!r.reference_index) {
      mm.push_back(where + ": no frozen relator matches");
      continue;
    }
    auto const& fr = ref[*r.reference_index - 1];
    if (!hit.insert(*r.reference_index).second) mm.push_back(where + ": frozen row matched twice");
    if (positional && *r.reference_index != r.index)
      mm.push_back(where + ": matches frozen row " + std::to_string(*r.reference_index));
    if (fr.mark == '?') {
      if (r.mark == '*') mm.push_back(where + ": frozen row is unassigned but derived mark is *");
    } else if (fr.mark != r.mark) {
      mm.push_back(where + ": mark " + std::string(1, r.mark) + ", frozen " + std::string(1, fr.mark));
    }
  }
  return t;
}

}  // namespace detail

/// Type (ii) squares over C = {1, x, y} up to equivalence.  Rows are in the
/// order of canonical tuples, which is the order of the frozen table.
inline CaseTable enumerate_square_relators() {
  return detail::build_case_table(4, square_reference(), true);
}

/// Type (ii) triangles over C = {1, x, y} up to equivalence.  Rows carry
/// the index of the matching frozen element.
inline CaseTable enumerate_triangle_relators() {
  auto t = detail::build_case_table(3, triangle_reference(), false);
  std::sort(t.rows.begin(), t.rows.end(),
            [](CaseRow const& a, CaseRow const& b) { return a.reference_index < b.reference_index; });
  for (std::size_t i = 0; i < t.rows.size(); ++i) t.rows[i].index = i + 1;
  return t;
}

// ---------------------------------------------------------------------------
// Two-relator decisions.

enum class PairOutcome { finite, abelian_proved, torsion_witness, unresolved };

inline char const* pair_outcome_name(PairOutcome o) {
  switch (o) {
    case PairOutcome::finite: return "Finite";
    case PairOutcome::abelian_proved: return "AbelianProved";
    case PairOutcome::torsion_witness: return "TorsionWitness";
    case PairOutcome::unresolved: return "Unresolved";
  }
  return "?";
}

struct PairCaps {
  std::size_t max_cosets = 1000000;
  std::size_t max_rules = 10000;
  std::size_t max_passes = 50;
  std::size_t witness_cosets = 100000;  // coset tables used to show w != 1
  CosetStrategy strategy = CosetStrategy::hlt;
  std::size_t workers = 1;
};

struct PairVerdict {
  std::size_t i = 0, j = 0;
  PairOutcome outcome = PairOutcome::unresolved;
  std::uint64_t order = 0;  // Finite
  Word witness;             // TorsionWitness: witness^exponent = 1, witness != 1
  long exponent = 0;
  std::string method;       // how the verdict was obtained
  std::string abelianization;
  bool expected_exceptional = false;
  bool contrary = false;    // evidence against the expected outcome
  std::string note;
};

namespace detail {

/// Proves w^k = 1 by rewriting with the (possibly incomplete) system and
/// w^d != 1 for every proper divisor d of k by a coset table on which w^d
/// acts nontrivially.
inline std::optional<std::string> prove_torsion(Presentation const& p, RewritingSystem const& rs, bool confluent,
                                                Word const& w, long k, PairCaps const& caps) {
  if (!rs.rewrite(w.pow(k).letters()).empty()) return std::nullopt;
  std::vector<long> divisors;
  for (long d = 1; d < k; ++d)
    if (k % d == 0) divisors.push_back(d);
  std::string how = "rewrite(w^k)=1";
  for (long d : divisors) {
    auto wd = w.pow(d).letters();
    if (confluent && !rs.rewrite(wd).empty()) {
      how += ", w^" + std::to_string(d) + " irreducible";
      continue;
    }
    bool shown = false;
    for (auto const& sub : {"y", "x", "xy", "xy^-1", "x^2", "y^2"}) {
      auto tab = todd_coxeter(p, {Word::parse(sub)}, caps.witness_cosets, caps.strategy);
      if (!tab.complete()) continue;
      auto perm = tab.permutation(wd);
      for (std::size_t c = 0; c < perm.size() && !shown; ++c) shown = perm[c] != static_cast<std::int32_t>(c);
      if (shown) {
        how += std::string(", w^") + std::to_string(d) + " moves cosets of <" + sub + ">";
        break;
      }
    }
    if (!shown) return std::nullopt;
  }
  return how;
}

inline PairVerdict decide_pair(CaseTable const& table, std::size_t i, std::size_t j, PairCaps const& caps) {
  PairVerdict v;
  v.i = i;
  v.j = j;
  Presentation p{2, {table.row(i).relator, table.row(j).relator}};
  auto ab = abelianization(p);
  v.abelianization = ab.to_string();
  std::optional<PairWitness> expected;
  for (auto const& e : exceptional_pairs())
    if (e.i == i && e.j == j) expected = e;
  v.expected_exceptional = expected.has_value();

  bool infinite = ab.infinite();
  if (!infinite) {
    auto tab = todd_coxeter(p, {}, caps.max_cosets, caps.strategy);
    if (tab.complete()) {
      v.outcome = PairOutcome::finite;
      v.order = tab.index();
      v.method = "todd-coxeter";
      v.contrary = v.expected_exceptional;
      return v;
    }
  }
  KnuthBendixCaps kc;
  kc.max_rules = caps.max_rules;
  kc.max_passes = caps.max_passes;
  auto kb = complete(p, kc);
  if (kb.system.rewrite(commutator_letters()).empty()) {
    v.outcome = PairOutcome::abelian_proved;
    v.method = std::string("knuth-bendix") + (kb.confluent ? "" : " (partial system)");
    v.contrary = v.expected_exceptional;
    return v;
  }
  bool nonabelian_proved = kb.confluent;

  // The listed witness first, then short words of small order.
  std::vector<std::pair<Word, long>> candidates;
  if (expected) candidates.emplace_back(Word::parse(expected->word), expected->exponent);
  for (auto const* w : {"x", "y", "x^-1y", "yx^-1", "xy^-1", "xy"})
    for (long k = 2; k <= 6; ++k) {
      std::pair<Word, long> c{Word::parse(w), k};
      if (std::find(candidates.begin(), candidates.end(), c) == candidates.end()) candidates.push_back(c);
    }
  std::string refuted;
  if (expected && kb.confluent) {
    Word w = Word::parse(expected->word);
    if (!kb.system.rewrite(w.pow(expected->exponent).letters()).empty())
      refuted = "listed witness (" + w.to_string() + ")^" + std::to_string(expected->exponent) +
                " refuted by a confluent system";
  }
  for (auto const& [w, k] : candidates) {
    if (auto how = prove_torsion(p, kb.system, kb.confluent, w, k, caps)) {
      v.outcome = PairOutcome::torsion_witness;
      v.witness = w;
      v.exponent = k;
      v.method = *how;
      if (!expected) {
        v.note = "torsion witness for a pair outside the listed set";
      } else if (Word::parse(expected->word) != w || expected->exponent != k) {
        v.contrary = !refuted.empty();
        v.note = refuted.empty() ? "witness differs from the listed one" : refuted;
      }
      return v;
    }
  }
  if (expected) {
    v.note = refuted.empty() ? "listed witness not confirmed" : refuted;
    v.contrary = !refuted.empty();
  } else if (infinite && nonabelian_proved) {
    v.contrary = true;
    v.note = "infinite abelianization and a confluent system with nontrivial commutator";
  }
  v.method = kb.confluent ? "knuth-bendix (confluent)" : "caps exhausted";
  return v;
}

}  // namespace detail

/// Starred square rows other than the Klein rows.
inline std::vector<std::size_t> eliminable_rows(CaseTable const& squares) {
  std::vector<std::size_t> out;
  for (auto const& r : squares.rows)
    if (r.mark == '*' && std::find(klein_rows.begin(), klein_rows.end(), r.index) == klein_rows.end())
      out.push_back(r.index);
  return out;
}

/// Every unordered pair of distinct eliminable rows, decided in the order
/// finite (coset enumeration, skipped when the abelianization is
/// infinite), abelian (commutator rewrites to 1), torsion (listed words).
inline std::vector<PairVerdict> pair_elimination(CaseTable const& squares, PairCaps const& caps = {}) {
  auto rows = eliminable_rows(squares);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = a + 1; b < rows.size(); ++b) pairs.emplace_back(rows[a], rows[b]);
  std::vector<PairVerdict> out(pairs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      auto t = next.fetch_add(1);
      if (t >= pairs.size()) return;
      out[t] = detail::decide_pair(squares, pairs[t].first, pairs[t].second, caps);
    }
  };
  std::size_t nworkers = std::max<std::size_t>(1, caps.workers);
  if (nworkers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < nworkers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Mutual exclusivity of the surviving triangle relators.

struct ExclusivityCheck {
  std::size_t i = 0, j = 0;  // indices into the triangle table
  PairVerdict verdict;
};

/// For each pair of starred triangle relators, decides the two-relator
/// group with the same procedure as pair_elimination.
inline std::vector<ExclusivityCheck> triangle_exclusivity(CaseTable const& triangles, PairCaps const& caps = {}) {
  std::vector<std::size_t> stars;
  for (auto const& r : triangles.rows)
    if (r.mark == '*') stars.push_back(r.index);
  std::vector<ExclusivityCheck> out;
  for (std::size_t a = 0; a < stars.size(); ++a)
    for (std::size_t b = a + 1; b < stars.size(); ++b) {
      ExclusivityCheck e;
      e.i = stars[a];
      e.j = stars[b];
      e.verdict = detail::decide_pair(triangles, e.i, e.j, caps);
      e.verdict.expected_exceptional = false;
      e.verdict.contrary = e.verdict.outcome == PairOutcome::unresolved && e.verdict.contrary;
      out.push_back(std::move(e));
    }
  return out;
}

// ---------------------------------------------------------------------------
// Atom families.

struct AtomFamily {
  std::string id;        // "4.1" .. "4.9", "5", "6"
  std::string relation;  // relator in a, b
  std::vector<std::string> sets;  // B as words in a, b
  std::size_t expected_product = 0;
  // Witness group <x, y | model_relation> with a, b given as words in x, y;
  // empty means the relation itself with a = x, b = y.
  std::string model_relation = {}, a_word = {}, b_word = {};
};

inline std::vector<AtomFamily> const& atom_families() {
  static std::vector<AtomFamily> const all = {
      {"4.1", "a^3b^-2", {"e,b,a,a^2"}, 8},
      {"4.2", "aba^-2b", {"e,a,b^-1,b^-1a"}, 8},
      // a = cb turns the relation into c^2 b c^-1 b, which completes
      {"4.3", "ab^-1aba^-1b", {"e,a,ba^-1,aba^-1"}, 8, "x^2yx^-1y", "xy", "y"},
      {"4.4", "ba^2b^-1a", {"e,a,b^-1,b^-1a^-1"}, 8},
      {"4.5", "b^-1a^2ba", {"e,a^-1,a^-2,b"}, 8},
      {"4.6", "ba^-2b^-1a", {"e,a,b^-1,b^-1a"}, 8},
      {"4.7", "a^-2bab^-1", {"e,a^-1,a^-2,ba^-1"}, 8},
      {"4.8", "a^-2b^-2", {"e,a^-1,a^-2,b"}, 8},
      {"4.9", "a^-2b^2",
       {"e,a^-1,b^-1,ab^-1", "e,a^-1,b^-1a,ab^-1", "e,a,b,a^-1", "e,a^-1,a,ab^-1", "e,a,b^-1,ba^-1",
        "e,a^-1,b^-1,b^-1a"},
       8},
      {"5", "a^-2b^2", {"e,a^-1,b^-1,b^-1a,ab^-1", "e,a,b,a^-1,ab^-1", "e,a^-1,a,ab^-1,aba^-1"}, 9},
      {"6", "a^-2b^2", {"e,a^-1,b^-1,b^-1a,ab^-1,a^-2"}, 10},
  };
  return all;
}

struct FamilySetCheck {
  std::string set;
  ElementSet B;
  std::size_t product_size = 0;
  std::map<std::size_t, std::size_t> fiber_histogram;
  bool ok = false;
};

struct FamilyCheck {
  AtomFamily family;
  std::string model;          // "klein" or the quotient name
  bool model_available = false;
  std::string notice;         // why a family was skipped
  bool relation_holds = false;
  bool nonabelian = false;
  std::vector<FamilySetCheck> sets;
  bool ok() const {
    if (!model_available) return false;
    for (auto const& s : sets)
      if (!s.ok) return false;
    return relation_holds && nonabelian;
  }
};

/// A word in a, b read as the same word in x, y.
inline Word ab_word(std::string text) {
  for (auto& ch : text) {
    if (ch == 'a') ch = 'x';
    else if (ch == 'b') ch = 'y';
  }
  return Word::parse(text);
}

/// Witness model for a family: the Klein model when the relation is
/// a^2 = b^2 (with a = u, b = v), otherwise the completed quotient.
inline std::optional<GroupModel> family_model(AtomFamily const& f, std::string& notice, KnuthBendixCaps caps = {}) {
  Word rel = ab_word(f.model_relation.empty() ? f.relation : f.model_relation);
  if (f.model_relation.empty() && relator_key(rel) == relator_key(Word::parse("x^-2y^2"))) return GroupModel::klein();
  Presentation p{2, {rel}};
  auto kb = complete(p, caps);
  if (!kb.confluent) {
    notice = "completion of " + p.to_string() + " did not finish within the caps";
    return std::nullopt;
  }
  return GroupModel::quotient(p, std::move(kb), p.to_string());
}

/// Comma-separated words in a, b ("e" for the identity) evaluated at a, b.
inline ElementSet family_set(GroupModel const& m, std::string const& text, GroupElement const& a,
                             GroupElement const& b) {
  ElementSet out;
  for (auto piece : detail::split(text, ',')) {
    auto t = std::string(detail::trim(piece));
    out.push_back(t == "e" ? m.identity() : m.substitute(ab_word(t).letters(), a, b));
  }
  return out;
}

inline FamilyCheck verify_family(AtomFamily const& f, KnuthBendixCaps caps = {}) {
  FamilyCheck out;
  out.family = f;
  auto m = family_model(f, out.notice, caps);
  if (!m) return out;
  out.model_available = true;
  out.model = m->kind() == ModelKind::klein ? "klein" : m->name();
  GroupElement a = m->generator_map().at('a'), b = m->generator_map().at('b');
  if (!f.a_word.empty()) {
    a = m->evaluate(Word::parse(f.a_word));
    b = m->evaluate(Word::parse(f.b_word));
  }
  out.relation_holds = m->substitute(ab_word(f.relation).letters(), a, b) == m->identity();
  out.nonabelian = !m->commute(a, b);
  ElementSet C{m->identity(), a, b};
  for (auto const& s : f.sets) {
    FamilySetCheck sc;
    sc.set = s;
    sc.B = family_set(*m, s, a, b);
    auto st = product_stats(*m, sc.B, C);
    sc.product_size = st.BC.size();
    sc.fiber_histogram = st.histogram();
    sc.ok = sc.product_size == f.expected_product && sc.product_size == sc.B.size() + 4;
    out.sets.push_back(std::move(sc));
  }
  return out;
}

inline std::vector<FamilyCheck> verify_atom_families(KnuthBendixCaps caps = {500, 20}) {
  std::vector<FamilyCheck> out;
  for (auto const& f : atom_families()) out.push_back(verify_family(f, caps));
  return out;
}

struct SeventhElementCheck {
  std::size_t candidates = 0;        // ball elements outside the 6-atom
  std::size_t min_product_size = 0;  // min |BC| over the 7-sets
  bool ok = false;                   // every extension has |BC| >= 12
};

/// Adds each element of the ball to the Klein 6-atom and records the
/// smallest resulting product set.
inline SeventhElementCheck klein_seventh_element(int radius) {
  auto m = GroupModel::klein();
  auto six = m.parse_set(atom_families().back().sets.front());
  ElementSet C{m.identity(), m.generator_map().at('a'), m.generator_map().at('b')};
  SeventhElementCheck out;
  out.min_product_size = SIZE_MAX;
  for (auto const& g : m.ball(radius)) {
    if (std::find(six.begin(), six.end(), g) != six.end()) continue;
    ++out.candidates;
    auto B = six;
    B.push_back(g);
    out.min_product_size = std::min(out.min_product_size, product_stats(m, B, C).BC.size());
  }
  out.ok = out.candidates > 0 && out.min_product_size >= 12;
  return out;
}

// ---------------------------------------------------------------------------
// Bounded searches.

struct DeskCheck {
  std::string name;
  std::string claim;       // inequality checked
  std::string model;
  ElementSet C;
  std::string C_text;
  std::size_t set_size = 0;
  int radius = 0;
  std::size_t universe_size = 0;
  std::optional<std::size_t> min_product_size;
  std::size_t bound = 0;   // claim: min |BC| >= bound
  std::optional<std::size_t> exact;  // expected exact value, if any
  std::uint64_t nodes = 0;
  double seconds = 0;
  bool holds() const {
    if (!min_product_size) return false;
    if (exact) return *min_product_size == *exact;
    return *min_product_size >= bound;
  }
};

struct DeskCheckSpec {
  std::string name;
  std::string claim;
  ModelKind model;
  std::string C;
  std::size_t set_size;
  int radius;
  std::size_t bound;
  std::optional<std::size_t> exact;
};

inline std::vector<DeskCheckSpec> default_desk_checks() {
  return {
      {"klein-7", "|BC| >= |B| + 5 with equality", ModelKind::klein, "e,u,v", 7, 4, 12, 12},
      {"free2-3-7", "|BC| >= |B| + 5", ModelKind::free2, "e,x,y", 7, 4, 12, std::nullopt},
      {"free2-4-7a", "kappa_7(C) >= 6", ModelKind::free2, "e,x,y,xy", 7, 4, 13, std::nullopt},
      {"free2-4-7b", "kappa_7(C) >= 6", ModelKind::free2, "e,x,y,x^-1y", 7, 4, 13, std::nullopt},
      {"free2-4-7c", "kappa_7(C) >= 6", ModelKind::free2, "e,x,y,x^2", 7, 4, 13, std::nullopt},
      {"heisenberg-3-5", "|BC| >= |B| + 5", ModelKind::heisenberg, "e,x,y", 5, 4, 10, std::nullopt},
  };
}

inline GroupModel model_of_kind(ModelKind k) {
  switch (k) {
    case ModelKind::free2: return GroupModel::free2();
    case ModelKind::free_abelian2: return GroupModel::free_abelian2();
    case ModelKind::klein: return GroupModel::klein();
    case ModelKind::heisenberg: return GroupModel::heisenberg();
    case ModelKind::quotient: break;
  }
  throw std::invalid_argument("quotient models need a presentation");
}

/// Exhaustive search over sets B with 1 in B and |B| = set_size inside the
/// ball of the given radius.  Translating B so that it contains 1 loses
/// nothing, so only the radius restricts the search.
inline DeskCheck run_desk_check(DeskCheckSpec const& spec, std::size_t workers = 1) {
  auto start = std::chrono::steady_clock::now();
  auto m = model_of_kind(spec.model);
  DeskCheck d;
  d.name = spec.name;
  d.claim = spec.claim;
  d.model = model_kind_name(spec.model);
  d.C = m.parse_set(spec.C);
  d.C_text = spec.C;
  d.set_size = spec.set_size;
  d.radius = spec.radius;
  d.bound = spec.bound;
  d.exact = spec.exact;
  auto U = m.ball(spec.radius);
  d.universe_size = U.size();
  KappaOptions opt;
  opt.workers = workers;
  opt.max_witnesses = 4;
  opt.universe_label = "ball radius " + std::to_string(spec.radius);
  auto rep = kappa_search(m, d.C, spec.set_size, U, spec.set_size, opt);
  d.min_product_size = rep.min_product_size();
  d.nodes = rep.nodes;
  d.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return d;
}

inline std::vector<DeskCheck> theorem_desk_checks(std::vector<DeskCheckSpec> const& specs, std::size_t workers = 1) {
  std::vector<DeskCheck> out;
  for (auto const& s : specs) out.push_back(run_desk_check(s, workers));
  return out;
}

}  // namespace psl
