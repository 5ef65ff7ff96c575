// Two-generator presentations and the decision procedures run on them:
// abelianization, coset enumeration, rewriting completion, and the
// A / T / * relator classifier used by the case tables.

#pragma once

#include <cstdlib>
#include <istream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "psl/coset_enum.hpp"
#include "psl/rewriting.hpp"
#include "psl/word.hpp"

namespace psl {

struct Presentation {
  int generators = 2;  // 1 means <x | ...>; y is then absent
  std::vector<Word> relators;

  std::vector<LetterString> relator_letters() const {
    std::vector<LetterString> out;
    for (auto const& r : relators) out.push_back(r.letters());
    return out;
  }

  std::string to_string() const {
    std::string out = generators == 1 ? "<x | " : "<x, y | ";
    for (std::size_t i = 0; i < relators.size(); ++i) {
      if (i) out += ", ";
      out += relators[i].to_string();
    }
    return out + ">";
  }
};

/// Relators separated by newlines or commas; '#' starts a comment; blank lines are skipped.
/// A line "generators 1" switches to the one-generator form.
inline Presentation parse_presentation(std::istream& in) {
  Presentation p;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    if (line.rfind("generators", 0) == 0) {
      p.generators = std::stoi(line.substr(10));
      if (p.generators != 1 && p.generators != 2) throw word_parse_error("generators must be 1 or 2");
      continue;
    }
    std::istringstream parts(line);
    for (std::string item; std::getline(parts, item, ',');) {
      Word w = Word::parse(item);
      if (w.empty()) throw word_parse_error("relator '" + item + "' is trivial");
      if (p.generators == 1 && w.occurrences(1) != 0)
        throw word_parse_error("relator uses y in a one-generator presentation");
      p.relators.push_back(w);
    }
  }
  return p;
}

inline Presentation parse_presentation(std::string const& text) {
  std::istringstream in(text);
  return parse_presentation(in);
}

// ---------------------------------------------------------------------------
// Abelianization.

struct Abelianization {
  int free_rank = 0;
  std::vector<long> torsion;  // invariant factors > 1, each dividing the next

  bool infinite() const noexcept { return free_rank > 0; }

  std::string to_string() const {
    std::string out;
    for (int i = 0; i < free_rank; ++i) out += out.empty() ? "Z" : " + Z";
    for (long t : torsion) out += (out.empty() ? "Z/" : " + Z/") + std::to_string(t);
    return out.empty() ? "0" : out;
  }
};

/// Smith normal form of the exponent-sum matrix via determinantal divisors:
/// d1 = gcd of the entries, d1*d2 = gcd of the 2x2 minors.
inline Abelianization abelianization(Presentation const& p) {
  long g1 = 0, g2 = 0;
  std::vector<std::pair<long, long>> rows;
  for (auto const& r : p.relators) {
    long a = r.exponent_sum(0), b = p.generators == 2 ? r.exponent_sum(1) : 0;
    rows.emplace_back(a, b);
    g1 = std::gcd(g1, std::gcd(std::labs(a), std::labs(b)));
  }
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      g2 = std::gcd(g2, std::labs(rows[i].first * rows[j].second - rows[i].second * rows[j].first));

  Abelianization out;
  std::vector<long> factors;
  if (g1 != 0) factors.push_back(g1);
  if (g2 != 0 && p.generators == 2) factors.push_back(g2 / g1);
  out.free_rank = p.generators - static_cast<int>(factors.size());
  for (long f : factors)
    if (f > 1) out.torsion.push_back(f);
  return out;
}

// ---------------------------------------------------------------------------
// Decision procedures on presentations.

inline CosetTable todd_coxeter(Presentation const& p, std::vector<Word> const& subgroup,
                               std::size_t max_cosets = 1000000,
                               CosetStrategy strategy = CosetStrategy::hlt) {
  std::vector<LetterString> sub;
  for (auto const& h : subgroup) sub.push_back(h.letters());
  return todd_coxeter(p.generators, p.relator_letters(), sub, max_cosets, strategy);
}

/// Completion of the presentation.  One-generator presentations get the
/// extra relator y so that the rewriting system lives on the same alphabet.
inline CompletionResult knuth_bendix(Presentation const& p, KnuthBendixCaps caps = {}) {
  auto rels = p.relator_letters();
  if (p.generators == 1) rels.push_back(LetterString(1, static_cast<char>(letters::y)));
  return knuth_bendix(rels, caps);
}

/// Shortlex completion first; if that runs out of budget, the recursive path
/// ordering with the same caps.  Some one-relator groups (a^2 = b^2,
/// a^3 = b^2) have no finite shortlex system but a six-rule recursive one.
inline CompletionResult complete(Presentation const& p, KnuthBendixCaps caps = {}) {
  caps.order = WordOrder::shortlex;
  auto r = knuth_bendix(p, caps);
  if (r.confluent) return r;
  caps.order = WordOrder::recursive;
  auto s = knuth_bendix(p, caps);
  if (s.confluent) return s;
  return r;
}

inline LetterString commutator_letters() { return parse_letters("xyXY"); }

// ---------------------------------------------------------------------------
// Relator classification.
//
// Context: x, y and 1 are pairwise distinct in a torsion-free group.  A
// relator w = base^k then forces base = 1, and the base decides the tag.

enum class RelatorTag { forces_torsion, forces_abelian, forces_degenerate, star };

inline char relator_mark(RelatorTag t) {
  switch (t) {
    case RelatorTag::forces_torsion: return 'T';
    case RelatorTag::forces_abelian:
    case RelatorTag::forces_degenerate: return 'A';
    case RelatorTag::star: return '*';
  }
  return '?';
}

inline char const* relator_tag_name(RelatorTag t) {
  switch (t) {
    case RelatorTag::forces_torsion: return "ForcesTorsion";
    case RelatorTag::forces_abelian: return "ForcesAbelian";
    case RelatorTag::forces_degenerate: return "ForcesDegenerate";
    case RelatorTag::star: return "Star";
  }
  return "?";
}

struct RelatorClass {
  RelatorTag tag = RelatorTag::star;
  std::string rule;   // which rule fired
  Word base;          // base of the maximal proper power, up to rotation
  long power = 1;
  // torsion: the generator forced to be trivial; degenerate: x y^-1 or x y
  // (the coincidence); abelian: the generator expressed through the other
  // one (cyclic cases) or the element it commutes with; star: empty.
  Word witness;
};

namespace detail {

inline int count_generator(LetterString const& s, int g) {
  int n = 0;
  for (char c : s) n += generator_of(static_cast<Letter>(c)) == g;
  return n;
}

inline std::optional<LetterString> period(LetterString const& body, std::size_t min_repeats) {
  for (std::size_t len = 1; len * min_repeats <= body.size(); ++len) {
    if (body.size() % len != 0) continue;
    bool ok = true;
    for (std::size_t i = len; i < body.size() && ok; ++i) ok = body[i] == body[i - len];
    if (ok) return body.substr(0, len);
  }
  return std::nullopt;
}

}  // namespace detail

inline RelatorClass classify_relator(Word const& w) {
  using detail::count_generator;
  RelatorClass out;
  LetterString s = cyclically_reduce_letters(w.letters());
  if (s.empty()) {
    out.rule = "trivial";
    return out;
  }
  // Maximal proper power over all rotations.
  LetterString base = s;
  long k = 1;
  for (auto const& r : rotations(s)) {
    auto pp = proper_power(Word::from_letters(r));
    if (pp.k > k) {
      k = pp.k;
      base = pp.base.letters();
    }
  }
  out.base = Word::from_letters(base);
  out.power = k;

  if (base.size() == 1) {
    out.tag = RelatorTag::forces_torsion;
    out.rule = "single-generator";
    out.witness = Word::generator(generator_of(static_cast<Letter>(base[0])));
    return out;
  }

  int cx = count_generator(base, 0), cy = count_generator(base, 1);
  if (cx == 1 && cy == 1) {
    // base is a rotation of x^{+-1} y^{+-1}; the group is cyclic, and if the
    // exponents have opposite signs it forces x = y outright.
    bool opposite = is_positive(static_cast<Letter>(base[0])) != is_positive(static_cast<Letter>(base[1]));
    out.tag = opposite ? RelatorTag::forces_degenerate : RelatorTag::forces_abelian;
    out.rule = opposite ? "coincidence" : "cyclic";
    out.witness = opposite ? Word::parse("xy^-1") : Word::parse("xy");
    return out;
  }
  if (cx == 1 || cy == 1) {
    // The generator occurring once is a word in the other one.
    out.tag = RelatorTag::forces_abelian;
    out.rule = "cyclic";
    out.witness = Word::generator(cx == 1 ? 0 : 1);
    return out;
  }
  if (base.size() == 4) {
    for (auto const& t : {base, inverse_letters(base)})
      for (auto const& r : rotations(t)) {
        auto a = static_cast<Letter>(r[0]), b = static_cast<Letter>(r[1]);
        if (generator_of(a) != generator_of(b) && static_cast<Letter>(r[2]) == inverse_letter(a) &&
            static_cast<Letter>(r[3]) == inverse_letter(b)) {
          out.tag = RelatorTag::forces_abelian;
          out.rule = "commutator";
          out.witness = Word::from_letters(commutator_letters());
          return out;
        }
      }
  }
  // base = v^m g with m >= 2, g a letter, and the generator other than g
  // occurring exactly once in v: then g = v^-m commutes with v, and v
  // together with g generates.
  for (auto const& t : {base, inverse_letters(base)})
    for (auto const& r : rotations(t)) {
      auto g = static_cast<Letter>(r.back());
      LetterString body = r.substr(0, r.size() - 1);
      auto v = detail::period(body, 2);
      if (!v) continue;
      if (count_generator(*v, 1 - generator_of(g)) == 1) {
        out.tag = RelatorTag::forces_abelian;
        out.rule = "root";
        out.witness = Word::from_letters(*v);
        return out;
      }
    }
  out.tag = RelatorTag::star;
  out.rule = "none";
  return out;
}

enum class Verdict { proved, refuted, inconclusive };

inline char const* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::proved: return "proved";
    case Verdict::refuted: return "refuted";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

/// Re-derives the consequence claimed by a classification inside the group
/// <x, y | base> by completion.  Star classes have nothing to verify.
inline Verdict verify_relator_class(RelatorClass const& c, KnuthBendixCaps caps = {}) {
  if (c.tag == RelatorTag::star) return Verdict::proved;
  Presentation p{2, {c.base}};
  auto kb = complete(p, caps);
  if (!kb.confluent) return Verdict::inconclusive;
  auto const& rs = kb.system;
  bool ok = false;
  switch (c.tag) {
    case RelatorTag::forces_torsion:
      ok = rs.rewrite(c.witness.letters()).empty();
      break;
    case RelatorTag::forces_degenerate:
      ok = rs.rewrite(c.witness.letters()).empty() && rs.rewrite(commutator_letters()).empty();
      break;
    case RelatorTag::forces_abelian:
      ok = rs.rewrite(commutator_letters()).empty();
      break;
    case RelatorTag::star:
      break;
  }
  return ok ? Verdict::proved : Verdict::refuted;
}

}  // namespace psl
