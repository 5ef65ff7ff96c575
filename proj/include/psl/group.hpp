// Concrete groups with solvable word problem.
//
// Every model stores its elements in normal form, so equality of elements is
// equality of payloads and elements can be hashed and ordered directly.
//
//   Free2              reduced words in x, y
//   FreeAbelian2       (m, n), componentwise addition
//   KleinBottle        (m, n), (m1,n1)(m2,n2) = (m1 + (-1)^n1 m2, n1 + n2)
//   Heisenberg         (a, b, c) for the unitriangular matrix [[1,a,c],[0,1,b],[0,0,1]]
//   RewritingQuotient  words irreducible under a confluent rewriting system

#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>
#include <vector>

#include "psl/presentation.hpp"
#include "psl/rewriting.hpp"
#include "psl/word.hpp"

namespace psl {

struct IntPair {
  long m = 0, n = 0;
  friend auto operator<=>(IntPair const&, IntPair const&) = default;
};

struct KleinPair {
  long m = 0, n = 0;
  friend auto operator<=>(KleinPair const&, KleinPair const&) = default;
};

struct HeisenbergTriple {
  long a = 0, b = 0, c = 0;
  friend auto operator<=>(HeisenbergTriple const&, HeisenbergTriple const&) = default;
};

struct QuotientWord {
  LetterString w;
  friend bool operator==(QuotientWord const& p, QuotientWord const& q) { return p.w == q.w; }
  friend std::strong_ordering operator<=>(QuotientWord const& p, QuotientWord const& q) {
    if (p.w.size() != q.w.size()) return p.w.size() <=> q.w.size();
    return p.w <=> q.w;
  }
};

/// Free-group elements order shortlex on letters rather than by syllables.
struct FreeWord {
  Word w;
  friend bool operator==(FreeWord const& p, FreeWord const& q) { return p.w == q.w; }
  friend std::strong_ordering operator<=>(FreeWord const& p, FreeWord const& q) {
    auto a = p.w.letters(), b = q.w.letters();
    if (a.size() != b.size()) return a.size() <=> b.size();
    return a <=> b;
  }
};

using GroupElement = std::variant<FreeWord, IntPair, KleinPair, HeisenbergTriple, QuotientWord>;

enum class ModelKind { free2, free_abelian2, klein, heisenberg, quotient };

inline char const* model_kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::free2: return "free2";
    case ModelKind::free_abelian2: return "z2";
    case ModelKind::klein: return "klein";
    case ModelKind::heisenberg: return "heisenberg";
    case ModelKind::quotient: return "quotient";
  }
  return "?";
}

class model_mismatch_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class undecidable_equality_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class element_parse_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ElementHash {
  std::size_t operator()(GroupElement const& g) const noexcept {
    auto mix = [](std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); };
    std::size_t h = g.index();
    std::visit(
        [&](auto const& e) {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, FreeWord>) {
            h = mix(h, std::hash<std::string>{}(e.w.letters()));
          } else if constexpr (std::is_same_v<T, QuotientWord>) {
            h = mix(h, std::hash<std::string>{}(e.w));
          } else if constexpr (std::is_same_v<T, HeisenbergTriple>) {
            h = mix(mix(mix(h, std::hash<long>{}(e.a)), std::hash<long>{}(e.b)), std::hash<long>{}(e.c));
          } else {
            h = mix(mix(h, std::hash<long>{}(e.m)), std::hash<long>{}(e.n));
          }
        },
        g);
    return h;
  }
};

using ElementSet = std::vector<GroupElement>;

class GroupModel {
 public:
  static GroupModel free2() { return GroupModel(ModelKind::free2); }
  static GroupModel free_abelian2() { return GroupModel(ModelKind::free_abelian2); }
  static GroupModel klein() { return GroupModel(ModelKind::klein); }
  static GroupModel heisenberg() { return GroupModel(ModelKind::heisenberg); }

  /// Wraps a confluent rewriting system for <x, y | p>.  Throws
  /// undecidable_equality_error when the completion did not finish.
  static GroupModel quotient(Presentation p, CompletionResult completion, std::string name = "quotient") {
    if (!completion.confluent)
      throw undecidable_equality_error("rewriting system for " + p.to_string() +
                                       " is not confluent; equality is undecidable with it");
    GroupModel m(ModelKind::quotient);
    m.presentation_ = std::make_shared<Presentation const>(std::move(p));
    m.system_ = std::make_shared<RewritingSystem const>(std::move(completion.system));
    m.completion_passes_ = completion.passes;
    m.name_ = std::move(name);
    return m;
  }

  ModelKind kind() const noexcept { return kind_; }
  std::string const& name() const noexcept { return name_; }
  Presentation const* presentation() const noexcept { return presentation_.get(); }
  RewritingSystem const* rewriting_system() const noexcept { return system_.get(); }
  std::size_t completion_passes() const noexcept { return completion_passes_; }

  GroupElement identity() const {
    switch (kind_) {
      case ModelKind::free2: return FreeWord{};
      case ModelKind::free_abelian2: return IntPair{};
      case ModelKind::klein: return KleinPair{};
      case ModelKind::heisenberg: return HeisenbergTriple{};
      case ModelKind::quotient: return QuotientWord{};
    }
    return FreeWord{};
  }

  bool is_identity(GroupElement const& g) const { return g == identity(); }

  bool belongs(GroupElement const& g) const { return g.index() == identity().index(); }

  GroupElement multiply(GroupElement const& g, GroupElement const& h) const {
    check(g);
    check(h);
    switch (kind_) {
      case ModelKind::free2:
        return FreeWord{std::get<FreeWord>(g).w * std::get<FreeWord>(h).w};
      case ModelKind::free_abelian2: {
        auto const &p = std::get<IntPair>(g), &q = std::get<IntPair>(h);
        return IntPair{p.m + q.m, p.n + q.n};
      }
      case ModelKind::klein: {
        auto const &p = std::get<KleinPair>(g), &q = std::get<KleinPair>(h);
        return KleinPair{p.m + (p.n % 2 == 0 ? q.m : -q.m), p.n + q.n};
      }
      case ModelKind::heisenberg: {
        auto const &p = std::get<HeisenbergTriple>(g), &q = std::get<HeisenbergTriple>(h);
        return HeisenbergTriple{p.a + q.a, p.b + q.b, p.c + q.c + p.a * q.b};
      }
      case ModelKind::quotient:
        return QuotientWord{system_->rewrite(std::get<QuotientWord>(g).w + std::get<QuotientWord>(h).w)};
    }
    return g;
  }

  GroupElement inverse(GroupElement const& g) const {
    check(g);
    switch (kind_) {
      case ModelKind::free2:
        return FreeWord{std::get<FreeWord>(g).w.inverse()};
      case ModelKind::free_abelian2: {
        auto const& p = std::get<IntPair>(g);
        return IntPair{-p.m, -p.n};
      }
      case ModelKind::klein: {
        auto const& p = std::get<KleinPair>(g);
        return KleinPair{p.n % 2 == 0 ? -p.m : p.m, -p.n};
      }
      case ModelKind::heisenberg: {
        auto const& p = std::get<HeisenbergTriple>(g);
        return HeisenbergTriple{-p.a, -p.b, -p.c + p.a * p.b};
      }
      case ModelKind::quotient:
        return QuotientWord{system_->rewrite(inverse_letters(std::get<QuotientWord>(g).w))};
    }
    return g;
  }

  GroupElement power(GroupElement const& g, long k) const {
    GroupElement base = k < 0 ? inverse(g) : g;
    GroupElement out = identity();
    for (long i = 0; i < std::labs(k); ++i) out = multiply(out, base);
    return out;
  }

  bool commute(GroupElement const& g, GroupElement const& h) const {
    return multiply(g, h) == multiply(h, g);
  }

  /// The designated generators x and y.
  GroupElement gen_x() const { return generator(0); }
  GroupElement gen_y() const { return generator(1); }

  GroupElement generator(int g) const {
    switch (kind_) {
      case ModelKind::free2: return FreeWord{Word::generator(g)};
      case ModelKind::free_abelian2: return g == 0 ? IntPair{1, 0} : IntPair{0, 1};
      case ModelKind::klein: return g == 0 ? KleinPair{1, 0} : KleinPair{0, 1};
      case ModelKind::heisenberg: return g == 0 ? HeisenbergTriple{1, 0, 0} : HeisenbergTriple{0, 1, 0};
      case ModelKind::quotient:
        return QuotientWord{system_->rewrite(LetterString(1, static_cast<char>(2 * g)))};
    }
    return identity();
  }

  /// Named elements usable in literals.  Every model has x and y; the Klein
  /// model adds u = (0,1), v = (1,1), the generators of the a^2 = b^2
  /// presentation, also available as a and b.
  std::map<char, GroupElement> generator_map() const {
    std::map<char, GroupElement> out{{'x', gen_x()}, {'y', gen_y()}};
    if (kind_ == ModelKind::klein) {
      out['u'] = out['a'] = KleinPair{0, 1};
      out['v'] = out['b'] = KleinPair{1, 1};
    } else if (kind_ == ModelKind::quotient) {
      out['a'] = gen_x();
      out['b'] = gen_y();
    }
    return out;
  }

  /// Image of a word in x, y.
  GroupElement evaluate(Word const& w) const { return evaluate_letters(w.letters()); }

  GroupElement evaluate_letters(LetterString const& s) const {
    if (kind_ == ModelKind::free2) return FreeWord{Word::from_letters(s)};
    if (kind_ == ModelKind::quotient) return QuotientWord{system_->rewrite(free_reduce(s))};
    GroupElement gens[4] = {gen_x(), inverse(gen_x()), gen_y(), inverse(gen_y())};
    GroupElement out = identity();
    for (char c : s) out = multiply(out, gens[static_cast<Letter>(c)]);
    return out;
  }

  /// Image of a word under x -> g, y -> h.
  GroupElement substitute(LetterString const& s, GroupElement const& g, GroupElement const& h) const {
    GroupElement gens[4] = {g, inverse(g), h, inverse(h)};
    GroupElement out = identity();
    for (char c : s) out = multiply(out, gens[static_cast<Letter>(c)]);
    return out;
  }

  std::string to_string(GroupElement const& g) const {
    check(g);
    return std::visit(
        [](auto const& e) -> std::string {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, FreeWord>) {
            return e.w.to_letter_string();
          } else if constexpr (std::is_same_v<T, QuotientWord>) {
            return show_letters(e.w);
          } else if constexpr (std::is_same_v<T, HeisenbergTriple>) {
            return std::to_string(e.a) + "," + std::to_string(e.b) + "," + std::to_string(e.c);
          } else {
            return std::to_string(e.m) + "," + std::to_string(e.n);
          }
        },
        g);
  }

  std::string to_string(ElementSet const& s) const {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) out += ";";
      out += to_string(s[i]);
    }
    return out;
  }

  /// Parses one element: "e", a coordinate tuple ("1,-1" or "1,0,2"), or a
  /// product of named generators with exponents and parentheses
  /// ("u^-1v", "x^-1(x^-1y)^2").  Upper case names are inverses.
  GroupElement parse_element(std::string_view text) const;

  /// Semicolon-separated list of elements.  A list without semicolons whose
  /// comma-separated pieces are not all integers is read as one element per
  /// piece, so "e,u,v" and "e;0,1;1,1" both work.
  ElementSet parse_set(std::string_view text) const;

  /// All products of at most `radius` factors from gens and their inverses,
  /// identity first, then by sphere, each sphere in element order.
  ElementSet ball(ElementSet const& gens, int radius) const {
    if (gens.empty()) throw std::invalid_argument("ball needs at least one generator");
    ElementSet steps;
    for (auto const& g : gens) {
      steps.push_back(g);
      steps.push_back(inverse(g));
    }
    ElementSet out{identity()};
    std::unordered_set<GroupElement, ElementHash> seen{identity()};
    ElementSet frontier{identity()};
    for (int r = 0; r < radius; ++r) {
      ElementSet next;
      for (auto const& f : frontier)
        for (auto const& s : steps) {
          auto p = multiply(f, s);
          if (seen.insert(p).second) next.push_back(p);
        }
      std::sort(next.begin(), next.end());
      out.insert(out.end(), next.begin(), next.end());
      frontier = std::move(next);
      if (frontier.empty()) break;
    }
    return out;
  }

  ElementSet ball(int radius) const { return ball({gen_x(), gen_y()}, radius); }

  friend bool same_model(GroupModel const& a, GroupModel const& b) {
    return a.kind_ == b.kind_ && a.system_ == b.system_;
  }

 private:
  explicit GroupModel(ModelKind k) : kind_(k), name_(model_kind_name(k)) {}

  ModelKind kind_;
  std::string name_;
  std::shared_ptr<Presentation const> presentation_;
  std::shared_ptr<RewritingSystem const> system_;
  std::size_t completion_passes_ = 0;

  void check(GroupElement const& g) const {
    if (!belongs(g))
      throw model_mismatch_error(std::string("element does not belong to the ") + name_ + " model");
  }

  std::size_t arity() const {
    switch (kind_) {
      case ModelKind::free_abelian2:
      case ModelKind::klein: return 2;
      case ModelKind::heisenberg: return 3;
      default: return 0;
    }
  }

  std::optional<GroupElement> parse_coordinates(std::string_view text) const;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::optional<long> parse_integer(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return std::nullopt;
  long v = 0;
  for (std::size_t j = i; j < s.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) return std::nullopt;
    v = v * 10 + (s[j] - '0');
  }
  return s[0] == '-' ? -v : v;
}

class ExpressionParser {
 public:
  ExpressionParser(GroupModel const& m, std::string_view s) : m_(m), s_(s), names_(m.generator_map()) {}

  GroupElement parse() {
    auto g = sequence();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return g;
  }

 private:
  GroupModel const& m_;
  std::string_view s_;
  std::map<char, GroupElement> names_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(std::string const& what) const {
    throw element_parse_error("cannot parse element '" + std::string(s_) + "' for model " + m_.name() + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  long exponent() {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != '^') return 1;
    ++pos_;
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    auto v = parse_integer(s_.substr(start, pos_ - start));
    if (!v) fail("bad exponent");
    return *v;
  }

  GroupElement sequence() {
    GroupElement acc = m_.identity();
    while (true) {
      skip();
      if (pos_ >= s_.size() || s_[pos_] == ')') return acc;
      char c = s_[pos_];
      GroupElement atom = m_.identity();
      if (c == '(') {
        ++pos_;
        atom = sequence();
        skip();
        if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
        ++pos_;
      } else if (c == 'e' || c == '1') {
        ++pos_;
      } else if (c == '*' || c == '.') {
        ++pos_;
        continue;
      } else {
        char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        auto it = names_.find(lower);
        if (it == names_.end()) fail(std::string("unknown name '") + c + "'");
        atom = std::isupper(static_cast<unsigned char>(c)) ? m_.inverse(it->second) : it->second;
        ++pos_;
      }
      acc = m_.multiply(acc, m_.power(atom, exponent()));
    }
  }
};

}  // namespace detail

inline std::optional<GroupElement> GroupModel::parse_coordinates(std::string_view text) const {
  auto parts = detail::split(text, ',');
  if (arity() == 0 || parts.size() != arity()) return std::nullopt;
  std::vector<long> v;
  for (auto p : parts) {
    auto i = detail::parse_integer(p);
    if (!i) return std::nullopt;
    v.push_back(*i);
  }
  switch (kind_) {
    case ModelKind::free_abelian2: return IntPair{v[0], v[1]};
    case ModelKind::klein: return KleinPair{v[0], v[1]};
    case ModelKind::heisenberg: return HeisenbergTriple{v[0], v[1], v[2]};
    default: return std::nullopt;
  }
}

inline GroupElement GroupModel::parse_element(std::string_view text) const {
  text = detail::trim(text);
  if (text.empty()) throw element_parse_error("empty element literal");
  if (auto c = parse_coordinates(text)) return *c;
  if (text.find(',') != std::string_view::npos)
    throw element_parse_error("'" + std::string(text) + "' is not a coordinate tuple of the " + name_ + " model");
  return detail::ExpressionParser(*this, text).parse();
}

inline ElementSet GroupModel::parse_set(std::string_view text) const {
  text = detail::trim(text);
  if (text.empty()) return {};
  std::vector<std::string_view> pieces;
  if (text.find(';') != std::string_view::npos || parse_coordinates(text)) {
    pieces = detail::split(text, ';');
  } else {
    pieces = detail::split(text, ',');
  }
  ElementSet out;
  for (auto p : pieces) {
    auto g = parse_element(p);
    if (std::find(out.begin(), out.end(), g) != out.end())
      throw element_parse_error("duplicate element '" + std::string(p) + "' in set literal");
    out.push_back(g);
  }
  return out;
}

// ---------------------------------------------------------------------------

struct QuotientResult {
  std::optional<GroupModel> model;  // set iff the completion is confluent
  CompletionResult completion;      // partial rules on failure
};

/// Completes the presentation (shortlex, then recursive ordering) within
/// the caps; an inconclusive completion yields no model.
inline QuotientResult instantiate_quotient(Presentation const& p, std::size_t max_rules = 10000,
                                           std::size_t max_passes = 50, std::string name = "quotient") {
  KnuthBendixCaps caps;
  caps.max_rules = max_rules;
  caps.max_passes = max_passes;
  QuotientResult out;
  out.completion = complete(p, caps);
  if (out.completion.confluent) {
    CompletionResult copy = out.completion;
    out.model = GroupModel::quotient(p, std::move(copy), std::move(name));
  }
  return out;
}

/// Sorted, duplicate-free copy.
inline ElementSet normalize_set(ElementSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace psl
