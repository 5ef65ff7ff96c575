// Free-group words over the two generators x and y.
//
// A Word is stored as a sequence of syllables (generator, exponent).  Most
// algorithms in the library (rewriting, coset enumeration, cycle relators)
// prefer a flat letter string instead, so both views are provided and the
// conversions between them are cheap.
//
// Letters are encoded as small integers in the fixed order x < X < y < Y,
// where X and Y denote the inverses of x and y.  The numeric order of the
// encoding is the shortlex letter order used everywhere in the library.

#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace psl {

using Letter = std::uint8_t;

namespace letters {
inline constexpr Letter x = 0;
inline constexpr Letter X = 1;
inline constexpr Letter y = 2;
inline constexpr Letter Y = 3;
}  // namespace letters

inline constexpr Letter inverse_letter(Letter l) noexcept { return l ^ 1U; }
inline constexpr int generator_of(Letter l) noexcept { return l >> 1U; }
inline constexpr bool is_positive(Letter l) noexcept { return (l & 1U) == 0; }

inline constexpr char letter_char(Letter l) noexcept {
  constexpr char table[] = {'x', 'X', 'y', 'Y'};
  return table[l & 3U];
}

/// Flat letter sequence.  Stored in a std::string so that it can be hashed
/// and compared without ceremony; each char holds a Letter value 0..3.
using LetterString = std::string;

struct Syllable {
  int generator = 0;  // 0 = x, 1 = y
  long exponent = 0;  // never zero inside a reduced Word

  friend bool operator==(Syllable const&, Syllable const&) = default;
  friend auto operator<=>(Syllable const&, Syllable const&) = default;
};

class word_parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Syllable> syllables) : syllables_(std::move(syllables)) {}

  static Word from_letters(LetterString const& s) {
    std::vector<Syllable> out;
    for (char c : s) {
      auto l = static_cast<Letter>(c);
      long e = is_positive(l) ? 1 : -1;
      if (!out.empty() && out.back().generator == generator_of(l)) {
        out.back().exponent += e;
      } else {
        out.push_back({generator_of(l), e});
      }
    }
    // Freely reducing here keeps from_letters total: the caller may pass
    // unreduced strings such as "xX".
    return Word(std::move(out)).reduced();
  }

  static Word generator(int g, long e = 1) { return Word({Syllable{g, e}}).reduced(); }

  /// Parses words such as "x^-1(x^-1y)^2x^-1", "xXyY", "e" or "1".
  static Word parse(std::string_view text);

  std::vector<Syllable> const& syllables() const noexcept { return syllables_; }
  bool empty() const noexcept { return syllables_.empty(); }

  LetterString letters() const {
    LetterString s;
    for (auto const& syl : syllables_) {
      Letter l = static_cast<Letter>(2 * syl.generator + (syl.exponent < 0 ? 1 : 0));
      s.append(static_cast<std::size_t>(std::labs(syl.exponent)), static_cast<char>(l));
    }
    return s;
  }

  /// Number of letters.
  std::size_t length() const noexcept {
    std::size_t n = 0;
    for (auto const& s : syllables_) n += static_cast<std::size_t>(std::labs(s.exponent));
    return n;
  }

  /// Sum of |exponent| over syllables of generator g.
  long occurrences(int g) const noexcept {
    long n = 0;
    for (auto const& s : syllables_)
      if (s.generator == g) n += std::labs(s.exponent);
    return n;
  }

  long exponent_sum(int g) const noexcept {
    long n = 0;
    for (auto const& s : syllables_)
      if (s.generator == g) n += s.exponent;
    return n;
  }

  Word reduced() const {
    std::vector<Syllable> out;
    out.reserve(syllables_.size());
    for (auto const& s : syllables_) {
      if (s.exponent == 0) continue;
      if (!out.empty() && out.back().generator == s.generator) {
        out.back().exponent += s.exponent;
        if (out.back().exponent == 0) out.pop_back();
      } else {
        out.push_back(s);
      }
    }
    return Word(std::move(out));
  }

  bool is_reduced() const noexcept {
    for (std::size_t i = 0; i < syllables_.size(); ++i) {
      if (syllables_[i].exponent == 0) return false;
      if (i > 0 && syllables_[i - 1].generator == syllables_[i].generator) return false;
    }
    return true;
  }

  Word inverse() const {
    std::vector<Syllable> out(syllables_.rbegin(), syllables_.rend());
    for (auto& s : out) s.exponent = -s.exponent;
    return Word(std::move(out));
  }

  Word pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    std::vector<Syllable> out;
    for (long i = 0; i < k; ++i) out.insert(out.end(), syllables_.begin(), syllables_.end());
    return Word(std::move(out)).reduced();
  }

  friend Word operator*(Word const& a, Word const& b) {
    std::vector<Syllable> out = a.syllables_;
    out.insert(out.end(), b.syllables_.begin(), b.syllables_.end());
    return Word(std::move(out)).reduced();
  }

  /// Human-readable form, e.g. "x^-2y^-1xy^-1"; the empty word prints as "e".
  std::string to_string() const {
    if (syllables_.empty()) return "e";
    std::string out;
    for (auto const& s : syllables_) {
      out.push_back(s.generator == 0 ? 'x' : 'y');
      if (s.exponent != 1) out += "^" + std::to_string(s.exponent);
    }
    return out;
  }

  /// Compact letter form over {x,X,y,Y}; "e" when empty.
  std::string to_letter_string() const {
    auto ls = letters();
    if (ls.empty()) return "e";
    std::string out;
    for (char c : ls) out.push_back(letter_char(static_cast<Letter>(c)));
    return out;
  }

  friend bool operator==(Word const&, Word const&) = default;
  friend auto operator<=>(Word const&, Word const&) = default;

 private:
  std::vector<Syllable> syllables_;
};

namespace detail {

class WordParser {
 public:
  explicit WordParser(std::string_view s) : s_(s) {}

  Word parse_all() {
    Word w = parse_sequence();
    skip_space();
    if (pos_ != s_.size()) fail("unexpected character");
    return w;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(std::string const& what) const {
    throw word_parse_error("cannot parse word '" + std::string(s_) + "' at offset " +
                           std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  long parse_exponent() {
    skip_space();
    if (pos_ >= s_.size() || s_[pos_] != '^') return 1;
    ++pos_;
    skip_space();
    bool braced = pos_ < s_.size() && s_[pos_] == '{';
    if (braced) ++pos_;
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
    std::size_t start = pos_;
    long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      v = v * 10 + (s_[pos_++] - '0');
    if (pos_ == start) fail("expected exponent");
    if (braced) {
      if (pos_ >= s_.size() || s_[pos_] != '}') fail("expected '}'");
      ++pos_;
    }
    return neg ? -v : v;
  }

  Word parse_sequence() {
    std::vector<Syllable> out;
    while (true) {
      skip_space();
      if (pos_ >= s_.size() || s_[pos_] == ')') break;
      char c = s_[pos_];
      Word atom;
      if (c == '(') {
        ++pos_;
        atom = parse_sequence();
        skip_space();
        if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
        ++pos_;
      } else if (c == 'x' || c == 'y' || c == 'X' || c == 'Y') {
        ++pos_;
        int g = (c == 'x' || c == 'X') ? 0 : 1;
        atom = Word({Syllable{g, std::isupper(static_cast<unsigned char>(c)) ? -1L : 1L}});
      } else if (c == 'e' || c == '1') {
        ++pos_;
      } else if (c == '*' || c == '.') {
        ++pos_;
        continue;
      } else {
        fail("unexpected character");
      }
      long e = parse_exponent();
      Word powered = atom.pow(e);
      out.insert(out.end(), powered.syllables().begin(), powered.syllables().end());
    }
    return Word(std::move(out)).reduced();
  }
};

}  // namespace detail

inline Word Word::parse(std::string_view text) { return detail::WordParser(text).parse_all(); }

// ---------------------------------------------------------------------------
// Letter-string helpers.

inline LetterString inverse_letters(LetterString const& s) {
  LetterString out(s.rbegin(), s.rend());
  for (char& c : out) c = static_cast<char>(inverse_letter(static_cast<Letter>(c)));
  return out;
}

/// Stack-based free reduction of a letter string.
inline LetterString free_reduce(LetterString const& s) {
  LetterString out;
  out.reserve(s.size());
  for (char c : s) {
    if (!out.empty() && static_cast<Letter>(out.back()) == inverse_letter(static_cast<Letter>(c)))
      out.pop_back();
    else
      out.push_back(c);
  }
  return out;
}

inline LetterString cyclically_reduce_letters(LetterString const& s) {
  LetterString r = free_reduce(s);
  std::size_t i = 0, j = r.size();
  while (j - i >= 2 && static_cast<Letter>(r[i]) == inverse_letter(static_cast<Letter>(r[j - 1]))) {
    ++i;
    --j;
  }
  return r.substr(i, j - i);
}

inline std::string show_letters(LetterString const& s) {
  if (s.empty()) return "e";
  std::string out;
  for (char c : s) out.push_back(letter_char(static_cast<Letter>(c)));
  return out;
}

/// Parses a compact letter string such as "xXyY" (or any Word syntax).
inline LetterString parse_letters(std::string_view text) { return Word::parse(text).letters(); }

// ---------------------------------------------------------------------------
// Operations on Words.

inline Word reduce(Word const& w) { return w.reduced(); }

/// Cyclic reduction: the returned word is conjugate to w in F2 and has no
/// cancellation between its last and first letter.
inline Word cyclically_reduce(Word const& w) {
  return Word::from_letters(cyclically_reduce_letters(w.letters()));
}

struct ProperPower {
  Word base;
  long k = 1;
};

/// Largest k with base^k == w for a cyclically reduced, nonempty w.
/// Works on the letter sequence: k is the largest divisor of |w| for which
/// w is a k-fold repetition.
inline ProperPower proper_power(Word const& w) {
  auto s = w.letters();
  std::size_t n = s.size();
  if (n == 0) return {Word{}, 1};
  for (std::size_t k = n; k >= 2; --k) {
    if (n % k != 0) continue;
    std::size_t p = n / k;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = s[i] == s[i - p];
    if (periodic) return {Word::from_letters(s.substr(0, p)), static_cast<long>(k)};
  }
  return {w, 1};
}

/// All cyclic rotations of a letter string.
inline std::vector<LetterString> rotations(LetterString const& s) {
  std::vector<LetterString> out;
  for (std::size_t i = 0; i < std::max<std::size_t>(1, s.size()); ++i)
    out.push_back(s.substr(i) + s.substr(0, i));
  return out;
}

/// Canonical representative of the conjugacy-and-inversion class of a
/// cyclic word: the least rotation of the cyclic reduction of w or w^-1.
inline LetterString cyclic_canonical(LetterString const& w) {
  auto s = cyclically_reduce_letters(w);
  if (s.empty()) return s;
  LetterString best = s;
  for (auto const& t : {s, inverse_letters(s)})
    for (auto const& r : rotations(t)) best = std::min(best, r);
  return best;
}

}  // namespace psl
