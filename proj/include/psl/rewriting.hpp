// Knuth-Bendix completion for two-generator group presentations.
//
// Words are LetterStrings over x < X < y < Y.  The free-reduction rules
// xX -> e, Xx -> e, yY -> e, Yy -> e are always part of the system, so a
// confluent system decides the word problem of the presented group.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "psl/word.hpp"

namespace psl {

inline bool shortlex_less(LetterString const& a, LetterString const& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

/// Shortlex with an explicit letter precedence: rank[l] is the position of
/// letter l.
inline bool shortlex_less(LetterString const& a, LetterString const& b,
                          std::array<int, 4> const& rank) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    int ra = rank[static_cast<Letter>(a[i])], rb = rank[static_cast<Letter>(b[i])];
    if (ra != rb) return ra < rb;
  }
  return false;
}

namespace detail {

inline bool recursive_greater(LetterString const& u, LetterString const& v,
                              std::array<int, 4> const& rank) {
  std::size_t const n = u.size(), m = v.size();
  // memo[i * (m + 1) + j]: 0 unknown, 1 if u[0,i) > v[0,j), 2 otherwise
  std::vector<std::uint8_t> memo((n + 1) * (m + 1), 0);
  auto prefix_equal = [&](std::size_t i, std::size_t j) {
    return i == j && u.compare(0, i, v, 0, j) == 0;
  };
  auto gt = [&](auto&& self, std::size_t i, std::size_t j) -> bool {
    if (i == 0) return false;
    if (j == 0) return true;
    auto& slot = memo[i * (m + 1) + j];
    if (slot != 0) return slot == 1;
    bool result;
    if (prefix_equal(i - 1, j) || self(self, i - 1, j)) {
      result = true;
    } else {
      int a = rank[static_cast<Letter>(u[i - 1])];
      int b = rank[static_cast<Letter>(v[j - 1])];
      if (a == b)
        result = self(self, i - 1, j - 1);
      else if (a > b)
        result = self(self, i, j - 1);
      else
        result = false;
    }
    slot = result ? 1 : 2;
    return result;
  };
  return gt(gt, n, m);
}

}  // namespace detail

/// Recursive path ordering on words, read from the right (KBMAG's
/// "recursive" ordering).  Writing u = u'a and v = v'b with last letters a, b:
/// u > v iff u' >= v, or a == b and u' > v', or a > b and u > v'.
/// Letter precedence is x < X < y < Y unless `rank` says otherwise.
inline bool recursive_less(LetterString const& u, LetterString const& v,
                           std::array<int, 4> const& rank = {0, 1, 2, 3}) {
  return detail::recursive_greater(v, u, rank);
}

enum class WordOrder { shortlex, recursive };

inline bool word_less(WordOrder order, LetterString const& a, LetterString const& b,
                      std::array<int, 4> const& rank = {0, 1, 2, 3}) {
  return order == WordOrder::shortlex ? shortlex_less(a, b, rank) : recursive_less(a, b, rank);
}

struct RewriteRule {
  LetterString lhs;
  LetterString rhs;
};

struct KnuthBendixCaps {
  std::size_t max_rules = 10000;
  std::size_t max_passes = 50;
  WordOrder order = WordOrder::shortlex;
  std::array<int, 4> rank{0, 1, 2, 3};  // letter precedence, default x < X < y < Y
};

class RewritingSystem {
 public:
  RewritingSystem() = default;

  std::size_t size() const noexcept { return index_.size(); }

  /// Alive rules, sorted shortlex by left-hand side.
  std::vector<RewriteRule> rules() const {
    std::vector<RewriteRule> out;
    out.reserve(index_.size());
    for (auto const& [l, r] : index_) out.push_back({l, r});
    std::sort(out.begin(), out.end(),
              [](auto const& a, auto const& b) { return shortlex_less(a.lhs, b.lhs); });
    return out;
  }

  bool contains_lhs(LetterString const& lhs) const { return index_.count(lhs) != 0; }

  /// Rewrites w to an irreducible word.  Suffix matching on an output stack:
  /// every time a letter is pushed, suffixes of each rule length are looked
  /// up; a hit pops the suffix and feeds the right-hand side back as input.
  LetterString rewrite(LetterString const& w) const {
    LetterString out;
    LetterString input(w.rbegin(), w.rend());  // consumed from the back
    out.reserve(w.size());
    std::string key;
    while (!input.empty()) {
      out.push_back(input.back());
      input.pop_back();
      for (std::size_t len : lengths_) {
        if (len > out.size()) break;
        key.assign(out, out.size() - len, len);
        auto it = index_.find(key);
        if (it == index_.end()) continue;
        out.resize(out.size() - len);
        input.append(it->second.rbegin(), it->second.rend());
        break;
      }
    }
    return out;
  }

  bool equal(LetterString const& a, LetterString const& b) const { return rewrite(a) == rewrite(b); }

  /// Irreducible means no left-hand side occurs as a factor.
  bool irreducible(LetterString const& w) const {
    for (std::size_t len : lengths_)
      for (std::size_t i = 0; i + len <= w.size(); ++i)
        if (index_.count(w.substr(i, len))) return false;
    return true;
  }

  void insert(LetterString lhs, LetterString rhs) {
    index_[lhs] = std::move(rhs);
    ++length_count_[lhs.size()];
    rebuild_lengths();
  }

  void erase(LetterString const& lhs) {
    if (index_.erase(lhs) == 0) return;
    if (--length_count_[lhs.size()] == 0) length_count_.erase(lhs.size());
    rebuild_lengths();
  }

  void set_rhs(LetterString const& lhs, LetterString rhs) { index_.at(lhs) = std::move(rhs); }

  static RewritingSystem free_reduction() {
    RewritingSystem s;
    using namespace letters;
    for (Letter l : {x, X, y, Y}) {
      LetterString lhs{static_cast<char>(l), static_cast<char>(inverse_letter(l))};
      s.insert(lhs, {});
    }
    return s;
  }

 private:
  std::unordered_map<LetterString, LetterString> index_;
  std::unordered_map<std::size_t, std::size_t> length_count_;
  std::vector<std::size_t> lengths_;

  void rebuild_lengths() {
    lengths_.clear();
    for (auto const& [len, n] : length_count_) lengths_.push_back(len);
    std::sort(lengths_.begin(), lengths_.end());
  }
};

struct CompletionResult {
  RewritingSystem system;
  bool confluent = false;
  std::size_t passes = 0;
  std::size_t rules_peak = 0;
};

namespace detail {

class KnuthBendix {
 public:
  explicit KnuthBendix(KnuthBendixCaps caps) : caps_(caps) {
    for (auto const& r : RewritingSystem::free_reduction().rules()) add_rule(r.lhs, r.rhs);
  }

  CompletionResult run(std::vector<LetterString> const& relators) {
    for (auto const& r : relators)
      if (!push_equation(r, {})) return finish(false);
    if (!drain()) return finish(false);

    std::size_t i = 0;
    std::size_t pass_end = rules_.size();
    std::size_t passes = 0;
    while (i < rules_.size()) {
      if (i == pass_end) {
        if (++passes > caps_.max_passes) return finish(false, passes);
        pass_end = rules_.size();
      }
      for (std::size_t j = 0; j <= i && alive_[i]; ++j) {
        if (!alive_[j]) continue;
        if (!overlap(i, j) || !overlap(j, i)) return finish(false, passes);
      }
      ++i;
    }
    return finish(true, passes + 1);
  }

 private:
  KnuthBendixCaps caps_;
  RewritingSystem system_;
  std::vector<RewriteRule> rules_;
  std::vector<bool> alive_;
  std::vector<std::pair<LetterString, LetterString>> pending_;
  std::size_t peak_ = 0;

  CompletionResult finish(bool ok, std::size_t passes = 0) {
    return CompletionResult{std::move(system_), ok, passes, peak_};
  }

  bool push_equation(LetterString a, LetterString b) {
    pending_.emplace_back(std::move(a), std::move(b));
    return drain();
  }

  // Processes pending equations until none remain.  Returns false when the
  // rule cap is exceeded.
  bool drain() {
    while (!pending_.empty()) {
      auto [a, b] = std::move(pending_.back());
      pending_.pop_back();
      a = system_.rewrite(a);
      b = system_.rewrite(b);
      if (a == b) continue;
      if (word_less(caps_.order, a, b, caps_.rank)) std::swap(a, b);
      add_rule(a, b);
      if (system_.size() > caps_.max_rules) return false;
    }
    return true;
  }

  void add_rule(LetterString const& lhs, LetterString const& rhs) {
    // Interreduce: rules whose lhs contains the new lhs go back to the
    // equation pool, right-hand sides are rewritten with the new rule.
    system_.insert(lhs, rhs);
    for (std::size_t k = 0; k < rules_.size(); ++k) {
      if (!alive_[k]) continue;
      auto& r = rules_[k];
      if (r.lhs.find(lhs) != LetterString::npos) {
        alive_[k] = false;
        system_.erase(r.lhs);
        pending_.emplace_back(r.lhs, r.rhs);
      } else if (r.rhs.find(lhs) != LetterString::npos) {
        r.rhs = system_.rewrite(r.rhs);
        system_.set_rhs(r.lhs, r.rhs);
      }
    }
    rules_.push_back({lhs, rhs});
    alive_.push_back(true);
    peak_ = std::max(peak_, system_.size());
  }

  // Critical pairs from a proper suffix of lhs(i) matching a proper prefix
  // of lhs(j).
  bool overlap(std::size_t i, std::size_t j) {
    if (!alive_[i] || !alive_[j]) return true;
    LetterString const l1 = rules_[i].lhs, r1 = rules_[i].rhs;
    LetterString const l2 = rules_[j].lhs, r2 = rules_[j].rhs;
    for (std::size_t k = 1; k < l1.size() && k < l2.size(); ++k) {
      if (l1.compare(l1.size() - k, k, l2, 0, k) != 0) continue;
      LetterString left = r1 + l2.substr(k);
      LetterString right = l1.substr(0, l1.size() - k) + r2;
      pending_.emplace_back(std::move(left), std::move(right));
      if (!drain()) return false;
      if (!alive_[i] || !alive_[j]) return true;
    }
    return true;
  }
};

}  // namespace detail

/// Runs shortlex completion on the group presentation <x, y | relators>.
/// On success the returned system is confluent and decides equality; on cap
/// exhaustion confluent == false and the partial rules must not be used to
/// decide equality.
inline CompletionResult knuth_bendix(std::vector<LetterString> const& relators,
                                     KnuthBendixCaps caps = {}) {
  return detail::KnuthBendix(caps).run(relators);
}

inline CompletionResult knuth_bendix(std::vector<Word> const& relators, KnuthBendixCaps caps = {}) {
  std::vector<LetterString> rs;
  rs.reserve(relators.size());
  for (auto const& w : relators) rs.push_back(w.letters());
  return knuth_bendix(rs, caps);
}

/// Local confluence check by brute force over all critical pairs; used by
/// tests as an oracle independent of the completion loop.
inline bool locally_confluent(RewritingSystem const& s) {
  auto rules = s.rules();
  for (auto const& a : rules)
    for (auto const& b : rules) {
      for (std::size_t k = 1; k < a.lhs.size() && k < b.lhs.size(); ++k) {
        if (a.lhs.compare(a.lhs.size() - k, k, b.lhs, 0, k) != 0) continue;
        LetterString left = a.rhs + b.lhs.substr(k);
        LetterString right = a.lhs.substr(0, a.lhs.size() - k) + b.rhs;
        if (s.rewrite(left) != s.rewrite(right)) return false;
      }
      if (a.lhs != b.lhs && a.lhs.find(b.lhs) != LetterString::npos) return false;
    }
  return true;
}

}  // namespace psl
