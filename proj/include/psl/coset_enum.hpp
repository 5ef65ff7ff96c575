// Todd-Coxeter coset enumeration for presentations on one or two generators.
//
// Two strategies are provided: HLT (scan every relator at every live coset,
// defining cosets as needed) and Felsch (fill the first empty cell, then
// chase the consequences through all cyclic conjugates of the relators).
// Coincidences are processed with a union-find queue.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "psl/word.hpp"

namespace psl {

enum class CosetStrategy { hlt, felsch };

struct CosetTable {
  enum class Status { complete, cap_exceeded };

  Status status = Status::cap_exceeded;
  int generators = 2;
  // rows[c][l] is the image of coset c under letter l, or -1.  After a
  // complete run cosets are renumbered 0..index-1 in order of definition.
  std::vector<std::array<std::int32_t, 4>> rows;
  std::size_t cosets_defined = 0;

  bool complete() const noexcept { return status == Status::complete; }
  std::size_t index() const noexcept { return complete() ? rows.size() : 0; }

  /// Image of coset c under a letter string, or -1 if the trace runs off the table.
  std::int32_t trace(std::int32_t c, LetterString const& w) const {
    for (char ch : w) {
      if (c < 0) return -1;
      c = rows[static_cast<std::size_t>(c)][static_cast<Letter>(ch)];
    }
    return c;
  }

  /// Permutation of the cosets induced by w (right action).
  std::vector<std::int32_t> permutation(LetterString const& w) const {
    std::vector<std::int32_t> p(rows.size());
    for (std::size_t c = 0; c < rows.size(); ++c) p[c] = trace(static_cast<std::int32_t>(c), w);
    return p;
  }

  /// Order of the permutation induced by w; 0 if the table is incomplete.
  std::uint64_t permutation_order(LetterString const& w) const {
    if (!complete()) return 0;
    auto p = permutation(w);
    std::vector<bool> seen(p.size(), false);
    std::uint64_t order = 1;
    for (std::size_t c = 0; c < p.size(); ++c) {
      if (seen[c]) continue;
      std::uint64_t len = 0;
      for (auto d = static_cast<std::int32_t>(c); !seen[static_cast<std::size_t>(d)];
           d = p[static_cast<std::size_t>(d)]) {
        seen[static_cast<std::size_t>(d)] = true;
        ++len;
      }
      order = std::lcm(order, len);
    }
    return order;
  }

  /// Tab-separated export: header "coset x X y Y", one row per coset,
  /// 1-based coset numbers, 0 for an empty cell.
  void write_tsv(std::ostream& os) const {
    os << "coset";
    for (int l = 0; l < 2 * generators; ++l) os << '\t' << letter_char(static_cast<Letter>(l));
    os << '\n';
    for (std::size_t c = 0; c < rows.size(); ++c) {
      os << c + 1;
      for (int l = 0; l < 2 * generators; ++l) os << '\t' << rows[c][static_cast<std::size_t>(l)] + 1;
      os << '\n';
    }
  }
};

namespace detail {

class CosetEnumerator {
 public:
  CosetEnumerator(int generators, std::vector<LetterString> relators,
                  std::vector<LetterString> subgroup, std::size_t max_cosets)
      : ngens_(generators),
        relators_(std::move(relators)),
        subgroup_(std::move(subgroup)),
        max_cosets_(max_cosets) {
    new_coset();
  }

  CosetTable run(CosetStrategy strategy) {
    bool ok = strategy == CosetStrategy::hlt ? run_hlt() : run_felsch();
    return finish(ok);
  }

 private:
  static constexpr std::int32_t none = -1;

  int ngens_;
  std::vector<LetterString> relators_;
  std::vector<LetterString> subgroup_;
  std::size_t max_cosets_;
  std::vector<std::array<std::int32_t, 4>> tab_;
  std::vector<std::int32_t> parent_;
  std::vector<std::int32_t> queue_;
  std::vector<std::pair<std::int32_t, Letter>> deductions_;
  bool record_deductions_ = false;
  bool overflow_ = false;

  int ncols() const noexcept { return 2 * ngens_; }

  bool live(std::int32_t c) const { return parent_[static_cast<std::size_t>(c)] == c; }

  std::int32_t& cell(std::int32_t c, Letter l) {
    return tab_[static_cast<std::size_t>(c)][l];
  }

  std::int32_t new_coset() {
    if (tab_.size() >= max_cosets_) {
      overflow_ = true;
      return none;
    }
    auto c = static_cast<std::int32_t>(tab_.size());
    tab_.push_back({none, none, none, none});
    parent_.push_back(c);
    return c;
  }

  void set_edge(std::int32_t c, Letter l, std::int32_t d) {
    cell(c, l) = d;
    cell(d, inverse_letter(l)) = c;
    if (record_deductions_) deductions_.emplace_back(c, l);
  }

  bool define(std::int32_t c, Letter l) {
    std::int32_t d = new_coset();
    if (d == none) return false;
    set_edge(c, l, d);
    return true;
  }

  std::int32_t rep(std::int32_t c) {
    std::int32_t r = c;
    while (parent_[static_cast<std::size_t>(r)] != r) r = parent_[static_cast<std::size_t>(r)];
    while (parent_[static_cast<std::size_t>(c)] != r) {
      std::int32_t next = parent_[static_cast<std::size_t>(c)];
      parent_[static_cast<std::size_t>(c)] = r;
      c = next;
    }
    return r;
  }

  void merge(std::int32_t a, std::int32_t b) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    queue_.push_back(b);
  }

  void coincidence(std::int32_t a, std::int32_t b) {
    queue_.clear();
    merge(a, b);
    for (std::size_t i = 0; i < queue_.size(); ++i) {
      std::int32_t e = queue_[i];
      for (int li = 0; li < ncols(); ++li) {
        auto l = static_cast<Letter>(li);
        std::int32_t f = cell(e, l);
        if (f == none) continue;
        Letter il = inverse_letter(l);
        if (cell(f, il) == e) cell(f, il) = none;
        std::int32_t e1 = rep(e), f1 = rep(f);
        if (cell(e1, l) != none) {
          merge(f1, cell(e1, l));
        } else if (cell(f1, il) != none) {
          merge(e1, cell(f1, il));
        } else {
          set_edge(e1, l, f1);
        }
      }
    }
  }

  // Traces w from c in both directions.  With `fill`, missing cosets are
  // defined; otherwise only a single-gap deduction is made.  Returns false
  // on coset overflow.
  bool scan(std::int32_t c, LetterString const& w, bool fill) {
    if (w.empty()) return true;
    std::int32_t f = c, b = c;
    std::size_t i = 0, j = w.size();  // unscanned letters are w[i, j)
    while (true) {
      while (i < j && cell(f, static_cast<Letter>(w[i])) != none) f = cell(f, static_cast<Letter>(w[i++]));
      if (i == j) {
        if (f != b) coincidence(f, b);
        return true;
      }
      while (j > i && cell(b, inverse_letter(static_cast<Letter>(w[j - 1]))) != none)
        b = cell(b, inverse_letter(static_cast<Letter>(w[--j])));
      if (i == j) {
        coincidence(f, b);
        return true;
      }
      if (j == i + 1) {
        set_edge(f, static_cast<Letter>(w[i]), b);
        return true;
      }
      if (!fill) return true;
      if (!define(f, static_cast<Letter>(w[i]))) return false;
    }
  }

  bool run_hlt() {
    for (auto const& h : subgroup_)
      if (!scan(0, h, true)) return false;
    for (std::int32_t c = 0; c < static_cast<std::int32_t>(tab_.size()); ++c) {
      for (auto const& r : relators_) {
        if (!live(c)) break;
        if (!scan(c, r, true)) return false;
      }
      for (int li = 0; li < ncols() && live(c); ++li)
        if (cell(c, static_cast<Letter>(li)) == none && !define(c, static_cast<Letter>(li))) return false;
    }
    return true;
  }

  bool run_felsch() {
    // Cyclic conjugates of relators and their inverses, bucketed by first letter.
    std::array<std::vector<LetterString>, 4> conj;
    for (auto const& r : relators_)
      for (auto const& t : {r, inverse_letters(r)})
        for (auto const& rot : rotations(t))
          if (!rot.empty()) conj[static_cast<Letter>(rot[0])].push_back(rot);
    for (auto& v : conj) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }

    record_deductions_ = true;
    for (auto const& h : subgroup_)
      if (!scan(0, h, true)) return false;
    for (auto const& r : relators_)
      if (!scan(0, r, true)) return false;

    auto process = [&]() {
      while (!deductions_.empty()) {
        auto [d, l] = deductions_.back();
        deductions_.pop_back();
        if (!live(d)) continue;
        for (auto const& w : conj[l]) {
          if (!live(d)) break;
          scan(d, w, false);
        }
        std::int32_t e = cell(d, l);
        if (e == none || !live(e)) continue;
        for (auto const& w : conj[inverse_letter(l)]) {
          if (!live(e)) break;
          scan(e, w, false);
        }
        for (auto const& h : subgroup_) scan(0, h, false);
      }
    };
    process();

    std::int32_t c = 0;
    int li = 0;
    while (true) {
      while (c < static_cast<std::int32_t>(tab_.size()) &&
             (!live(c) || cell(c, static_cast<Letter>(li)) != none)) {
        if (++li == ncols()) {
          li = 0;
          ++c;
        }
      }
      if (c >= static_cast<std::int32_t>(tab_.size())) break;
      if (!define(c, static_cast<Letter>(li))) return false;
      process();
    }
    // Closing sweep: a complete Felsch table is already consistent, this
    // only guards against deductions dropped at dead cosets.
    record_deductions_ = false;
    for (std::int32_t d = 0; d < static_cast<std::int32_t>(tab_.size()); ++d)
      for (auto const& r : relators_)
        if (live(d)) scan(d, r, false);
    for (std::int32_t d = 0; d < static_cast<std::int32_t>(tab_.size()); ++d)
      for (int l = 0; l < ncols() && live(d); ++l)
        if (cell(d, static_cast<Letter>(l)) == none) return run_hlt();
    return true;
  }

  CosetTable finish(bool ok) {
    CosetTable t;
    t.generators = ngens_;
    t.cosets_defined = tab_.size();
    if (!ok || overflow_) {
      t.status = CosetTable::Status::cap_exceeded;
      return t;
    }
    std::vector<std::int32_t> renum(tab_.size(), none);
    std::int32_t n = 0;
    for (std::int32_t c = 0; c < static_cast<std::int32_t>(tab_.size()); ++c)
      if (live(c)) renum[static_cast<std::size_t>(c)] = n++;
    for (std::int32_t c = 0; c < static_cast<std::int32_t>(tab_.size()); ++c)
      for (int l = 0; l < ncols() && live(c); ++l)
        if (cell(c, static_cast<Letter>(l)) == none) {
          t.status = CosetTable::Status::cap_exceeded;
          return t;
        }
    t.rows.reserve(static_cast<std::size_t>(n));
    for (std::int32_t c = 0; c < static_cast<std::int32_t>(tab_.size()); ++c) {
      if (!live(c)) continue;
      std::array<std::int32_t, 4> row{none, none, none, none};
      for (int l = 0; l < ncols(); ++l)
        row[static_cast<std::size_t>(l)] = renum[static_cast<std::size_t>(rep(cell(c, static_cast<Letter>(l))))];
      t.rows.push_back(row);
    }
    t.status = CosetTable::Status::complete;
    return t;
  }
};

}  // namespace detail

/// Enumerates the cosets of <subgroup> in <generators | relators>.  The cap
/// bounds the number of cosets ever defined, dead ones included.
inline CosetTable todd_coxeter(int generators, std::vector<LetterString> const& relators,
                               std::vector<LetterString> const& subgroup,
                               std::size_t max_cosets = 1000000,
                               CosetStrategy strategy = CosetStrategy::hlt) {
  std::vector<LetterString> rels, sub;
  for (auto const& r : relators)
    if (auto c = cyclically_reduce_letters(r); !c.empty()) rels.push_back(c);
  for (auto const& h : subgroup)
    if (auto c = free_reduce(h); !c.empty()) sub.push_back(c);
  return detail::CosetEnumerator(generators, rels, sub, max_cosets).run(strategy);
}

}  // namespace psl
