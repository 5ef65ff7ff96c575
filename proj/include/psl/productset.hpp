// Product sets BC, their fibers, and isoperimetric searches.
//
// kappa_search minimizes |BC \ B| over subsets B of a finite universe that
// contain the identity, with k <= |B| <= size_cap.  Results are always
// restricted to the declared universe.

#pragma once

#include <algorithm>
#include <atomic>
#include <climits>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "psl/group.hpp"

namespace psl {

class claim_contradiction : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Fiber {
  std::size_t b = 0;  // index into B
  std::size_t c = 0;  // index into C
};

struct ProductStats {
  ElementSet B, C;
  ElementSet BC;                    // sorted
  std::vector<std::vector<Fiber>> fibers;  // parallel to BC
  ElementSet boundary;              // BC \ B, sorted

  std::size_t r(GroupElement const& x) const {
    auto it = std::lower_bound(BC.begin(), BC.end(), x);
    if (it == BC.end() || *it != x) return 0;
    return fibers[static_cast<std::size_t>(it - BC.begin())].size();
  }

  /// fiber size -> number of elements of BC with that fiber size
  std::map<std::size_t, std::size_t> histogram() const {
    std::map<std::size_t, std::size_t> h;
    for (auto const& f : fibers) ++h[f.size()];
    return h;
  }

  /// Checks the counting invariants; returns a description of the first
  /// failure or an empty string.
  std::string invariant_failure() const {
    std::size_t total = 0;
    std::size_t cap = std::min(B.size(), C.size());
    for (auto const& f : fibers) {
      if (f.empty() || f.size() > cap) return "fiber size out of range";
      total += f.size();
    }
    if (total != B.size() * C.size()) return "fiber sizes do not sum to |B||C|";
    ElementSet sortedB = B;
    std::sort(sortedB.begin(), sortedB.end());
    ElementSet diff;
    std::set_difference(BC.begin(), BC.end(), sortedB.begin(), sortedB.end(), std::back_inserter(diff));
    if (diff != boundary) return "boundary differs from BC \\ B";
    return {};
  }
};

namespace detail {

inline void require_distinct(ElementSet const& s, char const* what) {
  ElementSet t = s;
  std::sort(t.begin(), t.end());
  if (std::adjacent_find(t.begin(), t.end()) != t.end())
    throw std::invalid_argument(std::string(what) + " contains a repeated element");
}

}  // namespace detail

inline ProductStats product_stats(GroupModel const& m, ElementSet const& B, ElementSet const& C) {
  if (B.empty() || C.empty()) throw std::invalid_argument("product_stats needs nonempty B and C");
  detail::require_distinct(B, "B");
  detail::require_distinct(C, "C");
  std::map<GroupElement, std::vector<Fiber>> groups;
  for (std::size_t i = 0; i < B.size(); ++i)
    for (std::size_t j = 0; j < C.size(); ++j) groups[m.multiply(B[i], C[j])].push_back({i, j});
  ProductStats s;
  s.B = B;
  s.C = C;
  for (auto& [x, f] : groups) {
    s.BC.push_back(x);
    s.fibers.push_back(std::move(f));
  }
  ElementSet sortedB = B;
  std::sort(sortedB.begin(), sortedB.end());
  std::set_difference(s.BC.begin(), s.BC.end(), sortedB.begin(), sortedB.end(), std::back_inserter(s.boundary));
  return s;
}

struct UniqueProduct {
  GroupElement x, b, c;
};

inline std::vector<UniqueProduct> unique_product_witnesses(GroupModel const& m, ElementSet const& B,
                                                           ElementSet const& C) {
  auto s = product_stats(m, B, C);
  std::vector<UniqueProduct> out;
  for (std::size_t i = 0; i < s.BC.size(); ++i)
    if (s.fibers[i].size() == 1) out.push_back({s.BC[i], B[s.fibers[i][0].b], C[s.fibers[i][0].c]});
  return out;
}

/// True if some pair of elements of C fails to commute.
inline bool generates_nonabelian(GroupModel const& m, ElementSet const& C) {
  for (std::size_t i = 0; i < C.size(); ++i)
    for (std::size_t j = i + 1; j < C.size(); ++j)
      if (!m.commute(C[i], C[j])) return true;
  return false;
}

/// |BC| >= |B| + |C| - 1, valid in every torsion-free group.
inline bool kemperman_bound_holds(ProductStats const& s) {
  return s.BC.size() + 1 >= s.B.size() + s.C.size();
}

/// |BC| >= |B| + |C| + 1 when 1 in C, <C> non-abelian and |B| >= 4 (in a
/// torsion-free group).  Returns nullopt when the hypotheses fail.
inline std::optional<bool> hamidoune_bound_holds(GroupModel const& m, ProductStats const& s) {
  bool has_identity = std::find(s.C.begin(), s.C.end(), m.identity()) != s.C.end();
  if (!has_identity || s.B.size() < 4 || !generates_nonabelian(m, s.C)) return std::nullopt;
  return s.BC.size() >= s.B.size() + s.C.size() + 1;
}

// ---------------------------------------------------------------------------
// Indexed universe: elements of U get ids 0..|U|-1 in universe order, every
// product u*c gets an id (new ids past |U| for products outside U).

class IndexedUniverse {
 public:
  IndexedUniverse(GroupModel const& m, ElementSet universe, ElementSet C)
      : universe_(std::move(universe)), C_(std::move(C)) {
    for (std::size_t i = 0; i < universe_.size(); ++i) intern(universe_[i]);
    if (ids_.size() != universe_.size()) throw std::invalid_argument("universe contains a repeated element");
    prod_.resize(universe_.size() * C_.size());
    for (std::size_t u = 0; u < universe_.size(); ++u)
      for (std::size_t c = 0; c < C_.size(); ++c) prod_[u * C_.size() + c] = intern(m.multiply(universe_[u], C_[c]));
  }

  std::size_t size() const noexcept { return universe_.size(); }
  std::size_t id_count() const noexcept { return all_.size(); }
  std::size_t csize() const noexcept { return C_.size(); }
  std::int32_t product(std::size_t u, std::size_t c) const { return prod_[u * C_.size() + c]; }
  ElementSet const& universe() const noexcept { return universe_; }
  ElementSet const& C() const noexcept { return C_; }
  GroupElement const& element(std::size_t id) const { return all_[id]; }

  std::optional<std::size_t> find(GroupElement const& g) const {
    auto it = ids_.find(g);
    if (it == ids_.end() || it->second >= universe_.size()) return std::nullopt;
    return it->second;
  }

 private:
  ElementSet universe_, C_;
  std::unordered_map<GroupElement, std::size_t, ElementHash> ids_;
  ElementSet all_;
  std::vector<std::int32_t> prod_;

  std::int32_t intern(GroupElement const& g) {
    auto [it, fresh] = ids_.emplace(g, all_.size());
    if (fresh) all_.push_back(g);
    return static_cast<std::int32_t>(it->second);
  }
};

struct KappaWitness {
  ElementSet B;
  std::size_t product_size = 0;  // |BC|
};

struct KappaReport {
  std::string model;
  ElementSet C;
  std::size_t k = 0;
  std::size_t size_cap = 0;
  std::string universe_label;
  std::size_t universe_size = 0;
  std::optional<std::size_t> kappa_min;       // min |BC \ B|; empty if nothing was enumerated
  std::map<std::size_t, std::size_t> optimal_count_by_size;  // |B| -> number of minimizers
  std::vector<KappaWitness> witnesses;        // capped, in canonical order
  std::vector<KappaWitness> smallest_witnesses;  // minimizers of least cardinality, capped
  std::uint64_t nodes = 0;
  bool exhaustive_within_universe = true;
  bool restricted = true;

  std::optional<std::size_t> min_product_size() const {
    if (!kappa_min || optimal_count_by_size.empty()) return std::nullopt;
    return *kappa_min + optimal_count_by_size.begin()->first;
  }
};

struct KappaOptions {
  std::size_t workers = 1;
  std::size_t max_witnesses = 32;
  bool prune = true;
  std::string universe_label = "explicit";
};

namespace detail {

struct KappaTaskResult {
  std::size_t best = SIZE_MAX;
  std::map<std::size_t, std::size_t> count_by_size;
  std::vector<std::vector<std::int32_t>> witnesses;
  std::map<std::size_t, std::vector<std::vector<std::int32_t>>> by_size;
  std::uint64_t nodes = 0;
};

class KappaSearch {
 public:
  KappaSearch(IndexedUniverse const& U, std::size_t k, std::size_t cap, std::size_t max_witnesses, bool prune,
              std::atomic<std::size_t>& incumbent)
      : U_(U), k_(k), cap_(cap), maxw_(max_witnesses), prune_(prune), best_(incumbent),
        count_(U.id_count(), 0), inB_(U.size(), 0) {}

  KappaTaskResult run_root() {
    add(0);
    visit_node(0, /*children=*/false);
    remove(0);
    return std::move(res_);
  }

  KappaTaskResult run_from(std::int32_t j) {
    add(0);
    if (!prune_ || lower_bound_all(0, j) <= best_.load(std::memory_order_relaxed)) {
      add(j);
      dfs(j);
      remove(j);
    }
    remove(0);
    return std::move(res_);
  }

 private:
  IndexedUniverse const& U_;
  std::size_t k_, cap_, maxw_;
  bool prune_;
  std::atomic<std::size_t>& best_;
  std::vector<std::uint16_t> count_;
  std::vector<std::uint8_t> inB_;
  std::vector<std::int32_t> B_;
  std::size_t distinct_ = 0, outside_ = 0;
  std::vector<std::int32_t> inside_;  // distinct in-universe ids of BC, unordered
  KappaTaskResult res_;

  void add(std::int32_t u) {
    B_.push_back(u);
    inB_[static_cast<std::size_t>(u)] = 1;
    for (std::size_t c = 0; c < U_.csize(); ++c) {
      auto id = U_.product(static_cast<std::size_t>(u), c);
      if (count_[static_cast<std::size_t>(id)]++ == 0) {
        ++distinct_;
        if (static_cast<std::size_t>(id) < U_.size())
          inside_.push_back(id);
        else
          ++outside_;
      }
    }
  }

  void remove(std::int32_t u) {
    for (std::size_t c = U_.csize(); c-- > 0;) {
      auto id = U_.product(static_cast<std::size_t>(u), c);
      if (--count_[static_cast<std::size_t>(id)] == 0) {
        --distinct_;
        if (static_cast<std::size_t>(id) < U_.size()) {
          auto it = std::find(inside_.begin(), inside_.end(), id);
          *it = inside_.back();
          inside_.pop_back();
        } else {
          --outside_;
        }
      }
    }
    inB_[static_cast<std::size_t>(u)] = 0;
    B_.pop_back();
  }

  // Lower bound on |BC \ B| over every B that extends the current set by
  // elements with index >= j only.
  std::size_t lower_bound_all(std::int32_t /*last*/, std::int32_t j) const {
    std::size_t definite = outside_, pending = 0;
    for (auto id : inside_) {
      if (inB_[static_cast<std::size_t>(id)]) continue;
      if (id < j)
        ++definite;
      else
        ++pending;
    }
    std::size_t room = cap_ - B_.size();
    return definite + (pending > room ? pending - room : 0);
  }

  void record() {
    std::size_t value = distinct_ - B_.size();
    std::size_t cur = best_.load(std::memory_order_relaxed);
    while (value < cur && !best_.compare_exchange_weak(cur, value, std::memory_order_relaxed)) {
    }
    if (value > res_.best) return;
    if (value < res_.best) {
      res_.best = value;
      res_.count_by_size.clear();
      res_.witnesses.clear();
      res_.by_size.clear();
    }
    ++res_.count_by_size[B_.size()];
    if (res_.witnesses.size() < maxw_) res_.witnesses.push_back(B_);
    auto& bucket = res_.by_size[B_.size()];
    if (bucket.size() < maxw_) bucket.push_back(B_);
  }

  void visit_node(std::int32_t last, bool children) {
    ++res_.nodes;
    if (B_.size() >= k_) record();
    if (!children || B_.size() >= cap_) return;
    std::vector<std::int32_t> pend;
    if (prune_) {
      for (auto id : inside_)
        if (!inB_[static_cast<std::size_t>(id)] && id > last) pend.push_back(id);
      std::sort(pend.begin(), pend.end());
    }
    std::size_t definite_base = 0;
    if (prune_) {
      definite_base = outside_;
      for (auto id : inside_)
        if (!inB_[static_cast<std::size_t>(id)] && id <= last) ++definite_base;
    }
    std::size_t room = cap_ - B_.size();
    std::size_t p = 0;
    for (auto j = last + 1; j < static_cast<std::int32_t>(U_.size()); ++j) {
      if (prune_) {
        while (p < pend.size() && pend[p] < j) ++p;
        std::size_t rest = pend.size() - p;
        std::size_t lb = definite_base + p + (rest > room ? rest - room : 0);
        if (lb > best_.load(std::memory_order_relaxed)) break;
      }
      add(j);
      if (!prune_ || lower_bound_all(j, j + 1) <= best_.load(std::memory_order_relaxed)) dfs(j);
      remove(j);
    }
  }

  void dfs(std::int32_t last) { visit_node(last, true); }
};

}  // namespace detail

/// Exact minimum of |BC \ B| over B in the universe with identity in B and
/// k <= |B| <= size_cap.  The universe must contain the identity; its order
/// fixes the canonical enumeration order.
inline KappaReport kappa_search(GroupModel const& m, ElementSet const& C, std::size_t k, ElementSet const& universe,
                                std::size_t size_cap, KappaOptions const& opt = {}) {
  if (std::find(C.begin(), C.end(), m.identity()) == C.end())
    throw std::invalid_argument("kappa_search requires the identity in C");
  if (k < 1) throw std::invalid_argument("kappa_search requires k >= 1");
  if (universe.size() < k) throw std::invalid_argument("universe is smaller than k");
  if (size_cap < k) throw std::invalid_argument("size cap is smaller than k");
  ElementSet U = universe;
  auto idpos = std::find(U.begin(), U.end(), m.identity());
  if (idpos == U.end()) throw std::invalid_argument("universe must contain the identity");
  std::rotate(U.begin(), idpos, idpos + 1);  // identity gets index 0

  IndexedUniverse IU(m, U, C);
  std::atomic<std::size_t> incumbent{SIZE_MAX};
  auto const n = static_cast<std::int32_t>(IU.size());

  std::vector<detail::KappaTaskResult> results(static_cast<std::size_t>(n));
  results[0] = detail::KappaSearch(IU, k, size_cap, opt.max_witnesses, opt.prune, incumbent).run_root();
  std::atomic<std::int32_t> next{1};
  auto worker = [&] {
    while (true) {
      auto j = next.fetch_add(1);
      if (j >= n) return;
      if (size_cap < 2) continue;
      results[static_cast<std::size_t>(j)] =
          detail::KappaSearch(IU, k, size_cap, opt.max_witnesses, opt.prune, incumbent).run_from(j);
    }
  };
  std::size_t nworkers = std::max<std::size_t>(1, opt.workers);
  if (nworkers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < nworkers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  KappaReport rep;
  rep.model = m.name();
  rep.C = C;
  rep.k = k;
  rep.size_cap = size_cap;
  rep.universe_label = opt.universe_label;
  rep.universe_size = U.size();
  std::size_t best = SIZE_MAX;
  for (auto const& r : results) {
    best = std::min(best, r.best);
    rep.nodes += r.nodes;
  }
  if (best == SIZE_MAX) return rep;
  rep.kappa_min = best;
  auto to_set = [&](std::vector<std::int32_t> const& ids) {
    ElementSet s;
    for (auto id : ids) s.push_back(IU.element(static_cast<std::size_t>(id)));
    return KappaWitness{s, best + ids.size()};
  };
  for (auto const& r : results) {
    if (r.best != best) continue;
    for (auto const& [sz, cnt] : r.count_by_size) rep.optimal_count_by_size[sz] += cnt;
    for (auto const& w : r.witnesses)
      if (rep.witnesses.size() < opt.max_witnesses) rep.witnesses.push_back(to_set(w));
  }
  std::size_t smallest = rep.optimal_count_by_size.begin()->first;
  for (auto const& r : results) {
    if (r.best != best) continue;
    auto it = r.by_size.find(smallest);
    if (it == r.by_size.end()) continue;
    for (auto const& w : it->second)
      if (rep.smallest_witnesses.size() < opt.max_witnesses) rep.smallest_witnesses.push_back(to_set(w));
  }
  return rep;
}

/// Reference implementation without pruning or indexing: every subset of
/// the universe containing the identity, product sets built from scratch.
/// Only for small universes (at most 24 elements).
inline std::optional<std::size_t> kappa_search_plain(GroupModel const& m, ElementSet const& C, std::size_t k,
                                                     ElementSet const& universe, std::size_t size_cap) {
  if (universe.size() > 24) throw std::invalid_argument("kappa_search_plain is limited to 24 elements");
  ElementSet rest;
  for (auto const& u : universe)
    if (u != m.identity()) rest.push_back(u);
  std::optional<std::size_t> best;
  for (std::uint32_t mask = 0; mask < (1U << rest.size()); ++mask) {
    std::size_t size = 1 + static_cast<std::size_t>(__builtin_popcount(mask));
    if (size < k || size > size_cap) continue;
    ElementSet B{m.identity()};
    for (std::size_t i = 0; i < rest.size(); ++i)
      if (mask & (1U << i)) B.push_back(rest[i]);
    ElementSet BC;
    for (auto const& b : B)
      for (auto const& c : C) BC.push_back(m.multiply(b, c));
    BC = normalize_set(BC);
    std::size_t boundary = 0;
    for (auto const& x : BC)
      if (std::find(B.begin(), B.end(), x) == B.end()) ++boundary;
    if (!best || boundary < *best) best = boundary;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Atom validation.

struct AtomCheck {
  ElementSet B;
  bool two_fold_applies = false;   // |B| > k
  bool two_fold_holds = true;      // every z in BC has |zC^-1 cap B| >= 2
  bool two_fold_boundary_effect = false;  // the only failure removes the identity and no translate fits
  std::size_t overlap_max = 0;   // max |B cap Bg| over g in B^-1 B \ {1}
  double overlap_bound = 0;              // ((k-2)|B| + 1) / (k-1)
  bool overlap_holds = true;
};

/// Minimizers of least cardinality, each validated.  Throws
/// claim_contradiction when a validated property fails in a way the
/// restricted universe cannot explain.
inline std::vector<AtomCheck> atom_candidates(GroupModel const& m, KappaReport const& rep,
                                              ElementSet const& universe) {
  if (!rep.kappa_min) throw std::invalid_argument("atom_candidates needs a completed report");
  std::vector<AtomCheck> out;
  std::vector<GroupElement> Cinv;
  for (auto const& c : rep.C) Cinv.push_back(m.inverse(c));
  ElementSet U = normalize_set(universe);
  auto in_universe = [&](GroupElement const& g) { return std::binary_search(U.begin(), U.end(), g); };

  for (auto const& w : rep.smallest_witnesses) {
    AtomCheck a;
    a.B = w.B;
    ElementSet B = normalize_set(w.B);
    auto s = product_stats(m, w.B, rep.C);
    a.two_fold_applies = B.size() > rep.k;
    if (a.two_fold_applies) {
      for (std::size_t i = 0; i < s.BC.size(); ++i) {
        if (s.fibers[i].size() >= 2) continue;
        a.two_fold_holds = false;
        GroupElement b = w.B[s.fibers[i][0].b];
        if (b != m.identity()) continue;  // removing b keeps the identity: genuine failure
        // B \ {1} must be translated back to contain the identity.
        bool fits = false;
        for (auto const& b0 : B) {
          if (b0 == m.identity()) continue;
          auto inv = m.inverse(b0);
          bool all = true;
          for (auto const& t : B)
            if (t != m.identity() && !in_universe(m.multiply(inv, t))) all = false;
          if (all) fits = true;
        }
        if (!fits) a.two_fold_boundary_effect = true;
      }
      if (!a.two_fold_holds && !a.two_fold_boundary_effect)
        throw claim_contradiction("minimizer " + m.to_string(w.B) + " has a unique product although |B| > k");
    }
    if (rep.k >= 2) {
      a.overlap_bound = (static_cast<double>(rep.k - 2) * static_cast<double>(B.size()) + 1.0) /
                       static_cast<double>(rep.k - 1);
      for (auto const& p : B)
        for (auto const& q : B) {
          auto g = m.multiply(m.inverse(p), q);
          if (g == m.identity()) continue;
          std::size_t overlap = 0;
          for (auto const& t : B)
            if (std::binary_search(B.begin(), B.end(), m.multiply(t, g))) ++overlap;
          a.overlap_max = std::max(a.overlap_max, overlap);
        }
      a.overlap_holds = static_cast<double>(a.overlap_max) <= a.overlap_bound + 1e-9;
      if (!a.overlap_holds)
        throw claim_contradiction("minimizer " + m.to_string(w.B) + " violates the overlap bound for atoms");
    }
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace psl
