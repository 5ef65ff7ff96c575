// Group algebras F_p[G] over the shipped models, zero-divisor and unit
// certificates built from product sets, and bounded support scans.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "psl/group.hpp"
#include "psl/productset.hpp"

namespace psl {

class algebra_mismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class AlgebraElement {
 public:
  AlgebraElement(GroupModel model, std::uint32_t p = 2) : model_(std::move(model)), p_(p) {
    if (p < 2) throw std::invalid_argument("characteristic must be a prime >= 2");
    for (std::uint32_t d = 2; d * d <= p; ++d)
      if (p % d == 0) throw std::invalid_argument("characteristic must be prime");
  }

  /// Sum of the elements of a set, each with coefficient 1.
  static AlgebraElement sum(GroupModel const& m, ElementSet const& s, std::uint32_t p = 2) {
    AlgebraElement a(m, p);
    for (auto const& g : s) a.add(g, 1);
    return a;
  }

  GroupModel const& model() const noexcept { return model_; }
  std::uint32_t characteristic() const noexcept { return p_; }
  std::map<GroupElement, std::uint32_t> const& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  ElementSet support() const {
    ElementSet s;
    for (auto const& [g, c] : terms_) s.push_back(g);
    return s;
  }

  std::uint32_t coefficient(GroupElement const& g) const {
    auto it = terms_.find(g);
    return it == terms_.end() ? 0 : it->second;
  }

  /// Adds c * g; coefficients are reduced mod p and zero terms dropped.
  void add(GroupElement const& g, std::int64_t c) {
    auto p = static_cast<std::int64_t>(p_);
    auto r = static_cast<std::uint32_t>(((c % p) + p) % p);
    if (r == 0) return;
    auto& slot = terms_[g];
    slot = (slot + r) % p_;
    if (slot == 0) terms_.erase(g);
  }

  friend bool operator==(AlgebraElement const& a, AlgebraElement const& b) {
    return a.p_ == b.p_ && same_model(a.model_, b.model_) && a.terms_ == b.terms_;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto const& [g, c] : terms_) {
      if (!out.empty()) out += " + ";
      if (c != 1) out += std::to_string(c) + "*";
      out += "[" + model_.to_string(g) + "]";
    }
    return out;
  }

 private:
  GroupModel model_;
  std::uint32_t p_;
  std::map<GroupElement, std::uint32_t> terms_;
};

inline AlgebraElement multiply_algebra(AlgebraElement const& a, AlgebraElement const& b) {
  if (!same_model(a.model(), b.model())) throw algebra_mismatch("elements live in different groups");
  if (a.characteristic() != b.characteristic()) throw algebra_mismatch("elements live over different fields");
  auto const& m = a.model();
  std::uint64_t p = a.characteristic();
  std::map<GroupElement, std::uint64_t> acc;
  for (auto const& [g, c] : a.terms())
    for (auto const& [h, d] : b.terms()) {
      auto& slot = acc[m.multiply(g, h)];
      slot = (slot + static_cast<std::uint64_t>(c) * d) % p;
    }
  AlgebraElement out(m, a.characteristic());
  for (auto const& [g, c] : acc) out.add(g, static_cast<std::int64_t>(c));
  return out;
}

// ---------------------------------------------------------------------------
// Certificates.

enum class CertificateKind { zero_divisor, unit };

inline char const* certificate_kind_name(CertificateKind k) {
  return k == CertificateKind::zero_divisor ? "ZeroDivisor" : "Unit";
}

struct CertificateProvenance {
  ElementSet A, C;
  std::size_t product_size = 0;
  std::map<std::size_t, std::size_t> fiber_histogram;
};

/// alpha * beta equals 0 (zero divisor) or the identity (unit), with alpha
/// and beta nonzero.
struct Certificate {
  CertificateKind kind = CertificateKind::zero_divisor;
  AlgebraElement alpha, beta;
  CertificateProvenance provenance;
};

/// Over F_2 with alpha = sum A and beta = sum C the coefficient of x in
/// alpha*beta is r_AC(x) mod 2.  All fibers of size 2 give a zero divisor
/// (then |AC| = |A||C|/2).  One fiber of odd size, usually 3, and the rest
/// of size 2 give a unit after multiplying by a0^-1 on the left and c0^-1
/// on the right, where a0 c0 lies in the odd fiber.
inline std::optional<Certificate> certificate_from_atom(GroupModel const& m, ElementSet const& A,
                                                        ElementSet const& C, ProductStats const& stats) {
  auto hist = stats.histogram();
  std::size_t ac = A.size() * C.size();
  CertificateProvenance prov{A, C, stats.BC.size(), hist};
  if (hist.size() == 1 && hist.count(2) && 2 * stats.BC.size() == ac) {
    return Certificate{CertificateKind::zero_divisor, AlgebraElement::sum(m, A), AlgebraElement::sum(m, C), prov};
  }
  std::size_t odd = 0, other = 0;
  for (auto const& [size, n] : hist) {
    if (size % 2 == 1) odd += n;
    else if (size != 2) other += n;
  }
  if (odd == 1 && other == 0) {
    for (std::size_t i = 0; i < stats.BC.size(); ++i) {
      if (stats.fibers[i].size() % 2 == 0) continue;
      auto const& f = stats.fibers[i][0];
      auto a0inv = m.inverse(A[f.b]);
      auto c0inv = m.inverse(C[f.c]);
      AlgebraElement alpha(m), beta(m);
      for (auto const& a : A) alpha.add(m.multiply(a0inv, a), 1);
      for (auto const& c : C) beta.add(m.multiply(c, c0inv), 1);
      return Certificate{CertificateKind::unit, alpha, beta, prov};
    }
  }
  return std::nullopt;
}

/// Recomputes alpha * beta term by term with a hash table and compares it
/// with the claim.
inline bool verify_certificate(Certificate const& cert) {
  auto const& m = cert.alpha.model();
  if (!same_model(m, cert.beta.model()) || cert.alpha.characteristic() != cert.beta.characteristic()) return false;
  if (cert.alpha.is_zero() || cert.beta.is_zero()) return false;
  std::uint64_t p = cert.alpha.characteristic();
  std::unordered_map<GroupElement, std::uint64_t, ElementHash> coeff;
  for (auto const& [g, c] : cert.alpha.terms())
    for (auto const& [h, d] : cert.beta.terms()) coeff[m.multiply(g, h)] += static_cast<std::uint64_t>(c) * d;
  std::size_t nonzero = 0;
  bool identity_one = false;
  for (auto const& [g, c] : coeff) {
    if (c % p == 0) continue;
    ++nonzero;
    if (g == m.identity() && c % p == 1) identity_one = true;
  }
  if (cert.kind == CertificateKind::zero_divisor) return nonzero == 0;
  return nonzero == 1 && identity_one;
}

/// The finite group <g | g^2> as a rewriting model; g is x.
inline GroupModel cyclic2_model() {
  Presentation p{1, {Word::parse("x^2")}};
  auto q = instantiate_quotient(p, 100, 10, "<g | g^2>");
  if (!q.model) throw std::logic_error("completion of <g | g^2> failed");
  return *q.model;
}

/// (1 + g)(1 + g) = 0 in F_2[<g | g^2>].
inline Certificate positive_control_certificate() {
  auto m = cyclic2_model();
  ElementSet A{m.identity(), m.gen_x()};
  auto stats = product_stats(m, A, A);
  auto c = certificate_from_atom(m, A, A, stats);
  if (!c) throw std::logic_error("positive control produced no certificate");
  return *c;
}

// ---------------------------------------------------------------------------
// Support scans.

struct SupportScanRow {
  std::size_t s = 0;
  // zero divisor: every fiber of BC has size 2, so |BC| = 3s/2
  bool zd_counting_feasible = false;  // s + 5 <= 3s/2
  std::size_t zd_found = 0;           // sets B with 1 in B, |B| = s, found in the universe
  // unit: one fiber of odd size, the others of size 2
  bool unit_counting_feasible = false;  // s + 5 <= (3s + 1)/2
  std::size_t unit_found = 0;
};

struct SupportScanReport {
  std::string model;
  ElementSet C;
  std::size_t universe_size = 0;
  std::string universe_label;
  std::size_t max_support = 0;
  std::vector<SupportScanRow> rows;
  std::vector<Certificate> certificates;  // nonempty would refute the conjectures in the model
  std::uint64_t nodes = 0;
};

namespace detail {

/// Depth-first completion: starting from {1}, an element z of BC whose
/// fiber has size 1 must gain a second factorization z = b'c', so b' is one
/// of the at most |C|-1 elements of zC^-1 outside B.  Every admissible set
/// containing {1} is reached along the branch that follows its own
/// elements, so the search is exhaustive for sets of size <= max inside the
/// universe.
class SupportSearch {
 public:
  SupportSearch(GroupModel const& m, ElementSet const& C, ElementSet const& universe, std::size_t max, bool unit)
      : m_(m), C_(C), max_(max), unit_(unit) {
    U_ = normalize_set(universe);
    for (auto const& c : C) Cinv_.push_back(m.inverse(c));
  }

  std::vector<ElementSet> run() {
    std::vector<GroupElement> B{m_.identity()};
    search(B, std::nullopt);
    return std::vector<ElementSet>(found_.begin(), found_.end());
  }

  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  GroupModel const& m_;
  ElementSet C_, Cinv_, U_;
  std::size_t max_;
  bool unit_;
  std::set<ElementSet> found_;
  std::set<std::pair<ElementSet, std::optional<GroupElement>>> seen_;
  std::uint64_t nodes_ = 0;

  bool in_universe(GroupElement const& g) const { return std::binary_search(U_.begin(), U_.end(), g); }

  // In the unit case `odd` is the product chosen to keep an odd fiber.
  void search(std::vector<GroupElement>& B, std::optional<GroupElement> const& odd) {
    ++nodes_;
    auto key = normalize_set(B);
    if (!seen_.insert({key, odd}).second) return;
    std::map<GroupElement, std::size_t> r;
    for (auto const& b : B)
      for (auto const& c : C_) ++r[m_.multiply(b, c)];
    std::size_t odd_count = 0;
    std::set<GroupElement> fixed_odd;  // fibers that stay odd whatever is added
    for (auto const& [z, n] : r) {
      odd_count += n % 2;
      if (n == 3) fixed_odd.insert(z);
    }
    if (odd) fixed_odd.insert(*odd);
    if (odd_count == (unit_ ? 1U : 0U)) {
      found_.insert(key);
      return;
    }
    if (B.size() >= max_ || fixed_odd.size() > (unit_ ? 1U : 0U)) return;

    // Branch on the lonely product with fewest possible second factorizations.
    std::optional<GroupElement> pick;
    std::vector<GroupElement> best;
    for (auto const& [z, n] : r) {
      if (n != 1 || (odd && z == *odd)) continue;
      std::vector<GroupElement> fixes;
      for (auto const& ci : Cinv_) {
        auto b = m_.multiply(z, ci);
        if (std::find(B.begin(), B.end(), b) == B.end() && in_universe(b)) fixes.push_back(b);
      }
      if (!pick || fixes.size() < best.size()) {
        pick = z;
        best = std::move(fixes);
      }
    }
    if (!pick) return;
    for (auto const& b : best) {
      B.push_back(b);
      search(B, odd);
      B.pop_back();
    }
    if (unit_ && fixed_odd.empty()) search(B, pick);
  }
};

}  // namespace detail

/// For each s <= max_support, the counting test from |B| + 5 <= |BC| and
/// the fiber constraints, and an exhaustive search for B in the universe
/// whose product set with C has the required fibers.  Any set found is
/// turned into a certificate.
inline SupportScanReport support_bound_scan(GroupModel const& m, ElementSet const& C, std::size_t max_support,
                                            ElementSet const& universe, std::string universe_label = "explicit") {
  if (C.size() != 3) throw std::invalid_argument("support_bound_scan needs |C| = 3");
  if (std::find(C.begin(), C.end(), m.identity()) == C.end())
    throw std::invalid_argument("support_bound_scan needs the identity in C");
  SupportScanReport rep;
  rep.model = m.name();
  rep.C = C;
  rep.universe_size = universe.size();
  rep.universe_label = std::move(universe_label);
  rep.max_support = max_support;

  std::map<std::size_t, std::size_t> zd, un;
  for (bool unit : {false, true}) {
    detail::SupportSearch search(m, C, universe, max_support, unit);
    for (auto const& B : search.run()) {
      ++(unit ? un : zd)[B.size()];
      auto stats = product_stats(m, B, C);
      if (auto cert = certificate_from_atom(m, B, C, stats)) rep.certificates.push_back(*cert);
    }
    rep.nodes += search.nodes();
  }
  for (std::size_t s = 1; s <= max_support; ++s) {
    SupportScanRow row;
    row.s = s;
    row.zd_counting_feasible = 2 * (s + 5) <= 3 * s;
    row.unit_counting_feasible = 2 * (s + 5) <= 3 * s + 1;
    row.zd_found = zd[s];
    row.unit_found = un[s];
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace psl
