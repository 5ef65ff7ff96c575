// The product set graph P(B, C): vertices B, one edge per coincidence
// bc = b'c' with b != b'.  Cycles carry 2n-tuples of C-indices whose
// telescoping product r(T) is trivial; tuples are compared up to block
// rotation and reversal.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "psl/group.hpp"
#include "psl/productset.hpp"

namespace psl {

struct PSEdge {
  std::size_t b = 0, bp = 0;  // vertex indices into B, b < bp
  std::size_t c = 0, cp = 0;  // indices into C with B[b] C[c] = B[bp] C[cp]

  friend auto operator<=>(PSEdge const&, PSEdge const&) = default;
};

class graph_corruption : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct PSGraph {
  ElementSet B, C;
  std::vector<PSEdge> edges;  // sorted

  std::size_t vertex_count() const noexcept { return B.size(); }

  /// Number of parallel edges between u and v.
  std::size_t multiplicity(std::size_t u, std::size_t v) const {
    if (u > v) std::swap(u, v);
    std::size_t n = 0;
    for (auto const& e : edges) n += e.b == u && e.bp == v;
    return n;
  }

  bool has_multi_edge() const {
    for (std::size_t i = 1; i < edges.size(); ++i)
      if (edges[i].b == edges[i - 1].b && edges[i].bp == edges[i - 1].bp) return true;
    return false;
  }

  /// Adjacency of the underlying simple graph.
  std::vector<std::vector<std::size_t>> adjacency() const {
    std::vector<std::set<std::size_t>> s(B.size());
    for (auto const& e : edges) {
      s[e.b].insert(e.bp);
      s[e.bp].insert(e.b);
    }
    std::vector<std::vector<std::size_t>> out;
    for (auto const& v : s) out.emplace_back(v.begin(), v.end());
    return out;
  }
};

inline PSGraph build_graph(GroupModel const& m, ElementSet const& B, ElementSet const& C) {
  auto stats = product_stats(m, B, C);
  PSGraph g;
  g.B = B;
  g.C = C;
  for (auto const& fiber : stats.fibers)
    for (std::size_t i = 0; i < fiber.size(); ++i)
      for (std::size_t j = i + 1; j < fiber.size(); ++j) {
        Fiber p = fiber[i], q = fiber[j];
        if (p.b == q.b) continue;
        if (p.b > q.b) std::swap(p, q);
        if (m.multiply(B[p.b], C[p.c]) != m.multiply(B[q.b], C[q.c]))
          throw graph_corruption("edge does not satisfy bc = b'c'");
        g.edges.push_back({p.b, q.b, p.c, q.c});
      }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

/// True when <C> cannot be cyclic: the six quotients h^-1 h' (h != h')
/// are distinct or two elements of C fail to commute.
inline bool quotients_distinct(GroupModel const& m, ElementSet const& C) {
  ElementSet q;
  for (auto const& h : C)
    for (auto const& hp : C)
      if (h != hp) q.push_back(m.multiply(m.inverse(h), hp));
  return normalize_set(q).size() == q.size();
}

struct CayleyCheck {
  bool applicable = false;     // |C| = 3, identity in C, <C> not cyclic
  bool simple_graph_equal = false;
  bool multi_edge = false;
  bool ok() const noexcept { return simple_graph_equal && !multi_edge; }
};

/// Compares P(B, C) with the subgraph of the Cayley graph for
/// S = {h h'^-1 : h != h' in C} induced on B.  Throws claim_contradiction if
/// the comparison fails although <C> is not cyclic.
inline CayleyCheck cayley_induced_check(GroupModel const& m, ElementSet const& B, ElementSet const& C) {
  if (C.size() != 3) throw std::invalid_argument("cayley_induced_check needs |C| = 3");
  if (std::find(C.begin(), C.end(), m.identity()) == C.end())
    throw std::invalid_argument("cayley_induced_check needs the identity in C");
  CayleyCheck out;
  out.applicable = quotients_distinct(m, C) || generates_nonabelian(m, C);
  ElementSet S;
  for (auto const& h : C)
    for (auto const& hp : C)
      if (h != hp) S.push_back(m.multiply(h, m.inverse(hp)));
  S = normalize_set(S);
  auto g = build_graph(m, B, C);
  auto adj = g.adjacency();
  out.simple_graph_equal = true;
  for (std::size_t i = 0; i < B.size(); ++i)
    for (std::size_t j = i + 1; j < B.size(); ++j) {
      bool cayley = std::binary_search(S.begin(), S.end(), m.multiply(m.inverse(B[i]), B[j]));
      bool ps = std::binary_search(adj[i].begin(), adj[i].end(), j);
      if (cayley != ps) out.simple_graph_equal = false;
    }
  out.multi_edge = g.has_multi_edge();
  if (out.applicable && !out.ok())
    throw claim_contradiction("P(B,C) differs from the induced Cayley graph although <C> is not cyclic");
  return out;
}

// ---------------------------------------------------------------------------
// Cycle tuples.

struct CycleTuple {
  std::vector<int> h;  // [h1, h1', ..., hn, hn'] as indices into C

  std::size_t length() const noexcept { return h.size() / 2; }
  friend auto operator<=>(CycleTuple const&, CycleTuple const&) = default;
};

/// The 2n tuples obtained by block rotation and by reversal
/// [hn', hn, ..., h1', h1] followed by rotation.
inline std::vector<CycleTuple> tuple_closure(CycleTuple const& t) {
  std::size_t n = t.length();
  std::vector<std::pair<int, int>> blocks, rev;
  for (std::size_t i = 0; i < n; ++i) blocks.emplace_back(t.h[2 * i], t.h[2 * i + 1]);
  for (std::size_t i = n; i-- > 0;) rev.emplace_back(blocks[i].second, blocks[i].first);
  std::vector<CycleTuple> out;
  for (auto const* bl : {&blocks, &rev})
    for (std::size_t r = 0; r < n; ++r) {
      CycleTuple c;
      for (std::size_t i = 0; i < n; ++i) {
        auto const& p = (*bl)[(r + i) % n];
        c.h.push_back(p.first);
        c.h.push_back(p.second);
      }
      out.push_back(std::move(c));
    }
  return out;
}

/// Lexicographic minimum of the closure (C-index order).
inline CycleTuple tuple_class(CycleTuple const& t) {
  auto all = tuple_closure(t);
  return *std::min_element(all.begin(), all.end());
}

/// r(T) = (h1 h1'^-1)(h2 h2'^-1)...(hn hn'^-1) evaluated in the model.
inline GroupElement relator_value(GroupModel const& m, ElementSet const& C, CycleTuple const& t) {
  GroupElement out = m.identity();
  for (std::size_t i = 0; i < t.length(); ++i)
    out = m.multiply(out, m.multiply(C[static_cast<std::size_t>(t.h[2 * i])],
                                     m.inverse(C[static_cast<std::size_t>(t.h[2 * i + 1])])));
  return out;
}

/// r(T) as a reduced word for C = {1, x, y} (indices 0, 1, 2).
inline Word relator_word(CycleTuple const& t) {
  auto letter = [](int i) { return i == 0 ? Word{} : Word::generator(i - 1); };
  Word w;
  for (std::size_t i = 0; i < t.length(); ++i)
    w = w * letter(t.h[2 * i]) * letter(t.h[2 * i + 1]).inverse();
  return w;
}

enum class CycleType { type_i, type_ii, other };

inline char const* cycle_type_name(CycleType t) {
  switch (t) {
    case CycleType::type_i: return "i";
    case CycleType::type_ii: return "ii";
    case CycleType::other: return "other";
  }
  return "?";
}

/// Triangles: (i) iff h_i' = h_{i+1} for every i, (ii) iff h_i' != h_{i+1}
/// for every i.  Squares: (i) iff exactly one i has h_i' = h_{i+1}, (ii) iff
/// none does.  Indices are cyclic.
inline CycleType classify_cycle(CycleTuple const& t) {
  std::size_t n = t.length();
  if (n != 3 && n != 4) throw std::invalid_argument("classify_cycle handles triangles and squares only");
  for (std::size_t i = 0; i < n; ++i)
    if (t.h[2 * i] == t.h[2 * i + 1]) return CycleType::other;
  std::size_t equal = 0;
  for (std::size_t i = 0; i < n; ++i) equal += t.h[2 * i + 1] == t.h[(2 * i + 2) % (2 * n)];
  if (equal == 0) return CycleType::type_ii;
  if (n == 3 && equal == 3) return CycleType::type_i;
  if (n == 4 && equal == 1) return CycleType::type_i;
  return CycleType::other;
}

struct GraphCycle {
  std::vector<std::size_t> vertices;  // arrangement g1..gn
  CycleTuple tuple;
};

/// All cycles of length n of the multigraph, one arrangement per vertex
/// cycle (least vertex first, then the smaller neighbour), one tuple per
/// choice of parallel edges.  Each r(T) is checked against the model.
inline std::vector<GraphCycle> cycles(GroupModel const& m, PSGraph const& g, std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycles needs n >= 3");
  auto adj = g.adjacency();
  // parallel[u][v]: (c, c') with B[u] C[c] = B[v] C[c'].
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<int, int>>> parallel;
  for (auto const& e : g.edges) {
    parallel[{e.b, e.bp}].emplace_back(static_cast<int>(e.c), static_cast<int>(e.cp));
    parallel[{e.bp, e.b}].emplace_back(static_cast<int>(e.cp), static_cast<int>(e.c));
  }
  std::vector<GraphCycle> out;
  std::vector<std::size_t> path;
  std::vector<bool> used(g.B.size(), false);

  auto emit = [&] {
    if (path[1] > path.back()) return;
    std::vector<std::vector<std::pair<int, int>> const*> steps;
    for (std::size_t i = 0; i < n; ++i) steps.push_back(&parallel.at({path[i], path[(i + 1) % n]}));
    std::vector<std::size_t> choice(n, 0);
    while (true) {
      GraphCycle c;
      c.vertices = path;
      for (std::size_t i = 0; i < n; ++i) {
        c.tuple.h.push_back((*steps[i])[choice[i]].first);
        c.tuple.h.push_back((*steps[i])[choice[i]].second);
      }
      if (relator_value(m, g.C, c.tuple) != m.identity())
        throw graph_corruption("cycle tuple with nontrivial r(T)");
      out.push_back(std::move(c));
      std::size_t i = 0;
      while (i < n && ++choice[i] == steps[i]->size()) choice[i++] = 0;
      if (i == n) break;
    }
  };

  auto extend = [&](auto&& self) -> void {
    std::size_t u = path.back();
    if (path.size() == n) {
      if (std::binary_search(adj[u].begin(), adj[u].end(), path[0])) emit();
      return;
    }
    for (std::size_t v : adj[u]) {
      if (v <= path[0] || used[v]) continue;
      used[v] = true;
      path.push_back(v);
      self(self);
      path.pop_back();
      used[v] = false;
    }
  };
  for (std::size_t s = 0; s < g.B.size(); ++s) {
    path = {s};
    used[s] = true;
    extend(extend);
    used[s] = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Forbidden patterns.

struct Pattern {
  std::string name;
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // 1-based
};

inline std::vector<Pattern> const& named_patterns() {
  static std::vector<Pattern> const all = {
      {"K4", 4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}},
      // two squares sharing two consecutive edges
      {"Gamma1", 5, {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 5}, {5, 3}}},
      // 2x3 grid with an apex over the top row
      {"Gamma2", 7, {{1, 2}, {2, 3}, {3, 6}, {6, 5}, {5, 4}, {4, 1}, {2, 5}, {1, 7}, {7, 3}}},
      // three squares on a common edge
      {"Gamma3", 8, {{1, 2}, {1, 3}, {3, 4}, {4, 2}, {1, 5}, {5, 6}, {6, 2}, {1, 7}, {7, 8}, {8, 2}}},
      // 2x3 grid with the chord 4-3
      {"Gamma4", 6, {{1, 2}, {2, 3}, {3, 6}, {6, 5}, {5, 4}, {4, 1}, {2, 5}, {4, 3}}},
      // triangular prism
      {"Gamma5", 6, {{1, 2}, {2, 3}, {3, 1}, {4, 5}, {5, 6}, {6, 4}, {1, 4}, {2, 5}, {3, 6}}},
  };
  return all;
}

inline Pattern const& pattern_by_name(std::string const& name) {
  for (auto const& p : named_patterns())
    if (p.name == name) return p;
  throw std::invalid_argument("unknown pattern '" + name + "'");
}

/// Subgraph (not necessarily induced) embedding of the pattern into the
/// simple graph given by sorted adjacency lists.  Returns the image of
/// pattern vertex i (0-based) at position i.
inline std::optional<std::vector<std::size_t>> find_embedding(std::vector<std::vector<std::size_t>> const& adj,
                                                              Pattern const& pat) {
  std::size_t k = pat.vertices;
  std::vector<std::vector<std::size_t>> padj(k);
  for (auto [a, b] : pat.edges) {
    padj[a - 1].push_back(b - 1);
    padj[b - 1].push_back(a - 1);
  }
  // Order: start with the highest degree vertex, then always the vertex
  // with most already-ordered neighbours.
  std::vector<std::size_t> order;
  std::vector<bool> placed(k, false);
  while (order.size() < k) {
    std::size_t best = k;
    std::pair<std::size_t, std::size_t> key{0, 0};
    for (std::size_t v = 0; v < k; ++v) {
      if (placed[v]) continue;
      std::size_t back = 0;
      for (auto w : padj[v]) back += placed[w];
      std::pair<std::size_t, std::size_t> kv{back, padj[v].size()};
      if (best == k || kv > key) {
        best = v;
        key = kv;
      }
    }
    placed[best] = true;
    order.push_back(best);
  }
  std::vector<std::size_t> image(k, SIZE_MAX);
  std::vector<bool> taken(adj.size(), false);
  auto adjacent = [&](std::size_t a, std::size_t b) { return std::binary_search(adj[a].begin(), adj[a].end(), b); };

  auto place = [&](auto&& self, std::size_t i) -> bool {
    if (i == k) return true;
    std::size_t v = order[i];
    for (std::size_t cand = 0; cand < adj.size(); ++cand) {
      if (taken[cand] || adj[cand].size() < padj[v].size()) continue;
      bool ok = true;
      for (auto w : padj[v])
        if (image[w] != SIZE_MAX && !adjacent(cand, image[w])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      image[v] = cand;
      taken[cand] = true;
      if (self(self, i + 1)) return true;
      taken[cand] = false;
      image[v] = SIZE_MAX;
    }
    return false;
  };
  if (place(place, 0)) return image;
  return std::nullopt;
}

inline std::optional<std::vector<std::size_t>> find_pattern(PSGraph const& g, Pattern const& pat) {
  return find_embedding(g.adjacency(), pat);
}

/// Adjacency lists of a pattern, for embedding a pattern into another.
inline std::vector<std::vector<std::size_t>> pattern_adjacency(Pattern const& pat) {
  std::vector<std::vector<std::size_t>> adj(pat.vertices);
  for (auto [a, b] : pat.edges) {
    adj[a - 1].push_back(b - 1);
    adj[b - 1].push_back(a - 1);
  }
  for (auto& v : adj) std::sort(v.begin(), v.end());
  return adj;
}

// ---------------------------------------------------------------------------
// Export.

inline void write_dot(std::ostream& os, GroupModel const& m, PSGraph const& g) {
  os << "graph P {\n";
  for (std::size_t i = 0; i < g.B.size(); ++i) os << "  v" << i << " [label=\"" << m.to_string(g.B[i]) << "\"];\n";
  for (auto const& e : g.edges)
    os << "  v" << e.b << " -- v" << e.bp << " [label=\"(" << m.to_string(g.C[e.c]) << ","
       << m.to_string(g.C[e.cp]) << ")\"];\n";
  os << "}\n";
}

}  // namespace psl
