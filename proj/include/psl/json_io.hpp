// JSON forms of reports and certificates (nlohmann::json).  Keys are
// emitted in sorted order, so equal inputs give byte-identical output.

#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "psl/algebra.hpp"
#include "psl/caselab.hpp"
#include "psl/group.hpp"
#include "psl/productset.hpp"
#include "psl/psgraph.hpp"

namespace psl {

using json = nlohmann::json;

inline json set_json(GroupModel const& m, ElementSet const& s) {
  json a = json::array();
  for (auto const& g : s) a.push_back(m.to_string(g));
  return a;
}

inline json histogram_json(std::map<std::size_t, std::size_t> const& h) {
  json o = json::object();
  for (auto const& [k, v] : h) o[std::to_string(k)] = v;
  return o;
}

/// "x^5" or "(x^-1y)^3".
inline std::string power_string(Word const& w, long k) {
  auto s = w.to_string();
  bool atom = w.syllables().size() == 1 && w.syllables()[0].exponent == 1;
  return (atom ? s : "(" + s + ")") + "^" + std::to_string(k);
}

// ---------------------------------------------------------------------------
// Models.

inline json model_json(GroupModel const& m) {
  json j{{"kind", model_kind_name(m.kind())}};
  if (auto const* p = m.presentation()) {
    j["generators"] = p->generators;
    json rels = json::array();
    for (auto const& r : p->relators) rels.push_back(r.to_string());
    j["relators"] = rels;
    j["name"] = m.name();
  }
  return j;
}

inline GroupModel model_from_json(json const& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "free2") return GroupModel::free2();
  if (kind == "z2") return GroupModel::free_abelian2();
  if (kind == "klein") return GroupModel::klein();
  if (kind == "heisenberg") return GroupModel::heisenberg();
  if (kind == "quotient") {
    Presentation p;
    p.generators = j.value("generators", 2);
    for (auto const& r : j.at("relators")) p.relators.push_back(Word::parse(r.get<std::string>()));
    auto q = instantiate_quotient(p, 10000, 50, j.value("name", std::string("quotient")));
    if (!q.model) throw undecidable_equality_error("completion of " + p.to_string() + " did not finish");
    return *q.model;
  }
  throw std::invalid_argument("unknown model kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Product sets and graphs.

inline json stats_json(GroupModel const& m, ProductStats const& s) {
  json fibers = json::array();
  for (std::size_t i = 0; i < s.BC.size(); ++i) {
    json f = json::array();
    for (auto const& p : s.fibers[i]) f.push_back({m.to_string(s.B[p.b]), m.to_string(s.C[p.c])});
    fibers.push_back({{"element", m.to_string(s.BC[i])}, {"factorizations", f}});
  }
  json j{{"B", set_json(m, s.B)},
         {"C", set_json(m, s.C)},
         {"BC", set_json(m, s.BC)},
         {"boundary", set_json(m, s.boundary)},
         {"size_B", s.B.size()},
         {"size_C", s.C.size()},
         {"size_BC", s.BC.size()},
         {"fiber_histogram", histogram_json(s.histogram())},
         {"fibers", fibers},
         {"kemperman_bound_holds", kemperman_bound_holds(s)}};
  auto h = hamidoune_bound_holds(m, s);
  j["nonabelian_bound_holds"] = h ? json(*h) : json(nullptr);
  json ups = json::array();
  for (auto const& u : unique_product_witnesses(m, s.B, s.C))
    ups.push_back({m.to_string(u.b), m.to_string(u.c)});
  j["unique_products"] = ups;
  return j;
}

inline json tuple_json(GroupModel const& m, ElementSet const& C, CycleTuple const& t) {
  json a = json::array();
  for (int i : t.h) a.push_back(m.to_string(C[static_cast<std::size_t>(i)]));
  return a;
}

inline json graph_json(GroupModel const& m, PSGraph const& g, std::vector<std::size_t> const& lengths) {
  json edges = json::array();
  for (auto const& e : g.edges)
    edges.push_back({{"b", m.to_string(g.B[e.b])},
                     {"b_prime", m.to_string(g.B[e.bp])},
                     {"c", m.to_string(g.C[e.c])},
                     {"c_prime", m.to_string(g.C[e.cp])}});
  json j{{"vertices", set_json(m, g.B)}, {"C", set_json(m, g.C)}, {"edges", edges}, {"multi_edge", g.has_multi_edge()}};
  json cyc = json::array();
  for (auto n : lengths)
    for (auto const& c : cycles(m, g, n)) {
      ElementSet verts;
      for (auto v : c.vertices) verts.push_back(g.B[v]);
      json e{{"length", n},
             {"vertices", set_json(m, verts)},
             {"tuple", tuple_json(m, g.C, c.tuple)},
             {"class", tuple_json(m, g.C, tuple_class(c.tuple))}};
      if (n == 3 || n == 4) e["type"] = cycle_type_name(classify_cycle(c.tuple));
      cyc.push_back(e);
    }
  j["cycles"] = cyc;
  json pats = json::object();
  auto adj = g.adjacency();
  for (auto const& p : named_patterns()) {
    auto emb = find_embedding(adj, p);
    if (!emb) {
      pats[p.name] = nullptr;
      continue;
    }
    ElementSet img;
    for (auto v : *emb) img.push_back(g.B[v]);
    pats[p.name] = set_json(m, img);
  }
  j["pattern_embeddings"] = pats;
  return j;
}

// ---------------------------------------------------------------------------
// Searches.

inline json kappa_json(GroupModel const& m, KappaReport const& r) {
  auto wit = [&](std::vector<KappaWitness> const& ws) {
    json a = json::array();
    for (auto const& w : ws) a.push_back({{"B", set_json(m, w.B)}, {"size_BC", w.product_size}});
    return a;
  };
  json counts = json::object();
  for (auto const& [k, v] : r.optimal_count_by_size) counts[std::to_string(k)] = v;
  return json{{"model", model_kind_name(m.kind())},
              {"C", set_json(m, r.C)},
              {"k", r.k},
              {"size_cap", r.size_cap},
              {"universe", r.universe_label},
              {"universe_size", r.universe_size},
              {"kappa_min", r.kappa_min ? json(*r.kappa_min) : json(nullptr)},
              {"min_size_BC", r.min_product_size() ? json(*r.min_product_size()) : json(nullptr)},
              {"minimizers_by_size", counts},
              {"witnesses", wit(r.witnesses)},
              {"smallest_witnesses", wit(r.smallest_witnesses)},
              {"nodes", r.nodes},
              {"restricted", r.restricted},
              {"exhaustive_within_universe", r.exhaustive_within_universe}};
}

inline json atom_check_json(GroupModel const& m, AtomCheck const& a) {
  return json{{"B", set_json(m, a.B)},
              {"two_fold_applies", a.two_fold_applies},
              {"two_fold_holds", a.two_fold_holds},
              {"two_fold_boundary_effect", a.two_fold_boundary_effect},
              {"overlap_max", a.overlap_max},
              {"overlap_bound", a.overlap_bound},
              {"overlap_holds", a.overlap_holds}};
}

// ---------------------------------------------------------------------------
// Case tables.

inline json case_table_json(CaseTable const& t) {
  json rows = json::array();
  for (auto const& r : t.rows) {
    json tup = json::array();
    for (int h : r.tuple.h) tup.push_back(h == 0 ? "1" : h == 1 ? "x" : "y");
    rows.push_back({{"n", r.index},
                    {"R", r.relator.to_string()},
                    {"E", std::string(1, r.mark)},
                    {"tag", relator_tag_name(r.cls.tag)},
                    {"rule", r.cls.rule},
                    {"witness", r.cls.witness.to_string()},
                    {"tuple", tup},
                    {"class_size", r.class_size},
                    {"reference_row", r.reference_index ? json(*r.reference_index) : json(nullptr)}});
  }
  return json{{"cycle_length", t.cycle_length},
              {"tuples", t.tuples},
              {"classes", t.rows.size()},
              {"rows", rows},
              {"mismatches", t.mismatches},
              {"matches_reference", t.matches_reference()}};
}

/// Columns n, R, E.
inline std::string case_table_tsv(CaseTable const& t) {
  std::ostringstream os;
  os << "n\tR\tE\n";
  for (auto const& r : t.rows) os << r.index << '\t' << r.relator.to_string() << '\t' << r.mark << '\n';
  return os.str();
}

inline json pair_json(PairVerdict const& v) {
  json j{{"i", v.i},
         {"j", v.j},
         {"verdict", pair_outcome_name(v.outcome)},
         {"method", v.method},
         {"abelianization", v.abelianization},
         {"listed_exceptional", v.expected_exceptional},
         {"contrary", v.contrary}};
  if (v.outcome == PairOutcome::finite) j["order"] = v.order;
  if (v.outcome == PairOutcome::torsion_witness) {
    j["witness"] = v.witness.to_string();
    j["exponent"] = v.exponent;
    j["torsion"] = power_string(v.witness, v.exponent);
  }
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

inline json family_json(FamilyCheck const& f) {
  json sets = json::array();
  for (auto const& s : f.sets)
    sets.push_back({{"B", s.set}, {"size_B", s.B.size()}, {"size_BC", s.product_size},
                    {"fiber_histogram", histogram_json(s.fiber_histogram)}, {"ok", s.ok}});
  json j{{"family", f.family.id},
         {"relation", f.family.relation},
         {"expected_size_BC", f.family.expected_product},
         {"model", f.model},
         {"model_available", f.model_available},
         {"relation_holds", f.relation_holds},
         {"nonabelian", f.nonabelian},
         {"sets", sets},
         {"ok", f.ok()}};
  if (!f.family.a_word.empty()) j["generators"] = {{"a", f.family.a_word}, {"b", f.family.b_word}};
  if (!f.notice.empty()) j["notice"] = f.notice;
  return j;
}

inline json desk_json(GroupModel const& m, DeskCheck const& d) {
  return json{{"name", d.name},
              {"claim", d.claim},
              {"model", d.model},
              {"C", set_json(m, d.C)},
              {"size_B", d.set_size},
              {"universe", "ball radius " + std::to_string(d.radius)},
              {"universe_size", d.universe_size},
              {"min_size_BC", d.min_product_size ? json(*d.min_product_size) : json(nullptr)},
              {"bound", d.bound},
              {"exact", d.exact ? json(*d.exact) : json(nullptr)},
              {"nodes", d.nodes},
              {"holds", d.holds()}};
}

// ---------------------------------------------------------------------------
// Algebra.

inline json algebra_json(AlgebraElement const& a) {
  json terms = json::object();
  for (auto const& [g, c] : a.terms()) terms[a.model().to_string(g)] = c;
  return json{{"characteristic", a.characteristic()}, {"terms", terms}};
}

inline AlgebraElement algebra_from_json(GroupModel const& m, json const& j) {
  AlgebraElement a(m, j.value("characteristic", 2U));
  for (auto const& [k, v] : j.at("terms").items()) a.add(m.parse_element(k), v.get<std::int64_t>());
  return a;
}

inline json certificate_json(Certificate const& c) {
  auto const& m = c.alpha.model();
  return json{{"kind", certificate_kind_name(c.kind)},
              {"model", model_json(m)},
              {"alpha", algebra_json(c.alpha)},
              {"beta", algebra_json(c.beta)},
              {"product_claim", c.kind == CertificateKind::zero_divisor ? "0" : "1"},
              {"provenance",
               {{"A", set_json(m, c.provenance.A)},
                {"C", set_json(m, c.provenance.C)},
                {"size_AC", c.provenance.product_size},
                {"fiber_histogram", histogram_json(c.provenance.fiber_histogram)}}}};
}

inline Certificate certificate_from_json(json const& j) {
  auto m = model_from_json(j.at("model"));
  std::string kind = j.at("kind").get<std::string>();
  CertificateKind k;
  if (kind == "ZeroDivisor") k = CertificateKind::zero_divisor;
  else if (kind == "Unit") k = CertificateKind::unit;
  else throw std::invalid_argument("unknown certificate kind '" + kind + "'");
  std::string claim = j.at("product_claim").get<std::string>();
  if ((k == CertificateKind::zero_divisor) != (claim == "0"))
    throw std::invalid_argument("product claim does not match the certificate kind");
  Certificate c{k, algebra_from_json(m, j.at("alpha")), algebra_from_json(m, j.at("beta")), {}};
  if (j.contains("provenance")) {
    auto const& p = j.at("provenance");
    for (auto const& e : p.value("A", json::array())) c.provenance.A.push_back(m.parse_element(e.get<std::string>()));
    for (auto const& e : p.value("C", json::array())) c.provenance.C.push_back(m.parse_element(e.get<std::string>()));
    c.provenance.product_size = p.value("size_AC", std::size_t{0});
  }
  return c;
}

inline json support_scan_json(GroupModel const& m, SupportScanReport const& r) {
  json rows = json::array();
  for (auto const& row : r.rows)
    rows.push_back({{"s", row.s},
                    {"zero_divisor_counting_feasible", row.zd_counting_feasible},
                    {"zero_divisor_found", row.zd_found},
                    {"unit_counting_feasible", row.unit_counting_feasible},
                    {"unit_found", row.unit_found}});
  json certs = json::array();
  for (auto const& c : r.certificates) certs.push_back(certificate_json(c));
  return json{{"model", model_kind_name(m.kind())},
              {"C", set_json(m, r.C)},
              {"universe", r.universe_label},
              {"universe_size", r.universe_size},
              {"max_support", r.max_support},
              {"rows", rows},
              {"certificates", certs},
              {"nodes", r.nodes}};
}

}  // namespace psl
