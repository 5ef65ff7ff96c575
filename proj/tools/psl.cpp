// psl: command line front end for the product set library.
//
// Exit codes: 0 success, 1 usage or parse error, 2 a computed result
// contradicts a reference claim, 3 a cap ran out where a verdict was needed.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "psl/algebra.hpp"
#include "psl/caselab.hpp"
#include "psl/group.hpp"
#include "psl/json_io.hpp"
#include "psl/presentation.hpp"
#include "psl/productset.hpp"
#include "psl/psgraph.hpp"

namespace {

using psl::json;

constexpr int exit_ok = 0;
constexpr int exit_parse = 1;
constexpr int exit_contradiction = 2;
constexpr int exit_cap = 3;

struct Options {
  std::string model = "free2";
  std::string relators;  // quotient model, separated by ';'
  std::string cset = "e,x,y";
  std::string bset;
  std::string aset;
  std::string out = "json";
  std::string output;
  std::string input;
  std::size_t workers = 1;
  std::uint64_t seed = 1;
  std::size_t k = 4;
  std::size_t size_cap = 0;
  int radius = 3;
  std::size_t max_cosets = 1000000;
  std::size_t max_rules = 10000;
  std::size_t max_passes = 50;
  std::size_t max_support = 11;
  std::size_t max_witnesses = 32;
  std::vector<std::size_t> cycle_lengths{3, 4};
  bool positive_control = false;
};

std::size_t default_workers() {
  if (char const* env = std::getenv("PSL_WORKERS")) {
    try {
      auto n = std::stoul(env);
      if (n > 0) return n;
    } catch (std::exception const&) {
    }
  }
  return 1;
}

psl::GroupModel make_model(Options const& o) {
  if (o.model == "free2") return psl::GroupModel::free2();
  if (o.model == "z2") return psl::GroupModel::free_abelian2();
  if (o.model == "klein") return psl::GroupModel::klein();
  if (o.model == "heisenberg") return psl::GroupModel::heisenberg();
  if (o.model == "quotient") {
    psl::Presentation p;
    std::string text = o.relators;
    for (auto& ch : text)
      if (ch == ';') ch = '\n';
    p = psl::parse_presentation(text);
    if (p.relators.empty()) throw std::invalid_argument("--relators is required for the quotient model");
    auto q = psl::instantiate_quotient(p, o.max_rules, o.max_passes, p.to_string());
    if (!q.model) throw psl::undecidable_equality_error("completion of " + p.to_string() + " did not finish");
    return *q.model;
  }
  throw std::invalid_argument("unknown model '" + o.model + "'");
}

json run_header(Options const& o, std::string const& command, std::string const& claim) {
  return json{{"command", command},
              {"claim", claim},
              {"seed", o.seed},
              {"caps",
               {{"max_cosets", o.max_cosets},
                {"max_rules", o.max_rules},
                {"max_passes", o.max_passes},
                {"radius", o.radius}}},
              {"scope",
               "finite computations inside the stated universes and caps; statements quantified over all "
               "torsion-free groups are not decided by them"}};
}

void emit(Options const& o, std::string const& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.output);
  if (!f) throw std::runtime_error("cannot write " + o.output);
  f << text;
}

void emit_json(Options const& o, json const& j) { emit(o, j.dump(2) + "\n"); }

// ---------------------------------------------------------------------------

int cmd_stats(Options const& o) {
  auto m = make_model(o);
  auto B = m.parse_set(o.bset), C = m.parse_set(o.cset);
  auto s = psl::product_stats(m, B, C);
  auto j = run_header(o, "stats", "|BC| >= |B| + |C| - 1, and >= |B| + |C| + 1 for 1 in C, <C> non-abelian, |B| >= 4");
  j["model"] = psl::model_json(m);
  j["result"] = psl::stats_json(m, s);
  emit_json(o, j);
  bool torsion_free = m.kind() != psl::ModelKind::quotient;
  auto h = psl::hamidoune_bound_holds(m, s);
  if (torsion_free && (!psl::kemperman_bound_holds(s) || (h && !*h))) return exit_contradiction;
  return exit_ok;
}

int cmd_graph(Options const& o) {
  auto m = make_model(o);
  auto B = m.parse_set(o.bset), C = m.parse_set(o.cset);
  auto g = psl::build_graph(m, B, C);
  if (o.out == "dot") {
    std::ostringstream os;
    psl::write_dot(os, m, g);
    emit(o, os.str());
    return exit_ok;
  }
  auto j = run_header(o, "graph", "P(B,C) is the induced Cayley subgraph when |C| = 3, 1 in C and <C> is not cyclic");
  j["model"] = psl::model_json(m);
  j["result"] = psl::graph_json(m, g, o.cycle_lengths);
  int code = exit_ok;
  if (C.size() == 3 && std::find(C.begin(), C.end(), m.identity()) != C.end()) {
    try {
      auto chk = psl::cayley_induced_check(m, B, C);
      j["cayley_check"] = {{"applicable", chk.applicable}, {"induced_subgraph", chk.simple_graph_equal},
                           {"multi_edge", chk.multi_edge}};
    } catch (psl::claim_contradiction const& e) {
      j["cayley_check"] = {{"applicable", true}, {"error", e.what()}};
      code = exit_contradiction;
    }
  }
  emit_json(o, j);
  return code;
}

psl::KappaReport run_kappa(Options const& o, psl::GroupModel const& m, psl::ElementSet const& C,
                           psl::ElementSet const& U) {
  psl::KappaOptions opt;
  opt.workers = o.workers;
  opt.max_witnesses = o.max_witnesses;
  opt.universe_label = "ball radius " + std::to_string(o.radius) + " in x, y; identity in B";
  return psl::kappa_search(m, C, o.k, U, o.size_cap ? o.size_cap : o.k + 3, opt);
}

int cmd_kappa(Options const& o) {
  auto m = make_model(o);
  auto C = m.parse_set(o.cset);
  auto U = m.ball(o.radius);
  auto rep = run_kappa(o, m, C, U);
  auto j = run_header(o, "kappa", "minimum of |BC \\ B| over |B| >= k (restricted)");
  j["model"] = psl::model_json(m);
  j["result"] = psl::kappa_json(m, rep);
  emit_json(o, j);
  return rep.kappa_min ? exit_ok : exit_cap;
}

int cmd_atoms(Options const& o) {
  auto m = make_model(o);
  auto C = m.parse_set(o.cset);
  auto U = m.ball(o.radius);
  auto rep = run_kappa(o, m, C, U);
  auto j = run_header(o, "atoms", "k-atoms: every product has two factorizations when |A| > k; overlap bound");
  j["model"] = psl::model_json(m);
  j["kappa"] = psl::kappa_json(m, rep);
  if (!rep.kappa_min) {
    emit_json(o, j);
    return exit_cap;
  }
  int code = exit_ok;
  try {
    json atoms = json::array();
    for (auto const& a : psl::atom_candidates(m, rep, U)) atoms.push_back(psl::atom_check_json(m, a));
    j["atoms"] = atoms;
  } catch (psl::claim_contradiction const& e) {
    j["error"] = e.what();
    code = exit_contradiction;
  }
  emit_json(o, j);
  return code;
}

int cmd_table_c4(Options const& o) {
  auto t = psl::enumerate_square_relators();
  if (o.out == "tsv") {
    emit(o, psl::case_table_tsv(t));
  } else {
    auto j = run_header(o, "table-c4", "36 non-equivalent type (ii) squares; E column A/T/*");
    j["result"] = psl::case_table_json(t);
    emit_json(o, j);
  }
  return t.matches_reference() ? exit_ok : exit_contradiction;
}

int cmd_triangles(Options const& o) {
  auto t = psl::enumerate_triangle_relators();
  psl::PairCaps caps;
  caps.max_cosets = o.max_cosets;
  caps.max_rules = o.max_rules;
  caps.max_passes = o.max_passes;
  auto ex = psl::triangle_exclusivity(t, caps);
  if (o.out == "tsv") {
    emit(o, psl::case_table_tsv(t));
  } else {
    auto j = run_header(o, "triangles", "13 non-equivalent type (ii) triangles; at most one starred relation holds");
    j["result"] = psl::case_table_json(t);
    json e = json::array();
    for (auto const& x : ex) e.push_back(psl::pair_json(x.verdict));
    j["exclusivity"] = e;
    emit_json(o, j);
  }
  if (!t.matches_reference()) return exit_contradiction;
  for (auto const& x : ex)
    if (x.verdict.outcome == psl::PairOutcome::unresolved) return x.verdict.contrary ? exit_contradiction : exit_cap;
  return exit_ok;
}

int cmd_pairs(Options const& o) {
  auto t = psl::enumerate_square_relators();
  psl::PairCaps caps;
  caps.max_cosets = o.max_cosets;
  caps.max_rules = o.max_rules;
  caps.max_passes = o.max_passes;
  caps.workers = o.workers;
  auto verdicts = psl::pair_elimination(t, caps);
  std::size_t resolved_regular = 0, contrary = 0, witnessed_listed = 0;
  std::set<std::pair<std::size_t, std::size_t>> torsion;
  json arr = json::array();
  for (auto const& v : verdicts) {
    arr.push_back(psl::pair_json(v));
    contrary += v.contrary;
    if (!v.expected_exceptional &&
        (v.outcome == psl::PairOutcome::finite || v.outcome == psl::PairOutcome::abelian_proved))
      ++resolved_regular;
    if (v.outcome == psl::PairOutcome::torsion_witness) torsion.insert({v.i, v.j});
    if (v.expected_exceptional && v.outcome == psl::PairOutcome::torsion_witness && v.note.empty()) ++witnessed_listed;
  }
  std::set<std::pair<std::size_t, std::size_t>> listed;
  for (auto const& e : psl::exceptional_pairs()) listed.insert({e.i, e.j});
  auto j = run_header(o, "pairs",
                      "210 pairs of starred non-Klein rows; 201 finite or abelian; 9 listed pairs force torsion");
  j["result"] = {{"pairs", arr},
                 {"pair_count", verdicts.size()},
                 {"rows", psl::eliminable_rows(t)},
                 {"regular_resolved", resolved_regular},
                 {"torsion_pairs_equal_listed", torsion == listed},
                 {"listed_witnesses_confirmed", witnessed_listed},
                 {"contrary", contrary}};
  emit_json(o, j);
  if (contrary > 0 || torsion != listed) return exit_contradiction;
  if (resolved_regular + listed.size() < verdicts.size() || witnessed_listed < listed.size()) return exit_cap;
  return exit_ok;
}

int cmd_families(Options const& o) {
  psl::KnuthBendixCaps caps;
  caps.max_rules = std::min<std::size_t>(o.max_rules, 500);
  caps.max_passes = std::min<std::size_t>(o.max_passes, 20);
  auto fams = psl::verify_atom_families(caps);
  auto seventh = psl::klein_seventh_element(std::max(o.radius, 4));
  auto j = run_header(o, "families", "4-atom families (1)-(9), three 5-atoms, the 6-atom; |BC| = |B| + 4");
  json arr = json::array();
  int code = exit_ok;
  for (auto const& f : fams) {
    arr.push_back(psl::family_json(f));
    if (f.model_available && !f.ok()) code = exit_contradiction;
  }
  j["result"] = {{"families", arr},
                 {"seventh_element",
                  {{"universe", "ball radius " + std::to_string(std::max(o.radius, 4))},
                   {"candidates", seventh.candidates},
                   {"min_size_BC", seventh.min_product_size},
                   {"ok", seventh.ok}}}};
  if (!seventh.ok) code = exit_contradiction;
  emit_json(o, j);
  return code;
}

int cmd_desk_checks(Options const& o) {
  auto specs = psl::default_desk_checks();
  for (auto& s : specs) s.radius = std::max(s.radius, o.radius);
  auto checks = psl::theorem_desk_checks(specs, o.workers);
  auto j = run_header(o, "desk-checks", "restricted minima of |BC| against the stated lower bounds");
  json arr = json::array();
  int code = exit_ok;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    arr.push_back(psl::desk_json(psl::model_of_kind(specs[i].model), checks[i]));
    if (!checks[i].min_product_size) code = std::max(code, exit_cap);
    else if (!checks[i].holds()) code = exit_contradiction;
  }
  j["result"] = arr;
  emit_json(o, j);
  return code;
}

int cmd_scan_supports(Options const& o) {
  auto m = make_model(o);
  auto C = m.parse_set(o.cset);
  auto U = m.ball(o.radius);
  auto rep = psl::support_bound_scan(m, C, o.max_support, U, "ball radius " + std::to_string(o.radius));
  auto j = run_header(o, "scan-supports",
                      "no zero divisor with |supp| <= 11 and no unit with |supp| <= 9 for |C| = 3");
  j["model"] = psl::model_json(m);
  j["result"] = psl::support_scan_json(m, rep);
  emit_json(o, j);
  bool torsion_free = m.kind() != psl::ModelKind::quotient;
  return torsion_free && !rep.certificates.empty() ? exit_contradiction : exit_ok;
}

int cmd_certify(Options const& o) {
  std::optional<psl::Certificate> cert;
  json j = run_header(o, "certify", "zero-divisor or unit certificate from a product set");
  if (o.positive_control) {
    cert = psl::positive_control_certificate();
  } else {
    auto m = make_model(o);
    auto A = m.parse_set(o.aset.empty() ? o.bset : o.aset), C = m.parse_set(o.cset);
    cert = psl::certificate_from_atom(m, A, C, psl::product_stats(m, A, C));
  }
  if (!cert) {
    j["certificate"] = nullptr;
    emit_json(o, j);
    return exit_ok;
  }
  if (!psl::verify_certificate(*cert)) throw std::logic_error("constructed certificate does not verify");
  if (o.positive_control) {
    emit_json(o, psl::certificate_json(*cert));
    return exit_ok;
  }
  j["certificate"] = psl::certificate_json(*cert);
  emit_json(o, j);
  return cert->alpha.model().kind() == psl::ModelKind::quotient ? exit_ok : exit_contradiction;
}

int cmd_verify_cert(Options const& o) {
  std::ifstream f(o.input);
  if (!f) throw std::invalid_argument("cannot read " + o.input);
  json in = json::parse(f);
  if (in.contains("certificate")) in = in.at("certificate");
  auto cert = psl::certificate_from_json(in);
  bool ok = psl::verify_certificate(cert);
  auto j = run_header(o, "verify-cert", "alpha * beta equals the claimed product");
  j["kind"] = psl::certificate_kind_name(cert.kind);
  j["model"] = psl::model_json(cert.alpha.model());
  j["verified"] = ok;
  emit_json(o, j);
  return ok ? exit_ok : exit_contradiction;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Product sets, atoms and case analyses in torsion-free groups"};
  app.require_subcommand(1);
  Options o;
  o.workers = default_workers();

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Output format")->check(CLI::IsMember({"json", "tsv", "dot"}));
    sub->add_option("--output,-o", o.output, "Write the report to this file");
    sub->add_option("--workers", o.workers, "Worker threads (default $PSL_WORKERS or 1)")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "Seed recorded in the report");
  };
  auto model_opts = [&](CLI::App* sub) {
    sub->add_option("--model", o.model, "free2, z2, klein, heisenberg or quotient")
        ->check(CLI::IsMember({"free2", "z2", "klein", "heisenberg", "quotient"}));
    sub->add_option("--relators", o.relators, "Relators of the quotient model, separated by ';'");
    sub->add_option("--cset", o.cset, "The set C");
  };
  auto kb_opts = [&](CLI::App* sub) {
    sub->add_option("--caps,--max-cosets", o.max_cosets, "Coset cap")->check(CLI::PositiveNumber);
    sub->add_option("--max-rules", o.max_rules, "Rewriting rule cap")->check(CLI::PositiveNumber);
    sub->add_option("--max-passes", o.max_passes, "Completion pass cap")->check(CLI::PositiveNumber);
  };

  std::map<std::string, int (*)(Options const&)> handlers;
  auto add = [&](char const* name, char const* help, int (*fn)(Options const&)) {
    auto* sub = app.add_subcommand(name, help);
    common(sub);
    handlers[name] = fn;
    return sub;
  };

  auto* stats = add("stats", "Product set statistics", cmd_stats);
  model_opts(stats);
  stats->add_option("--bset", o.bset, "The set B")->required();
  auto* graph = add("graph", "Product set graph, cycles and patterns", cmd_graph);
  model_opts(graph);
  graph->add_option("--bset", o.bset, "The set B")->required();
  graph->add_option("--cycles", o.cycle_lengths, "Cycle lengths to enumerate");
  for (auto* sub : {add("kappa", "Restricted k-isoperimetric search", cmd_kappa),
                    add("atoms", "Restricted atom search and validation", cmd_atoms)}) {
    model_opts(sub);
    sub->add_option("--k", o.k, "Minimum size of B")->check(CLI::PositiveNumber);
    sub->add_option("--size-cap", o.size_cap, "Maximum size of B (default k + 3)");
    sub->add_option("--radius", o.radius, "Ball radius of the universe")->check(CLI::NonNegativeNumber);
    sub->add_option("--max-witnesses", o.max_witnesses, "Witnesses kept");
  }
  add("table-c4", "Type (ii) square relators", cmd_table_c4);
  kb_opts(add("triangles", "Type (ii) triangle relators", cmd_triangles));
  kb_opts(add("pairs", "Elimination of pairs of square relators", cmd_pairs));
  add("families", "Atom families in their witness groups", cmd_families)
      ->add_option("--radius", o.radius, "Ball radius for the seventh-element check");
  add("desk-checks", "Restricted searches for the main lower bounds", cmd_desk_checks)
      ->add_option("--radius", o.radius, "Minimum ball radius");
  auto* scan = add("scan-supports", "Bounded search for zero divisors and units", cmd_scan_supports);
  model_opts(scan);
  scan->add_option("--max-support", o.max_support, "Largest support size");
  scan->add_option("--radius", o.radius, "Ball radius of the universe");
  auto* certify = add("certify", "Certificate from a product set", cmd_certify);
  model_opts(certify);
  certify->add_option("--aset,--bset", o.aset, "The set A");
  certify->add_flag("--positive-control", o.positive_control, "Emit the (1+g)(1+g) = 0 certificate in <g | g^2>");
  add("verify-cert", "Verify a certificate file", cmd_verify_cert)->add_option("--in", o.input)->required();

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_parse;
  }

  try {
    for (auto const& [name, fn] : handlers)
      if (app.got_subcommand(name)) return fn(o);
  } catch (psl::claim_contradiction const& e) {
    std::cerr << "psl: contradiction: " << e.what() << "\n";
    return exit_contradiction;
  } catch (psl::undecidable_equality_error const& e) {
    std::cerr << "psl: " << e.what() << "\n";
    return exit_cap;
  } catch (psl::word_parse_error const& e) {
    std::cerr << "psl: " << e.what() << "\n";
    return exit_parse;
  } catch (psl::element_parse_error const& e) {
    std::cerr << "psl: " << e.what() << "\n";
    return exit_parse;
  } catch (json::exception const& e) {
    std::cerr << "psl: " << e.what() << "\n";
    return exit_parse;
  } catch (std::invalid_argument const& e) {
    std::cerr << "psl: " << e.what() << "\n";
    return exit_parse;
  } catch (std::exception const& e) {
    std::cerr << "psl: error: " << e.what() << "\n";
    return exit_parse;
  }
  return exit_parse;
}
