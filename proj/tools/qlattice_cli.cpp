// Command-line front end: exact q-binomials, pattern-free family search,
// theorem checks, LYM checks, family file re-verification and the seeded
// pushdown suite.
//
// Exit codes: 0 pass, 1 fail, 2 usage, 3 budget exhausted, 4 outside the desk guard.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qlattice/qlattice.hpp"

using namespace qlattice;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kBudget = 3, kGuard = 4 };

struct Common {
  std::string format = "text";
  std::string output;
  unsigned threads = 1;
  std::uint64_t budget_nodes = 0;
  double budget_seconds = 0.0;
  std::uint64_t seed = 1;

  SearchBudget budget() const { return {budget_nodes, budget_seconds}; }
};

void add_common(CLI::App* cmd, Common& c, bool with_budget) {
  cmd->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--output", c.output, "write the report to this path instead of stdout");
  cmd->add_option("--threads", c.threads, "worker threads (output does not depend on it)")->check(CLI::Range(1u, 256u));
  cmd->add_option("--seed", c.seed, "seed for randomized suites");
  if (with_budget) {
    cmd->add_option("--budget-nodes", c.budget_nodes, "node limit (0 = none)");
    cmd->add_option("--budget-seconds", c.budget_seconds, "wall-clock limit in seconds (0 = none)");
  }
}

void emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output);
  if (!out) throw Error(Errc::OutOfRange, "cannot open " + c.output);
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::pair<int, int> parse_dims(const std::string& s, int n) {
  if (s.empty()) return {0, n};
  const auto colon = s.find(':');
  try {
    if (colon == std::string::npos) {
      const int d = std::stoi(s);
      return {d, d};
    }
    return {std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw Error(Errc::ParseError, "dims must be 'lo:hi' or a single dimension");
  }
}

std::vector<PosetSpec> parse_forbid(const std::string& names, const std::string& file) {
  std::vector<PosetSpec> out;
  if (!names.empty()) out = named_posets(names);
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw Error(Errc::ParseError, "cannot read " + file);
    std::stringstream ss;
    ss << in.rdbuf();
    out.push_back(parse_poset_dsl(ss.str()));
  }
  if (out.empty()) throw Error(Errc::ParseError, "no forbidden poset given");
  return out;
}

std::string profile(const Family& f) {
  std::string s;
  for (auto c : f.level_counts()) s += (s.empty() ? "" : ",") + std::to_string(c);
  return "[" + s + "]";
}

std::string family_line(const Family& f) {
  std::string s = profile(f) + " ";
  const auto& L = f.lattice();
  bool first = true;
  for (auto i : f.indices()) {
    s += first ? "" : " ";
    first = false;
    s += "<";
    for (std::size_t r = 0; r < L.element(i).rows.size(); ++r) {
      if (r) s += ",";
      for (auto x : L.element(i).rows[r]) s += std::to_string(static_cast<int>(x));
    }
    s += ">";
  }
  return s;
}

// Families for the lym command: "levels:1,2" or a family file.
Family parse_family(const LatticePtr& L, const std::string& spec) {
  if (spec.rfind("levels:", 0) == 0) {
    std::vector<int> ks;
    for (const auto& t : detail::split(spec.substr(7), ','))
      if (!t.empty()) ks.push_back(std::stoi(t));
    return union_of_levels(L, ks);
  }
  if (spec == "empty") return Family(L);
  std::ifstream in(spec);
  if (!in) throw Error(Errc::ParseError, "family must be 'levels:...', 'empty' or a readable file");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
  return family_from_json(j, L);
}

SimpleFamily parse_h(const std::string& spec, int n) {
  if (spec == "cyclic") return cyclic_interval_family(n);
  if (spec == "double") return double_chain_family(n);
  if (spec == "chain") return maximal_chain_family(n);
  if (spec.rfind("interval:", 0) == 0) return interval_chain_family(n, std::stoi(spec.substr(9)));
  throw Error(Errc::ParseError, "H must be cyclic, double, chain or interval:k");
}

int run_search(int n, int q, const std::string& dims, const std::string& forbid, const std::string& forbid_file, bool induced,
               bool enumerate, std::size_t max_extremal, const Common& c) {
  SearchProblem p;
  p.lattice = make_lattice(n, q);
  p.forbidden = parse_forbid(forbid, forbid_file);
  p.induced = induced;
  std::tie(p.dim_lo, p.dim_hi) = parse_dims(dims, n);
  p.mode = enumerate ? SearchMode::EnumerateExtremal : SearchMode::MaxSize;
  p.budget = c.budget();
  p.threads = c.threads;
  p.max_extremal = max_extremal;
  const auto r = solve(p);
  if (c.format == "json") {
    emit(c, dump(search_document(p, r)));
  } else {
    std::ostringstream os;
    os << "L(" << n << "," << q << ") dims " << p.dim_lo << ".." << (p.dim_hi < 0 ? n : p.dim_hi) << " forbid "
       << poset_names(p.forbidden).dump() << (induced ? " induced" : " weak") << "\n";
    os << "optimum: " << r.optimum << "\n";
    os << "completed: " << (r.completed ? "yes" : "no (budget)") << "\n";
    os << "nodes: " << r.nodes_explored << "  bound prunes: " << r.stats.bound_prunes << "\n";
    os << (enumerate ? "extremal families: " : "witness families: ") << r.extremal.size()
       << (r.extremal_truncated ? " (truncated)" : "") << "\n";
    for (const auto& f : r.extremal) os << "  " << family_line(f) << "\n";
    emit(c, os.str());
  }
  return r.completed ? kPass : kBudget;
}

int run_verify(const std::string& id, TheoremParams tp, const Common& c) {
  tp.budget = c.budget();
  tp.threads = c.threads;
  const auto v = verify_theorem(id, tp);
  if (c.format == "json") {
    emit(c, dump(verdict_document(v)));
  } else {
    std::ostringstream os;
    os << v.id << " n=" << v.params.n << " q=" << v.params.q << " k=" << v.params.k << " l=" << v.params.l << ": "
       << (v.pass ? "PASS" : "FAIL") << "\n";
    os << "claimed " << v.claimed << ", observed " << v.observed << "\n";
    for (const auto& [what, ok] : v.checks) os << "  [" << (ok ? "ok" : "FAILED") << "] " << what << "\n";
    for (const auto& note : v.notes) os << "  note: " << note << "\n";
    if (!v.extremal.empty()) os << "extremal families: " << v.extremal.size() << "\n";
    for (const auto& f : v.extremal) os << "  " << family_line(f) << "\n";
    emit(c, os.str());
  }
  return v.pass ? kPass : kFail;
}

int run_lym(int n, int q, const std::string& family, const std::string& h, const std::string& forbid, bool induced,
            const Common& c) {
  const auto L = make_lattice(n, q);
  const Family F = parse_family(L, family);
  const SimpleFamily H = parse_h(h, n);
  const auto forb = named_posets(forbid);
  const auto v = lym_check(F, H, forb, induced);
  if (c.format == "json") {
    emit(c, dump(lym_document(family, h, forb, induced, v)));
  } else {
    std::ostringstream os;
    os << "sum N_dim(H)/[n dim]_q = " << to_string(v.lhs) << "  alpha = " << v.alpha << "  " << (v.holds ? "holds" : "VIOLATED")
       << "\n";
    emit(c, os.str());
  }
  return v.holds ? kPass : kFail;
}

int run_check(const std::string& file, const std::string& forbid, bool induced, const Common& c) {
  std::ifstream in(file);
  if (!in) throw Error(Errc::ParseError, "cannot read " + file);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
  // A search or verify report: re-check every family in it. A bare family file: check it.
  std::vector<json> fams;
  int n = 0, q = 0;
  if (j.contains("result") && j["result"].contains("extremal")) {
    for (const auto& f : j["result"]["extremal"]) fams.push_back(f);
  } else {
    fams.push_back(j);
  }
  const auto forb = named_posets(forbid);
  std::size_t bad = 0;
  LatticePtr L;
  std::ostringstream os;
  for (const auto& fj : fams) {
    const auto [fn, fq] = family_file_ambient(fj);
    if (!L || fn != n || fq != q) {
      n = fn;
      q = fq;
      L = make_lattice(n, q);
    }
    const Family F = family_from_json(fj, L);
    const bool ok = is_free(F, forb, induced);
    if (!ok) ++bad;
    os << (ok ? "free    " : "NOT FREE") << " " << family_line(F) << "\n";
  }
  os << fams.size() << " families, " << bad << " not free\n";
  emit(c, c.format == "json" ? dump(json{{"schema_version", kReportSchemaVersion},
                                          {"command", "check"},
                                          {"config", {{"file", file}, {"forbid", forbid}, {"induced", induced}}},
                                          {"result", {{"families", fams.size()}, {"not_free", bad}}}})
                             : os.str());
  return bad == 0 ? kPass : kFail;
}

int run_suite(std::size_t count, const Common& c) {
  const auto L = make_lattice(4, 2);
  const auto r = pushdown_property_suite(L, c.seed, count, c.threads);
  if (c.format == "json") {
    emit(c, dump(pushdown_suite_document(r)));
  } else {
    std::ostringstream os;
    os << "pushdown suite over L(4,2), seed " << r.seed << ": " << r.cases.size() << " families, " << r.failures()
       << " failures, " << r.hall_failures() << " Hall failures\n";
    for (const auto& cs : r.cases)
      if (!cs.ok()) os << "  case " << cs.index << ": " << (cs.error.empty() ? "property failed" : cs.error) << "\n";
    emit(c, os.str());
  }
  return r.failures() == 0 ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pattern-free families in the subspace lattice of F_q^n"};
  app.require_subcommand(1);

  Common common;

  auto* qb = app.add_subcommand("qbinom", "print the Gaussian binomial [n choose k]_q");
  int qb_n = 0, qb_k = 0, qb_q = 2;
  qb->add_option("n", qb_n)->required();
  qb->add_option("k", qb_k)->required();
  qb->add_option("q", qb_q)->required();

  auto* se = app.add_subcommand("search", "largest pattern-free family");
  int n = 3, q = 2;
  std::string dims, forbid, forbid_file;
  bool induced = false, enumerate = false;
  std::size_t max_extremal = 100000;
  se->add_option("--n", n, "ambient dimension")->required();
  se->add_option("--q", q, "field order")->required();
  se->add_option("--dims", dims, "dimension range lo:hi (default 0:n)");
  se->add_option("--forbid", forbid, "comma-separated posets: V:k, L:l, B, Y:k, Y':k, C:h");
  se->add_option("--forbid-file", forbid_file, "poset in the 'elements: ...; relations: a<b, ...' form");
  se->add_flag("--induced", induced, "forbid induced copies only");
  se->add_flag("--enumerate-extremal", enumerate, "list every family of maximum size");
  se->add_option("--max-extremal", max_extremal, "cap on listed extremal families");
  add_common(se, common, true);

  auto* ve = app.add_subcommand("verify", "check a theorem at desk scale");
  std::string theorem;
  TheoremParams tp;
  ve->add_option("theorem", theorem, "thm_1.3 thm_1.4 thm_1.5 thm_1.6 thm_1.7 thm_4.2 lemma_3.2 eq1")->required();
  ve->add_option("--n", tp.n);
  ve->add_option("--q", tp.q);
  ve->add_option("--k", tp.k);
  ve->add_option("--l", tp.l);
  add_common(ve, common, true);

  auto* ly = app.add_subcommand("lym", "LYM-type inequality for a family against a simple family H");
  std::string lym_family = "levels:1", lym_h = "cyclic", lym_forbid = "V:2";
  bool lym_induced = false;
  ly->add_option("--n", n)->required();
  ly->add_option("--q", q)->required();
  ly->add_option("--family", lym_family, "levels:i,j,...  empty  or a family file");
  ly->add_option("--H", lym_h, "cyclic, double, chain or interval:k");
  ly->add_option("--forbid", lym_forbid);
  ly->add_flag("--induced", lym_induced);
  add_common(ly, common, false);

  auto* ch = app.add_subcommand("check", "re-verify families from a family file or a report");
  std::string check_file, check_forbid = "V:2,L:2";
  bool check_induced = false;
  ch->add_option("file", check_file)->required();
  ch->add_option("--forbid", check_forbid);
  ch->add_flag("--induced", check_induced);
  add_common(ch, common, false);

  auto* su = app.add_subcommand("pushdown-suite", "seeded pushdown property suite over L(4,2)");
  std::size_t suite_count = 200;
  su->add_option("--count", suite_count);
  add_common(su, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*qb) {
      if (detail::factor_prime_power(qb_q).p == 0) throw Error(Errc::NotAPrimePower, "q must be a prime power");
      std::cout << q_binomial(qb_n, qb_k, qb_q).str() << "\n";
      return kPass;
    }
    if (*se) return run_search(n, q, dims, forbid, forbid_file, induced, enumerate, max_extremal, common);
    if (*ve) return run_verify(theorem, tp, common);
    if (*ly) return run_lym(n, q, lym_family, lym_h, lym_forbid, lym_induced, common);
    if (*ch) return run_check(check_file, check_forbid, check_induced, common);
    if (*su) return run_suite(suite_count, common);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case Errc::BudgetExceeded: return kBudget;
      case Errc::OutOfGuard:
      case Errc::TooLarge: return kGuard;
      case Errc::HallFailure:
      case Errc::FreenessViolatedAfterStep: return kFail;
      default: return kUsage;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
