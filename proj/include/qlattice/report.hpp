#pragma once

// Machine-readable run reports. Every document carries the schema version
// and the configuration it was produced from; exact rationals are written as
// "num/den" strings and big integers as decimal strings. The worker count is
// deliberately not part of any document.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qlattice/families.hpp"
#include "qlattice/lym.hpp"
#include "qlattice/search.hpp"
#include "qlattice/suites.hpp"
#include "qlattice/transforms.hpp"
#include "qlattice/verify.hpp"

namespace qlattice {

constexpr int kReportSchemaVersion = 1;

using json = nlohmann::json;

inline json poset_names(const std::vector<PosetSpec>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back(p.name.empty() ? std::string("custom") : p.name);
  return a;
}

inline json budget_json(const SearchBudget& b) { return {{"max_nodes", b.max_nodes}, {"max_seconds", b.max_seconds}}; }

inline json search_config_json(const SearchProblem& p) {
  const int hi = p.dim_hi < 0 ? p.lattice->n() : p.dim_hi;
  return {{"n", p.lattice->n()},
          {"q", p.lattice->q()},
          {"dims", {p.dim_lo, hi}},
          {"forbid", poset_names(p.forbidden)},
          {"induced", p.induced},
          {"mode", p.mode == SearchMode::EnumerateExtremal ? "enumerate-extremal" : "max-size"},
          {"budget", budget_json(p.budget)},
          {"max_extremal", p.max_extremal}};
}

inline json search_result_json(const SearchReport& r) {
  json fams = json::array();
  for (const auto& f : r.extremal) fams.push_back(family_to_json(f));
  return {{"optimum", r.optimum},
          {"completed", r.completed},
          {"extremal_truncated", r.extremal_truncated},
          {"extremal_count", r.extremal.size()},
          {"nodes_explored", r.nodes_explored},
          {"bound_certificates",
           {{"bound_prunes", r.stats.bound_prunes}, {"leaves", r.stats.leaves}, {"subtrees", r.stats.subtrees}}},
          {"seed_level", r.seed_level},
          {"seed_size", r.seed_size},
          {"extremal", fams}};
}

inline json search_document(const SearchProblem& p, const SearchReport& r) {
  return {{"schema_version", kReportSchemaVersion},
          {"command", "search"},
          {"config", search_config_json(p)},
          {"result", search_result_json(r)}};
}

inline json verdict_document(const TheoremVerdict& v) {
  json checks = json::array();
  for (const auto& [what, ok] : v.checks) checks.push_back({{"check", what}, {"ok", ok}});
  json fams = json::array();
  for (const auto& f : v.extremal) fams.push_back(family_to_json(f));
  return {{"schema_version", kReportSchemaVersion},
          {"command", "verify"},
          {"config",
           {{"theorem", v.id},
            {"n", v.params.n},
            {"q", v.params.q},
            {"k", v.params.k},
            {"l", v.params.l},
            {"budget", budget_json(v.params.budget)}}},
          {"result",
           {{"pass", v.pass},
            {"claimed", v.claimed},
            {"observed", v.observed},
            {"checks", checks},
            {"notes", v.notes},
            {"nodes_explored", v.nodes},
            {"orbit_count", v.orbit_count},
            {"extremal", fams}}}};
}

inline json pushdown_suite_document(const PushdownSuiteResult& r) {
  json cases = json::array();
  for (const auto& c : r.cases) {
    cases.push_back({{"index", c.index},
                     {"input_profile", c.input_profile},
                     {"output_profile", c.output_profile},
                     {"steps", c.steps},
                     {"ok", c.ok()},
                     {"error", c.error}});
  }
  return {{"schema_version", kReportSchemaVersion},
          {"command", "pushdown-suite"},
          {"config", {{"n", r.n}, {"q", r.q}, {"k", r.k}, {"l", r.l}, {"min_dim", r.lo}, {"floor", r.floor_dim}, {"seed", r.seed}, {"count", r.cases.size()}}},
          {"result", {{"failures", r.failures()}, {"hall_failures", r.hall_failures()}, {"cases", cases}}}};
}

inline json lym_document(const std::string& family_desc, const std::string& h_desc, const std::vector<PosetSpec>& forbidden,
                         bool induced, const LymVerdict& v) {
  return {{"schema_version", kReportSchemaVersion},
          {"command", "lym"},
          {"config", {{"family", family_desc}, {"H", h_desc}, {"forbid", poset_names(forbidden)}, {"induced", induced}}},
          {"result", {{"lhs", to_string(v.lhs)}, {"alpha", v.alpha}, {"holds", v.holds}}}};
}

}  // namespace qlattice
