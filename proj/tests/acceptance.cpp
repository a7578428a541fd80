// Acceptance run: one PASS/FAIL line per criterion at full scale.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "glwb/error.hpp"
#include "glwb/proof.hpp"
#include "glwb/workbench.hpp"
#include "proof_mutation.hpp"

using namespace glwb;
using namespace glwb::testing;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

CampaignReport campaign(const std::string& id, int formulas, int structures) {
  CampaignConfig c;
  c.property = id;
  c.formulas = formulas;
  c.structures = structures;
  return run_campaign(c);
}

std::string summary(const CampaignReport& r) {
  std::string s = r.property + ": checks=" + std::to_string(r.checks) + " failures=" + std::to_string(r.failures) +
                  " skipped=" + std::to_string(r.skipped);
  if (!r.first_failure.empty()) s += " first_failure=\"" + r.first_failure + "\"";
  return s;
}

double stat(const CampaignReport& r, const std::string& key) {
  auto it = r.stats.find(key);
  return it == r.stats.end() ? -1 : it->second;
}

// A campaign criterion: zero failures, nothing skipped, within the time limit.
Outcome campaign_within(const CampaignReport& r, double limit_s) {
  const double s = r.elapsed_ms / 1000.0;
  const bool pass = r.passed() && r.skipped == 0 && s < limit_s;
  return {pass, summary(r) + " time=" + std::to_string(s) + "s limit=" + std::to_string(limit_s) + "s"};
}

Outcome criterion_translations() {
  bool pass = true;
  std::string detail;
  for (const char* id : {"correct-sharp", "correct-flat", "correct-qflat", "correct-ctx", "correct-natural",
                         "correct-sep", "roundtrip-sharp-flat"}) {
    Outcome o = campaign_within(campaign(id, 200, 10), 120);
    pass = pass && o.pass;
    detail += (detail.empty() ? "" : "; ") + o.detail;
  }
  return {pass, detail};
}

Outcome criterion_poison() {
  CampaignReport r = campaign("poison-agreement", 200, 1);
  Outcome o = campaign_within(r, 300);
  // Exhaustive up to three vertices: 2 + 2^4 + 2^9 edge sets.
  const bool complete = stat(r, "graphs_1_vertices") == 2 && stat(r, "graphs_2_vertices") == 16 &&
                        stat(r, "graphs_3_vertices") == 512 && stat(r, "graphs_4_vertices") == 200;
  return {o.pass && complete, o.detail + (complete ? "" : " (graph counts short)")};
}

Outcome criterion_proofs() {
  const auto scripts = regression_scripts();
  int accepted = 0;
  std::string detail;
  for (const auto& [name, text] : scripts) {
    Verdict v = check_proof(parse_proof(text));
    if (v.accepted)
      ++accepted;
    else
      detail += " rejected " + name + ":" + std::to_string(v.source_line) + " " + v.reason + ";";
  }
  Rng rng(7);
  int made = 0, rejected_at_line = 0, side_condition = 0, side_condition_named = 0;
  int per_kind[std::size(kMutations)] = {};
  for (int attempt = 0; attempt < 20000 && made < 200; ++attempt) {
    const auto& [name, text] = scripts[pick(rng, scripts.size())];
    ProofScript s = parse_proof(text);
    const std::size_t k = pick(rng, s.lines.size());
    const auto kind = pick(rng, std::size(kMutations));
    if (!mutate(s, k, kMutations[kind], rng)) continue;
    ++made;
    ++per_kind[kind];
    Verdict v = check_proof(s);
    const bool at_line = !v.accepted && v.source_line == s.lines[k].source_line && !v.reason.empty();
    if (at_line) ++rejected_at_line;
    if (kMutations[kind] == Mutation::SideCondition) {
      ++side_condition;
      if (at_line && (v.reason.find("†") != std::string::npos || v.reason.find("‡") != std::string::npos))
        ++side_condition_named;
    }
    if (!at_line && detail.size() < 400)
      detail += " mutant " + name + " line " + std::to_string(s.lines[k].source_line) + " kind " +
                std::to_string(kind) + " -> " + (v.accepted ? "accepted" : v.reason) + ";";
  }
  // Every line where a side condition can be broken, not only sampled ones.
  for (const auto& [name, text] : scripts) {
    const ProofScript base = parse_proof(text);
    for (std::size_t k = 0; k < base.lines.size(); ++k) {
      ProofScript s = base;
      if (!mutate(s, k, Mutation::SideCondition, rng)) continue;
      ++made;
      ++side_condition;
      Verdict v = check_proof(s);
      const bool at_line = !v.accepted && v.source_line == s.lines[k].source_line;
      if (at_line) ++rejected_at_line;
      if (at_line && (v.reason.find("†") != std::string::npos || v.reason.find("‡") != std::string::npos))
        ++side_condition_named;
      else if (detail.size() < 400)
        detail += " side-condition mutant " + name + " line " + std::to_string(s.lines[k].source_line) + " -> " +
                  (v.accepted ? "accepted" : v.reason) + ";";
    }
  }
  bool every_kind = true;
  for (int c : per_kind) every_kind = every_kind && c > 0;
  const bool pass = !scripts.empty() && accepted == static_cast<int>(scripts.size()) && made >= 50 &&
                    rejected_at_line == made && every_kind && side_condition > 0 &&
                    side_condition_named == side_condition;
  return {pass, "scripts accepted " + std::to_string(accepted) + "/" + std::to_string(scripts.size()) +
                    ", mutants rejected at their line " + std::to_string(rejected_at_line) + "/" +
                    std::to_string(made) + ", side-condition mutants naming the condition " +
                    std::to_string(side_condition_named) + "/" + std::to_string(side_condition) + detail};
}

Outcome criterion_ceiling() {
  CampaignReport r = campaign("ctx-ceiling", 200, 1);
  Outcome o = campaign_within(r, 120);
  const bool reported = stat(r, "max_expansion") > 0;
  return {o.pass && reported, o.detail + " max_expansion=" + std::to_string(stat(r, "max_expansion")) +
                                  " max_output_log2_over_ceiling_log2=" +
                                  std::to_string(stat(r, "max_output_log2_over_ceiling_log2"))};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 GLs at the empty context agrees with RGL", [] { return campaign_within(campaign("prop36-agreement", 500, 20), 60); }},
      {"2 negation is the context-dual complement", [] { return campaign_within(campaign("duality", 500, 10), 600); }},
      {"3 translations preserve truth sets", criterion_translations},
      {"4 vectorial fixpoints equal their nested elimination", [] { return campaign_within(campaign("bekic", 1, 1000), 600); }},
      {"5 pointwise and function-lattice engines agree", [] { return campaign_within(campaign("pointwise", 300, 10), 600); }},
      {"6 axiom schemas are sound", [] { return campaign_within(campaign("axiom-soundness", 1000, 20), 600); }},
      {"7 worked examples", [] { return campaign_within(campaign("worked-examples", 1, 100), 600); }},
      {"8 poison game matches its oracle", criterion_poison},
      {"9 proof kernel accepts scripts and rejects mutants", criterion_proofs},
      {"10 context translation stays within its ceiling", criterion_ceiling},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %s (%.2fs): %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), seconds_since(t0),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
