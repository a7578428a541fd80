#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "glwb/ast.hpp"
#include "glwb/semantics.hpp"
#include "glwb/syntax.hpp"

namespace glwb {

using Rng = std::mt19937_64;

// Uniform in [0, k); stable across standard libraries, unlike <random> distributions.
inline std::uint64_t pick(Rng& rng, std::uint64_t k) { return k == 0 ? 0 : rng() % k; }
inline bool coin(Rng& rng, double p) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p; }

// ---- random structures ----

enum class StructureKind { Kripke, Neighbourhood };

struct StructureConfig {
  int states = 4;
  StructureKind kind = StructureKind::Kripke;
  std::vector<std::string> atoms = {"a", "b"};
  std::vector<std::string> props = {"P", "Q"};
  double density = 0.4;
  int max_neighbourhoods = 3;
  int cap = kDefaultStateCap;
};

FiniteStructure random_structure(const StructureConfig& c, Rng& rng);
FiniteStructure random_structure(int n, StructureKind kind, std::uint64_t seed);

// ---- random formulas ----

struct FormulaConfig {
  int max_nodes = 12;
  std::vector<std::string> props = {"P", "Q"};
  std::vector<std::string> atoms = {"a", "b"};
  std::vector<std::string> sabotage = {"a", "b"};
  // Emit Neg and Dual nodes (outside normal form).
  bool raw = false;
  int max_fixpoints = 3;
};

// Closed, well-named, and in the requested fragment. Supported tags: GL, GLs,
// RGL, rlGL, PoorTest.
FormPtr random_formula(Fragment tag, const FormulaConfig& c, Rng& rng);
GamePtr random_game(Fragment tag, const FormulaConfig& c, Rng& rng);
// Supported tags: Lmu, Lstar, Lsep; full = true generates unrestricted FLC (tag ignored).
FlcPtr random_flc(Fragment tag, const FormulaConfig& c, Rng& rng, bool full = false);

// ---- equivalence checking ----

enum class Logic { RGL, GLs, FLC };

struct EquivReport {
  bool equivalent = true;
  std::size_t structures_checked = 0;
  std::size_t counterexample_structure = 0;  // index into the structure list
  int counterexample_state = -1;
  std::string detail;
};

// Truth sets of a formula in its logic: RGL and GLs formulas (GLs at the empty
// context), FLC formulas applied to the empty set.
StateSet truth_set(const FormPtr& f, Logic logic, const FiniteStructure& s);
StateSet truth_set(const FlcPtr& f, const FiniteStructure& s);

EquivReport equiv_check(const std::function<StateSet(const FiniteStructure&)>& lhs,
                        const std::function<StateSet(const FiniteStructure&)>& rhs,
                        const std::vector<FiniteStructure>& structures);
EquivReport equiv_check(const FormPtr& a, Logic la, const FormPtr& b, Logic lb,
                        const std::vector<FiniteStructure>& structures);

// ---- poison game ----

struct Digraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
};

Digraph parse_graph(std::string_view text);
std::string write_graph(const Digraph& g);

struct PoisonInstance {
  FormPtr formula;
  FiniteStructure structure;
};

// Atoms a_1..a_n (a_i moves to vertex i-1 along an edge); the Angel repeats
// (Demon's poisoning move; Angel's move) under demonic repetition.
PoisonInstance poison_build(const Digraph& g, int cap = kDefaultStateCap);

// Explicit arena solver. Angel moves along angel_edges to an unpoisoned
// vertex or loses; Demon moves along demon_edges and poisons the target, or
// picks any already-poisoned vertex and stays put; Demon choosing a vertex not
// reachable by an edge forfeits. Infinite plays are won by Angel.
StateSet poison_oracle(const Digraph& g);
StateSet poison_oracle(int n, const std::vector<std::pair<int, int>>& angel_edges,
                       const std::vector<std::pair<int, int>>& demon_edges);
// The classical rules: Demon must move to a successor (any), poisoning it;
// Angel must move to an unpoisoned successor; a player who cannot move loses.
StateSet classical_poison_oracle(const Digraph& g);

// ---- campaigns ----

struct CampaignConfig {
  std::string property;
  std::uint64_t seed = 1;
  int formulas = 200;    // random inputs (instances per schema for axiom-soundness)
  int structures = 10;   // random structures per input
  int max_nodes = 12;
  int max_states = 4;
  int sabotage_atoms = 2;
  std::uint64_t budget = std::uint64_t{1} << 24;  // GLs extended-state budget
  int workers = 1;
};

struct CampaignReport {
  std::string property;
  std::uint64_t seed = 0;
  std::uint64_t inputs = 0;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::uint64_t skipped = 0;  // inputs over a budget
  double elapsed_ms = 0;
  std::map<std::string, double> stats;
  std::string first_failure;

  bool passed() const { return failures == 0 && checks > 0; }
  // One key=value per line. Timing is omitted when with_timing is false, so
  // the remaining text is a function of the configuration alone.
  std::string key_values(bool with_timing = true) const;
};

std::vector<std::string> campaign_ids();
// Throws Usage for an unknown property or a non-positive bound.
CampaignReport run_campaign(const CampaignConfig& c);

}  // namespace glwb
