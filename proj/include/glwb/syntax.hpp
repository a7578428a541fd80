#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "glwb/ast.hpp"

namespace glwb {

// ---- concrete syntax ----

struct ParseOptions {
  // Identifiers in game (resp. FLC variable) position that denote free variables.
  // Any other unbound identifier in game position is an atomic game.
  std::set<std::string> free_vars;
};

FormPtr parse_game_formula(std::string_view text, const ParseOptions& opts = {});
GamePtr parse_game(std::string_view text, const ParseOptions& opts = {});
FlcPtr parse_flc(std::string_view text, const ParseOptions& opts = {});

std::string print(const FormPtr& f);
std::string print(const GamePtr& g);
std::string print(const FlcPtr& f);

// ---- names ----

// Deterministic fresh names prefix_k, skipping everything in the avoid set.
class NameSupply {
 public:
  NameSupply() = default;
  explicit NameSupply(std::set<std::string> avoid) : avoid_(std::move(avoid)) {}
  std::string fresh(const std::string& prefix);
  void avoid(const std::string& name) { avoid_.insert(name); }
  void avoid(const std::set<std::string>& names) { avoid_.insert(names.begin(), names.end()); }

 private:
  std::set<std::string> avoid_;
  std::map<std::string, std::uint64_t> counters_;
};

// Prefixes reserved for translation-introduced names.
extern const std::vector<std::string> kReservedPrefixes;
bool has_reserved_prefix(const std::string& name);

std::set<std::string> free_vars(const FormPtr& f);
std::set<std::string> free_vars(const GamePtr& g);
std::set<std::string> free_vars(const FlcPtr& f);
std::set<std::string> bound_vars(const FormPtr& f);
std::set<std::string> bound_vars(const GamePtr& g);
std::set<std::string> bound_vars(const FlcPtr& f);
bool occurs_free(const std::string& x, const GamePtr& g);
bool occurs_free(const std::string& x, const FlcPtr& f);

// Atomic games under TrapA/TrapD.
std::set<std::string> sabotage_atoms(const FormPtr& f);
std::set<std::string> sabotage_atoms(const GamePtr& g);
// Atomic games appearing as Atom/DualAtom (played, not trapped).
std::set<std::string> played_atoms(const FormPtr& f);
std::set<std::string> played_atoms(const GamePtr& g);
std::set<std::string> props_of(const FormPtr& f);
std::set<std::string> props_of(const GamePtr& g);
std::set<std::string> props_of(const FlcPtr& f);
std::set<std::string> atoms_of(const FlcPtr& f);
// Every identifier of any kind.
std::set<std::string> all_names(const FormPtr& f);
std::set<std::string> all_names(const GamePtr& g);
std::set<std::string> all_names(const FlcPtr& f);

// ---- normal forms ----

FormPtr normal_form(const FormPtr& f);
GamePtr normal_form(const GamePtr& g);
// nf(-f) and nf(g^d), computed without building the negation first.
FormPtr complement(const FormPtr& f);
GamePtr game_dual(const GamePtr& g);
FlcPtr flc_negate(const FlcPtr& f);

// ---- substitution and renaming ----

using GameSubst = std::map<std::string, GamePtr>;
using FlcSubst = std::map<std::string, FlcPtr>;

// Simultaneous capture-checked substitution of free variables.
GamePtr substitute(const GamePtr& g, const GameSubst& s);
FormPtr substitute(const FormPtr& f, const GameSubst& s);
FlcPtr substitute(const FlcPtr& f, const FlcSubst& s);

FormPtr rename_bound(const FormPtr& f);
GamePtr rename_bound(const GamePtr& g);
FlcPtr rename_bound(const FlcPtr& f);
bool well_named(const FormPtr& f);
bool well_named(const GamePtr& g);
bool well_named(const FlcPtr& f);

// Star -> rec z.(a;z u ?true), DStar -> corec z.(a;z n !true).
GamePtr desugar_star(const GamePtr& g);
FormPtr desugar_star(const FormPtr& f);

// ---- fragments ----

enum class Fragment { GL, GLs, RGL, rlGL, Lmu, Lstar, Lsep, PoorTest };
const char* fragment_name(Fragment f);
bool parse_fragment(std::string_view s, Fragment& out);

bool check_fragment(const FormPtr& f, Fragment tag);
bool check_fragment(const GamePtr& g, Fragment tag);
bool check_fragment(const FlcPtr& f, Fragment tag);

// No subgame b;c has a free variable in b (checked after star desugaring).
bool right_linear(const GamePtr& g);
bool right_linear(const FormPtr& f);
// Every bound variable occurs under an even number of duals relative to its binder,
// and no test mentions a variable.
bool rgl_wellformed(const GamePtr& g);
bool rgl_wellformed(const FormPtr& f);

// ---- rank ----

std::uint64_t rank(const FormPtr& f);
std::uint64_t rank(const GamePtr& g);

}  // namespace glwb
