#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "glwb/ast.hpp"

namespace glwb {

// Hard upper bound on states; the configurable cap must not exceed it.
inline constexpr int kMaxStates = 20;
inline constexpr int kDefaultStateCap = 10;

struct StateSet {
  std::uint32_t bits = 0;

  static StateSet full(int n) { return {n >= 32 ? ~0u : ((1u << n) - 1)}; }
  static StateSet single(int s) { return {1u << s}; }
  bool contains(int s) const { return (bits >> s) & 1u; }
  bool empty() const { return bits == 0; }
  bool subset_of(StateSet o) const { return (bits & ~o.bits) == 0; }
  int count() const { return __builtin_popcount(bits); }
  StateSet operator|(StateSet o) const { return {bits | o.bits}; }
  StateSet operator&(StateSet o) const { return {bits & o.bits}; }
  StateSet minus(StateSet o) const { return {bits & ~o.bits}; }
  friend bool operator==(StateSet, StateSet) = default;
  friend bool operator<(StateSet a, StateSet b) { return a.bits < b.bits; }
};

std::string to_string(StateSet s, int n);

// Extensional monotone map P(X) -> P(X), one entry per subset of X.
class Effectivity {
 public:
  Effectivity() = default;
  // Throws NonMonotoneDetected unless the table is monotone, CapExceeded if n > cap.
  Effectivity(int n, std::vector<std::uint32_t> table, int cap = kDefaultStateCap);
  static Effectivity bottom(int n);
  static Effectivity top(int n);
  static Effectivity identity(int n);
  static Effectivity constant(int n, StateSet a);
  static Effectivity test(int n, StateSet a);
  static Effectivity from_function(int n, const std::function<StateSet(StateSet)>& f, int cap = kDefaultStateCap);

  int states() const { return n_; }
  StateSet operator()(StateSet a) const { return {table_[a.bits]}; }
  const std::vector<std::uint32_t>& table() const { return table_; }
  bool leq(const Effectivity& o) const;
  friend bool operator==(const Effectivity& a, const Effectivity& b) { return a.n_ == b.n_ && a.table_ == b.table_; }

 private:
  int n_ = 0;
  std::vector<std::uint32_t> table_;
};

bool is_monotone(int n, const std::vector<std::uint32_t>& table);

Effectivity eff_dual(const Effectivity& w);
Effectivity eff_compose(const Effectivity& w, const Effectivity& u);  // w after u
Effectivity eff_test(int n, StateSet a);
Effectivity eff_const(int n, StateSet a);
Effectivity eff_union(const Effectivity& w, const Effectivity& u);
Effectivity eff_intersect(const Effectivity& w, const Effectivity& u);

// Kleene iteration from the empty/full set. f must be monotone.
StateSet lfp_set(int n, const std::function<StateSet(StateSet)>& f);
StateSet gfp_set(int n, const std::function<StateSet(StateSet)>& f);
// Kleene iteration in the pointwise-ordered lattice of effectivities.
Effectivity lfp_eff(int n, const std::function<Effectivity(const Effectivity&)>& F);
Effectivity gfp_eff(int n, const std::function<Effectivity(const Effectivity&)>& F);

// ---- structures ----

struct GameInterp {
  enum class Kind { Relation, Neighbourhood };
  Kind kind = Kind::Relation;
  std::vector<std::uint32_t> succ;                // Relation: successor mask per state
  std::vector<std::vector<std::uint32_t>> nbhd;   // Neighbourhood: family per state

  StateSet apply(StateSet a) const;
  friend bool operator==(const GameInterp&, const GameInterp&) = default;
};

class FiniteStructure {
 public:
  explicit FiniteStructure(int n = 1, int cap = kDefaultStateCap);

  int states() const { return n_; }
  int cap() const { return cap_; }
  StateSet full() const { return StateSet::full(n_); }

  void set_prop(const std::string& p, StateSet s);
  void set_relation(const std::string& a, const std::vector<std::pair<int, int>>& edges);
  void set_neighbourhoods(const std::string& a, const std::vector<std::vector<StateSet>>& family);
  void set_game(const std::string& a, GameInterp g);

  // Unlisted names default to the empty valuation / empty relation.
  StateSet prop(const std::string& p) const;
  const GameInterp& game(const std::string& a) const;
  StateSet apply(const std::string& a, StateSet s) const { return game(a).apply(s); }
  bool kripke() const;

  const std::vector<std::pair<std::string, StateSet>>& props() const { return props_; }
  const std::vector<std::pair<std::string, GameInterp>>& games() const { return games_; }

  friend bool operator==(const FiniteStructure& a, const FiniteStructure& b);

 private:
  int n_;
  int cap_;
  std::vector<std::pair<std::string, StateSet>> props_;
  std::vector<std::pair<std::string, GameInterp>> games_;
};

Effectivity lift_game(const FiniteStructure& s, const std::string& a);

// Line-oriented structure files: `states N`, `prop P: 0 2`, `game a rel: 0->1`,
// `game b nbhd: 0:{0,1}{2} 1:{}`, `#` comments. write_structure is canonical, and
// parse(write(s)) == s.
FiniteStructure parse_structure(std::string_view text, int cap = kDefaultStateCap);
std::string write_structure(const FiniteStructure& s);

using Valuation = std::map<std::string, Effectivity>;

struct EvalOptions {
  // Fixpoints whose variable occurs right-linearly are computed at the argument
  // (set lattice) instead of over whole effectivity tables.
  bool pointwise = true;
  // Normalize before evaluating; when false Neg and Dual are interpreted directly.
  bool normalize = true;
};

// ---- RGL ----

Effectivity eval_rgl_game(const GamePtr& g, const FiniteStructure& s, const Valuation& I = {}, EvalOptions o = {});
StateSet eval_rgl_game_at(const GamePtr& g, const FiniteStructure& s, StateSet a, const Valuation& I = {},
                          EvalOptions o = {});
StateSet eval_rgl_formula(const FormPtr& f, const FiniteStructure& s, const Valuation& I = {}, EvalOptions o = {});

// ---- FLC ----

Effectivity eval_flc(const FlcPtr& f, const FiniteStructure& s, const Valuation& I = {}, EvalOptions o = {});
StateSet eval_flc_at(const FlcPtr& f, const FiniteStructure& s, StateSet a, const Valuation& I = {}, EvalOptions o = {});
// Truth set: the denotation applied to the empty set.
StateSet flc_truth(const FlcPtr& f, const FiniteStructure& s, const Valuation& I = {}, EvalOptions o = {});

// ---- vectorial fixpoints ----

Effectivity eval_vectorial(const RecSystem& sys, const FiniteStructure& s, const Valuation& I, std::size_t i,
                           EvalOptions o = {});

// ---- GLs ----

enum class Owner : std::uint8_t { Neither = 0, Angel = 1, Demon = 2 };

// Contexts over a finite alphabet, encoded base 3 (digit i is the owner of atom i).
class ContextSpace {
 public:
  explicit ContextSpace(std::vector<std::string> alphabet);
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  std::size_t size() const { return size_; }
  int index_of(const std::string& a) const;  // -1 if absent
  Owner owner(std::size_t c, int atom) const { return static_cast<Owner>((c / pow3_[atom]) % 3); }
  std::size_t with(std::size_t c, int atom, Owner o) const {
    return c - static_cast<std::size_t>(owner(c, atom)) * pow3_[atom] + static_cast<std::size_t>(o) * pow3_[atom];
  }
  std::size_t dual(std::size_t c) const { return dual_[c]; }
  std::string describe(std::size_t c) const;

 private:
  std::vector<std::string> alphabet_;
  std::vector<std::size_t> pow3_;
  std::size_t size_;
  std::vector<std::size_t> dual_;
};

// A set of (state, context) pairs: one state set per context.
using CSet = std::vector<std::uint32_t>;

struct GlsOptions {
  bool normalize = true;
  // Upper bound on 2^n * 3^|S|.
  std::uint64_t budget = std::uint64_t{1} << 24;
};

// Context-dual complement: {(w,c) : (w, dual c) not in A}.
CSet sabotage_complement(const CSet& a, const ContextSpace& cs, int n);

class GlsEvaluator {
 public:
  GlsEvaluator(const FiniteStructure& s, std::vector<std::string> alphabet, GlsOptions o = {});
  CSet formula(const FormPtr& f);
  CSet game(const GamePtr& g, const CSet& u);
  const ContextSpace& contexts() const { return cs_; }
  int states() const { return s_.states(); }

 private:
  const FiniteStructure& s_;
  ContextSpace cs_;
  GlsOptions o_;
  std::map<const Form*, CSet> cache_;
  std::vector<FormPtr> keep_;

  CSet form_raw(const FormPtr& f);
  CSet game_raw(const GamePtr& g, const CSet& u);
  int atom_index(const std::string& a) const;
};

CSet eval_gls_formula(const FormPtr& f, const FiniteStructure& s, const std::vector<std::string>& alphabet,
                      GlsOptions o = {});
// Truth in the empty context c0 (alphabet = sabotage atoms of f).
StateSet gls_truth(const FormPtr& f, const FiniteStructure& s, GlsOptions o = {});

}  // namespace glwb
