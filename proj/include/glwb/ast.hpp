#pragma once

// Immutable ASTs for the game-logic family (GL, GLs, RGL, rlGL) and for
// fixpoint logic with chop (FLC, Lmu, L*). Nodes are shared and never mutated,
// so subterms may be aliased freely across translations and threads.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace glwb {

enum class NameKind { Proposition, AtomicGame, Variable };

struct Name {
  NameKind kind;
  std::string text;
  friend bool operator==(const Name&, const Name&) = default;
};

// [A-Za-z][A-Za-z0-9_]*
bool valid_identifier(std::string_view s);

struct Form;
struct Game;
struct RecSystem;
struct Flc;
using FormPtr = std::shared_ptr<const Form>;
using GamePtr = std::shared_ptr<const Game>;
using FlcPtr = std::shared_ptr<const Flc>;
using SystemPtr = std::shared_ptr<const RecSystem>;

enum class FormKind { True, False, Prop, NegProp, Neg, Or, And, Diamond };

struct Form {
  FormKind kind;
  std::string name;  // Prop, NegProp
  FormPtr left;      // Neg operand, Or/And left, Diamond postcondition
  FormPtr right;     // Or/And right
  GamePtr game;      // Diamond
};

enum class GameKind {
  Atom,
  DualAtom,
  Var,
  DualVar,
  Test,
  DTest,
  Choice,
  DChoice,
  Seq,
  Star,
  DStar,
  Dual,
  Rec,
  CoRec,
  TrapA,
  TrapD,
  System,
};

struct Game {
  GameKind kind;
  std::string name;  // atom for Atom/DualAtom/TrapA/TrapD, variable for Var/DualVar/Rec/CoRec
  FormPtr form;      // Test, DTest
  GamePtr left;      // binary left, unary operand, binder body
  GamePtr right;     // binary right
  SystemPtr system;  // System
  std::size_t index = 0;
};

enum class FixKind { Mu, Nu };

// Simultaneous fixpoint (x_1..x_n).(g_1..g_n); a System game node selects one
// component of it.
struct RecSystem {
  FixKind kind;
  std::vector<std::pair<std::string, GamePtr>> bindings;
};

enum class FlcKind { Id, True, False, Var, Prop, NegProp, Or, And, Dia, Box, Mu, Nu, Chop, StarFix };

struct Flc {
  FlcKind kind;
  std::string name;  // Var, Prop, NegProp, binder variable, Dia/Box atom
  FlcPtr left;       // binary left, body of Dia/Box/Mu/Nu/StarFix
  FlcPtr right;      // binary right
};

namespace gl {
FormPtr tt();
FormPtr ff();
FormPtr prop(std::string p);
FormPtr neg_prop(std::string p);
FormPtr neg(FormPtr f);
FormPtr lor(FormPtr a, FormPtr b);
FormPtr land(FormPtr a, FormPtr b);
FormPtr dia(GamePtr g, FormPtr f);
// Surface sugar, returned unnormalized: a -> b is -a \/ b, a <-> b is (a -> b) /\ (b -> a).
FormPtr implies(FormPtr a, FormPtr b);
FormPtr iff(FormPtr a, FormPtr b);
// [g]f as -<g>-f
FormPtr box(GamePtr g, FormPtr f);

GamePtr atom(std::string a);
GamePtr dual_atom(std::string a);
GamePtr var(std::string x);
GamePtr dual_var(std::string x);
GamePtr test(FormPtr f);
GamePtr dtest(FormPtr f);
GamePtr choice(GamePtr a, GamePtr b);
GamePtr dchoice(GamePtr a, GamePtr b);
GamePtr seq(GamePtr a, GamePtr b);
GamePtr star(GamePtr a);
GamePtr dstar(GamePtr a);
GamePtr dual(GamePtr a);
GamePtr rec(std::string x, GamePtr body);
GamePtr corec(std::string x, GamePtr body);
GamePtr trap_a(std::string a);
GamePtr trap_d(std::string a);
GamePtr component(SystemPtr sys, std::size_t i);

// Right-nested sequence / choice of a nonempty list.
GamePtr seq_all(const std::vector<GamePtr>& gs);
GamePtr choice_all(const std::vector<GamePtr>& gs);
}  // namespace gl

namespace flc {
FlcPtr id();
FlcPtr tt();
FlcPtr ff();
FlcPtr var(std::string x);
FlcPtr prop(std::string p);
FlcPtr neg_prop(std::string p);
FlcPtr lor(FlcPtr a, FlcPtr b);
FlcPtr land(FlcPtr a, FlcPtr b);
FlcPtr dia(std::string a, FlcPtr f);
FlcPtr box(std::string a, FlcPtr f);
FlcPtr mu(std::string x, FlcPtr f);
FlcPtr nu(std::string x, FlcPtr f);
FlcPtr chop(FlcPtr a, FlcPtr b);
FlcPtr star(FlcPtr f);
}  // namespace flc

bool is_binary(GameKind k);
bool is_binary(FormKind k);
bool is_binary(FlcKind k);

// Structural equality; shared subterms short-circuit by pointer.
bool equal(const FormPtr& a, const FormPtr& b);
bool equal(const GamePtr& a, const GamePtr& b);
bool equal(const FlcPtr& a, const FlcPtr& b);
bool equal(const SystemPtr& a, const SystemPtr& b);

std::size_t hash_of(const FormPtr& f);
std::size_t hash_of(const GamePtr& g);
std::size_t hash_of(const FlcPtr& f);

// Tree size (shared subterms counted once per occurrence), saturating at UINT64_MAX.
std::uint64_t size_of(const FormPtr& f);
std::uint64_t size_of(const GamePtr& g);
std::uint64_t size_of(const FlcPtr& f);

}  // namespace glwb
