#pragma once

// Hilbert-style proof checking. Schemas are instantiated from explicit
// witnesses (no matching), so every check is a syntactic comparison after
// normal_form.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "glwb/ast.hpp"

namespace glwb {

enum class SchemaId {
  Taut,
  fp,
  alpha,
  MP,
  MuRule,
  Mon_a,
  BoxAnd,
  K,
  BoxTop,
  GNot,
  GTest,
  GChoice,
  GComp,
  GFp,
  GAlpha,
  GMuRule,
  GMon,
  GStarFp,
  GStarMu,
  SAsab,
  SDsab,
  SBranch,
  SSabP,
  SSabRem,
  SSabNotYet,
  AFrak,
};

const char* schema_name(SchemaId id);
bool parse_schema(std::string_view s, SchemaId& out);
bool is_rule(SchemaId id);
const std::vector<SchemaId>& all_schemas();

// A line of a proof: a game-logic formula or a modal mu-calculus formula.
using Formula = std::variant<FormPtr, FlcPtr>;
std::string print(const Formula& f);
bool equal(const Formula& a, const Formula& b);

// Which formula language a schema is instantiated over. Only Taut, MP and the
// Kozen extras exist in both.
enum class Universe { Modal, Game };

enum class MetaSort { Form, Game, Flc, Atom, Var, Binder, Index, GameVec, AtomVec, VarVec, SchemaRef, AtomMap };

struct MetaValue {
  MetaSort sort = MetaSort::Form;
  FormPtr form;
  GamePtr game;
  FlcPtr flc;
  std::string name;       // Atom, Var
  bool greatest = false;  // Binder: nu / corec
  std::size_t index = 0;  // Index (1-based)
  SchemaId schema = SchemaId::Taut;
  std::vector<GamePtr> games;  // GameVec; nullptr is the empty game
  std::vector<std::string> names;  // AtomVec, VarVec
  std::map<std::string, std::string> pairs;  // AtomMap
};

namespace meta {
MetaValue form(FormPtr f);
MetaValue game(GamePtr g);
MetaValue flc(FlcPtr f);
MetaValue atom(std::string a);
MetaValue var(std::string x);
MetaValue binder(bool greatest);
MetaValue index(std::size_t i);
MetaValue games(std::vector<GamePtr> gs);
MetaValue atoms(std::vector<std::string> as);
MetaValue vars(std::vector<std::string> xs);
MetaValue schema(SchemaId id);
MetaValue atom_map(std::map<std::string, std::string> m);
}  // namespace meta

using Instantiation = std::map<std::string, MetaValue>;

struct Metavariable {
  std::string name;
  MetaSort sort;
  bool optional = false;
};

// Metavariables of a schema in parse order (variables before the games that mention them).
std::vector<Metavariable> schema_signature(SchemaId id, Universe u);

// Axioms have no premises. Formulas come back in normal form. Throws
// IncompleteInstantiation, WidthMismatch, or CaptureError from the
// substitutions. The universe only matters for schemas that exist in both;
// an FLC-valued metavariable selects Modal regardless.
struct SchemaInstance {
  std::vector<Formula> premises;
  Formula conclusion;
};
SchemaInstance instantiate_schema(SchemaId id, const Instantiation& inst, Universe u = Universe::Game);

// First violated side condition, or nullopt. Instantiation errors propagate.
std::optional<std::string> check_side_condition(SchemaId id, const Instantiation& inst, Universe u = Universe::Game);

// Propositional validity with maximal non-propositional subformulas as atoms;
// an atom and its complement count as one atom. Throws TooManyAtoms above 20.
inline constexpr std::size_t kMaxTautAtoms = 20;
bool taut_check(const FormPtr& f);
bool taut_check(const FlcPtr& f);
bool taut_check(const Formula& f);

// ---- calculi ----

enum class Calculus { mLmu, Kozen, GL, GLA, rlGL, rlGLG, GLs, GLsG };
const char* calculus_name(Calculus c);
bool parse_calculus(std::string_view s, Calculus& out);
Universe calculus_universe(Calculus c);

// Base axioms whose instances form the AFrak set.
struct AFrakConfig {
  std::set<SchemaId> bases = {SchemaId::SAsab, SchemaId::SDsab, SchemaId::SSabRem};
  // Sabotaged atom b -> the fresh atomic game s_b standing for its trap.
  std::map<std::string, std::string> trap_names;
};

struct CalculusOptions {
  // Admit GAlpha in the GLs calculi.
  bool gls_alpha = false;
  AFrakConfig afrak;
};

bool admits(Calculus c, SchemaId id, const CalculusOptions& o = {});
// Whether a formula belongs to the line language of the calculus.
bool in_language(Calculus c, const Formula& f);

// ---- scripts ----

struct ProofLine {
  std::size_t label = 0;        // the number written before the dot
  std::size_t source_line = 0;  // 1-based line in the file, 0 if built in code
  Formula formula;
  SchemaId schema = SchemaId::Taut;
  std::vector<std::size_t> premises;  // labels
  Instantiation inst;
};

struct ProofScript {
  Calculus calculus = Calculus::GLs;
  CalculusOptions options;
  std::vector<ProofLine> lines;
};

// Grammar:
//   script  := header* line*
//   header  := 'calculus' NAME | 'option' 'alpha' | 'afrak' (ATOM ':' ATOM)* | 'afrak_bases' SCHEMA*
//   line    := NUM '.' FORMULA 'BY' just
//   just    := 'axiom:' SCHEMA inst? | 'rule:' SCHEMA 'from' NUM (',' NUM)* inst?
//   inst    := '{' (KEY '=' VALUE) (',' KEY '=' VALUE)* '}'
//   VALUE   := term | '[' (term | '_') (',' (term | '_'))* ']' | '[' ']'
// '#' starts a comment; BY is reserved. Throws SyntaxError with file positions.
ProofScript parse_proof(std::string_view text);
std::string write_proof(const ProofScript& s);

struct Verdict {
  bool accepted = true;
  std::size_t label = 0;        // offending line label
  std::size_t source_line = 0;  // and its position in the file
  std::string reason;
};

Verdict check_proof(const ProofScript& s);

// ---- AFrak ----

struct AFrakParams {
  std::set<std::string> g1, g2, g3;
  std::map<std::string, std::string> trap_names;  // G2 -> G3, injective
};

// Throws PartitionViolation on overlapping classes, a map outside G2 x G3, or
// a non-injective map.
void check_partition(const AFrakParams& p);
// TrapA(b) -> s_b, TrapD(b) -> s_b^d.
FormPtr replace_traps(const FormPtr& f, const std::map<std::string, std::string>& trap_names);
// One GL formula per (base schema, instantiation) pair.
std::vector<FormPtr> afrak_instances(const AFrakParams& p, const std::vector<std::pair<SchemaId, Instantiation>>& insts);

}  // namespace glwb
