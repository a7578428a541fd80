#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "glwb/ast.hpp"
#include "glwb/semantics.hpp"

namespace glwb {

// Node counts of the expression trees (shared subtrees counted at every
// occurrence, saturating at UINT64_MAX).
std::uint64_t expr_size(const FormPtr& f);
std::uint64_t expr_size(const GamePtr& g);
std::uint64_t expr_size(const FlcPtr& f);

struct TranslationReport {
  std::string translation;
  std::uint64_t input_size = 0;
  std::uint64_t output_size = 0;
  // One entry per translated fixpoint: size of its image over its own size.
  std::vector<double> expansion;
  double elapsed_ms = 0;
  // ctx_translate only: atomic games in the input, star nesting depth, and
  // log2 of the ceiling (C*|input|)^(3^atoms ^^ depth) with C = kCeilingConstant.
  int atoms = 0;
  int depth = 0;
  double ceiling_log2 = 0;
  bool within_ceiling = true;

  std::string key_values() const;
};

inline constexpr double kCeilingConstant = 4.0;

// Marker variables of flat and qflat.
inline const std::string kMarkU = "u";
inline const std::string kMarkV = "v";

// FLC -> RGL. Total. mu x.(id \/ f;x) and nu x.(id /\ f;x) become f^* and
// f^x when x is not free in f, so L* inputs land in GL.
GamePtr sharp(const FlcPtr& f, TranslationReport* r = nullptr);
FormPtr sharp_formula(const FlcPtr& f, TranslationReport* r = nullptr);

// RGL -> FLC with end markers u (goal reached) and v (variable reached).
FlcPtr flat(const FormPtr& f, TranslationReport* r = nullptr);
FlcPtr flat(const GamePtr& g, TranslationReport* r = nullptr);

// Closed right-linear RGL -> Lmu (no chop, no id).
FlcPtr qflat(const FormPtr& f, TranslationReport* r = nullptr);
FlcPtr qflat(const GamePtr& g, TranslationReport* r = nullptr);

struct CtxOptions {
  // Alphabet of the context space; empty means the trapped atoms of the input.
  std::vector<std::string> alphabet;
  // Output tree size beyond which BudgetExceeded is raised.
  std::uint64_t max_output_size = std::uint64_t{1} << 40;
  // Relevant contexts per star beyond which BudgetExceeded is raised.
  std::size_t max_contexts = 729;
};

// Name of the end marker for context c.
std::string ctx_var(std::size_t c);
// Inverse of ctx_var.
bool parse_ctx_var(const std::string& name, std::size_t& c);

// GLs -> rlGL relative to context c of the space. Formulas translate to
// closed games whose value is constant; games keep the markers y_ctx_e free.
// Stars become System nodes.
GamePtr ctx_translate(const FormPtr& f, const ContextSpace& cs, std::size_t c, const CtxOptions& o = {},
                      TranslationReport* r = nullptr);
GamePtr ctx_translate(const GamePtr& g, const ContextSpace& cs, std::size_t c, const CtxOptions& o = {},
                      TranslationReport* r = nullptr);
// <ctx_translate(f, empty context)> false, over the trapped atoms of f.
FormPtr ctx_formula(const FormPtr& f, const CtxOptions& o = {}, TranslationReport* r = nullptr);

// Nested single-variable form of component i. Components are eliminated last
// first; only those reachable from i are kept.
GamePtr bekic_eliminate(const RecSystem& sys, std::size_t i);
// Replace every System node, innermost first.
GamePtr eliminate_systems(const GamePtr& g, TranslationReport* r = nullptr);
FormPtr eliminate_systems(const FormPtr& f, TranslationReport* r = nullptr);

// rlGL -> GLs. Each fixpoint uses fresh trap atoms b_k, c_k.
FormPtr natural(const FormPtr& f, TranslationReport* r = nullptr);
GamePtr natural(const GamePtr& g, TranslationReport* r = nullptr);

// Separable Lmu -> L*.
FlcPtr sep_to_star(const FlcPtr& f, TranslationReport* r = nullptr);

}  // namespace glwb
