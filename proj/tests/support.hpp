#pragma once

// Fixtures shared by the property suites.

#include <string>
#include <vector>

#include "glwb/semantics.hpp"
#include "glwb/syntax.hpp"
#include "glwb/workbench.hpp"

namespace glwb::testing {

inline FormPtr F(const std::string& s, std::set<std::string> vars = {}) { return parse_game_formula(s, {std::move(vars)}); }
inline GamePtr G(const std::string& s, std::set<std::string> vars = {}) { return parse_game(s, {std::move(vars)}); }
inline FlcPtr L(const std::string& s, std::set<std::string> vars = {}) { return parse_flc(s, {std::move(vars)}); }

inline StateSet S(std::initializer_list<int> xs) {
  StateSet s;
  for (int x : xs) s = s | StateSet::single(x);
  return s;
}

// Alternating Kripke / neighbourhood structures with 1..max_states states.
inline std::vector<FiniteStructure> structures(std::size_t count, std::uint64_t seed, int max_states = 4,
                                               bool kripke_only = false) {
  Rng rng(seed);
  std::vector<FiniteStructure> out;
  for (std::size_t i = 0; i < count; ++i) {
    StructureConfig c;
    c.states = 1 + static_cast<int>(pick(rng, max_states));
    c.kind = (i % 2 && !kripke_only) ? StructureKind::Neighbourhood : StructureKind::Kripke;
    out.push_back(random_structure(c, rng));
  }
  return out;
}

}  // namespace glwb::testing
