#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "glwb/proof.hpp"

namespace glwb {

// Semantic soundness fuzz over the schema catalogue. Each case draws
// instantiations that pass the side condition and checks that axiom instances
// are valid, and that rule conclusions are valid wherever the premises are.
// Validity in the sabotage semantics is truth at every state in the empty
// context; other contexts are not a validity notion because negation reads
// the dual context.

enum class SoundnessExpect {
  Sound,    // zero invalid instances
  Refuted,  // at least one invalid instance (side condition dropped, or wrong structure class)
};

struct SoundnessCase {
  std::string name;
  SchemaId id;
  SoundnessExpect expect = SoundnessExpect::Sound;
  // Rule cases whose premises are valid by construction on every structure.
  bool require_nonvacuous = false;
};

struct SoundnessConfig {
  int instances = 1000;
  int structures = 20;
  int formula_nodes = 6;
  std::uint64_t seed = 0;
};

struct SoundnessTally {
  std::string name;
  SchemaId id = SchemaId::Taut;
  SoundnessExpect expect = SoundnessExpect::Sound;
  int instances = 0;
  int refused = 0;     // drawn but stopped by the side condition
  int nonvacuous = 0;  // instances whose premises held on some structure
  int failures = 0;
  bool require_nonvacuous = false;
  int wanted = 0;
  std::string witness;  // first failure: instance and structure file

  bool passed() const;
};

std::vector<SoundnessCase> soundness_cases();
SoundnessTally run_soundness_case(std::size_t index, const SoundnessConfig& c = {});

}  // namespace glwb
