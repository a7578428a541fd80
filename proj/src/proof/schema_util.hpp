#pragma once

#include <string>
#include <vector>

#include "glwb/proof.hpp"

namespace glwb::detail {

// Modal as soon as one value is an FLC formula.
Universe universe_of(const Instantiation& inst, Universe u);
// The schema's signature, extended by the base signature for AFrak.
std::vector<Metavariable> full_signature(SchemaId id, const Instantiation& inst, Universe u);
// Every required metavariable present with the right sort, nothing unknown.
void validate(SchemaId id, const Instantiation& inst, Universe u);

const MetaValue* find(const Instantiation& inst, const std::string& k);
const std::vector<std::string>& names_or_empty(const Instantiation& inst, const std::string& k);
const std::vector<GamePtr>& games_or_empty(const Instantiation& inst, const std::string& k);

}  // namespace glwb::detail
