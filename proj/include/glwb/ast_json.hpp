#pragma once

// JSON form of the ASTs: one object per node, {"kind": ..., fields...}, with
// the field names of the node structs. Reading rebuilds the exact tree.

#include "glwb/ast.hpp"
#include "json.hpp"

namespace glwb {

nlohmann::json to_json(const FormPtr& f);
nlohmann::json to_json(const GamePtr& g);
nlohmann::json to_json(const FlcPtr& f);

// Throw Format on a malformed document.
FormPtr form_from_json(const nlohmann::json& j);
GamePtr game_from_json(const nlohmann::json& j);
FlcPtr flc_from_json(const nlohmann::json& j);

}  // namespace glwb
