#pragma once

// Regression proof scripts and single-line mutations of them. Every mutation
// must make the checker reject the script at the mutated line.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "glwb/proof.hpp"
#include "glwb/syntax.hpp"
#include "glwb/workbench.hpp"

namespace glwb::testing {

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<std::pair<std::string, std::string>> regression_scripts() {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : std::filesystem::directory_iterator(GLWB_DATA_DIR "/proofs"))
    if (e.path().extension() == ".proof") out.emplace_back(e.path().filename().string(), slurp(e.path()));
  std::sort(out.begin(), out.end());
  return out;
}

enum class Mutation { Negate, ToTaut, Retarget, Forward, BumpInst, DuplicateLabel, SideCondition };

inline constexpr Mutation kMutations[] = {Mutation::Negate,  Mutation::ToTaut,   Mutation::Retarget,
                                          Mutation::Forward, Mutation::BumpInst, Mutation::DuplicateLabel,
                                          Mutation::SideCondition};

inline Formula negated(const Formula& f) {
  if (auto* p = std::get_if<FormPtr>(&f)) return gl::neg(*p);
  return flc_negate(std::get<FlcPtr>(f));
}

inline Formula normal(const Formula& f) {
  if (auto* p = std::get_if<FormPtr>(&f)) return normal_form(*p);
  return f;
}

// Applies m to line k; false when it does not apply there.
inline bool mutate(ProofScript& s, std::size_t k, Mutation m, Rng& rng) {
  ProofLine& l = s.lines[k];
  switch (m) {
    case Mutation::Negate: l.formula = negated(l.formula); return true;
    case Mutation::ToTaut:
      if (l.schema == SchemaId::Taut || taut_check(l.formula)) return false;
      l.schema = SchemaId::Taut;
      l.premises.clear();
      l.inst.clear();
      return true;
    case Mutation::Retarget: {
      if (l.premises.empty()) return false;
      std::size_t which = pick(rng, l.premises.size());
      Formula old;
      for (std::size_t j = 0; j < k; ++j)
        if (s.lines[j].label == l.premises[which]) old = normal(s.lines[j].formula);
      std::vector<std::size_t> cands;
      for (std::size_t j = 0; j < k; ++j)
        if (!equal(normal(s.lines[j].formula), old)) cands.push_back(s.lines[j].label);
      if (cands.empty()) return false;
      l.premises[which] = cands[pick(rng, cands.size())];
      return true;
    }
    case Mutation::Forward:
      if (l.premises.empty()) return false;
      l.premises[pick(rng, l.premises.size())] = l.label;
      return true;
    case Mutation::BumpInst:
      for (auto& [key, v] : l.inst) {
        if (v.sort == MetaSort::Form && v.form) {
          v.form = gl::neg(v.form);
          return true;
        }
        if (v.sort == MetaSort::Flc && v.flc && free_vars(v.flc).empty()) {
          v.flc = flc::land(v.flc, flc::prop("Zq"));
          return true;
        }
      }
      return false;
    case Mutation::DuplicateLabel:
      if (k == 0) return false;
      l.label = s.lines[k - 1].label;
      return true;
    case Mutation::SideCondition: {
      // The dagger forbids the sabotaged atom in the context; the branch
      // condition fixes the order inside a trap block.
      if ((l.schema == SchemaId::SAsab || l.schema == SchemaId::SDsab) && l.inst.count("a") && l.inst.count("alpha")) {
        auto& alpha = l.inst["alpha"].game;
        alpha = gl::seq(gl::atom(l.inst["a"].name), alpha);
      } else if (l.schema == SchemaId::SBranch && l.inst.count("betas")) {
        bool swapped = false;
        for (auto& b : l.inst["betas"].games)
          if (b && b->kind == GameKind::Seq) {
            b = gl::seq(b->right, b->left);
            swapped = true;
          }
        if (!swapped) return false;
      } else {
        return false;
      }
      return check_side_condition(l.schema, l.inst).has_value();
    }
  }
  return false;
}

}  // namespace glwb::testing
