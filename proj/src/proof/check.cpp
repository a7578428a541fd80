#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <string>

#include "glwb/error.hpp"
#include "glwb/proof.hpp"
#include "glwb/syntax.hpp"

namespace glwb {

const char* calculus_name(Calculus c) {
  switch (c) {
    case Calculus::mLmu: return "mLmu";
    case Calculus::Kozen: return "Kozen";
    case Calculus::GL: return "GL";
    case Calculus::GLA: return "GL+A";
    case Calculus::rlGL: return "rlGL";
    case Calculus::rlGLG: return "rlGL+G";
    case Calculus::GLs: return "GLs";
    case Calculus::GLsG: return "GLs+G";
  }
  return "?";
}

bool parse_calculus(std::string_view s, Calculus& out) {
  auto lower = [](std::string v) {
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    return v;
  };
  for (Calculus c : {Calculus::mLmu, Calculus::Kozen, Calculus::GL, Calculus::GLA, Calculus::rlGL, Calculus::rlGLG,
                     Calculus::GLs, Calculus::GLsG})
    if (lower(calculus_name(c)) == lower(std::string(s))) {
      out = c;
      return true;
    }
  return false;
}

Universe calculus_universe(Calculus c) {
  return c == Calculus::mLmu || c == Calculus::Kozen ? Universe::Modal : Universe::Game;
}

bool admits(Calculus c, SchemaId id, const CalculusOptions& o) {
  using S = SchemaId;
  static const std::set<S> modal = {S::Taut, S::fp, S::alpha, S::MP, S::MuRule, S::Mon_a};
  static const std::set<S> kripke = {S::BoxAnd, S::K, S::BoxTop};
  static const std::set<S> game = {S::Taut, S::GNot, S::GTest, S::GChoice, S::GComp, S::MP, S::GMon};
  static const std::set<S> rl = {S::GFp, S::GAlpha, S::GMuRule};
  static const std::set<S> star = {S::GStarFp, S::GStarMu};
  static const std::set<S> sab = {S::SAsab, S::SDsab, S::SBranch, S::SSabP, S::SSabRem, S::SSabNotYet};
  const bool g_ext = c == Calculus::Kozen || c == Calculus::rlGLG || c == Calculus::GLsG;
  if (g_ext && kripke.count(id)) return true;
  switch (c) {
    case Calculus::mLmu:
    case Calculus::Kozen: return modal.count(id) > 0;
    case Calculus::rlGL:
    case Calculus::rlGLG: return game.count(id) || rl.count(id);
    case Calculus::GL: return game.count(id) || star.count(id);
    case Calculus::GLA: return game.count(id) || star.count(id) || id == S::AFrak;
    case Calculus::GLs:
    case Calculus::GLsG: return game.count(id) || star.count(id) || sab.count(id) || (o.gls_alpha && id == S::GAlpha);
  }
  return false;
}

bool in_language(Calculus c, const Formula& f) {
  if (calculus_universe(c) == Universe::Modal) {
    auto* p = std::get_if<FlcPtr>(&f);
    return p && check_fragment(*p, Fragment::Lmu);
  }
  auto* p = std::get_if<FormPtr>(&f);
  if (!p) return false;
  switch (c) {
    case Calculus::GL:
    case Calculus::GLA: return check_fragment(*p, Fragment::GL);
    case Calculus::rlGL:
    case Calculus::rlGLG: return check_fragment(*p, Fragment::rlGL);
    default: return check_fragment(*p, Fragment::GLs);
  }
}

namespace {

Formula normalized(const Formula& f) {
  if (auto* p = std::get_if<FormPtr>(&f)) return normal_form(*p);
  return f;
}

std::string check_line(const ProofScript& s, std::size_t idx, const std::map<std::size_t, std::size_t>& seen) {
  const ProofLine& l = s.lines[idx];
  const Universe u = calculus_universe(s.calculus);
  if (!in_language(s.calculus, l.formula))
    return std::string("formula is outside the ") + calculus_name(s.calculus) + " language";
  if (!admits(s.calculus, l.schema, s.options))
    return std::string(schema_name(l.schema)) + " is not part of the " + calculus_name(s.calculus) + " calculus";
  std::vector<Formula> prem;
  for (std::size_t p : l.premises) {
    auto it = seen.find(p);
    if (it == seen.end()) return "premise " + std::to_string(p) + " does not refer to an earlier line";
    prem.push_back(normalized(s.lines[it->second].formula));
  }
  if (!is_rule(l.schema) && !l.premises.empty()) return std::string("axiom ") + schema_name(l.schema) + " takes no premises";

  Instantiation inst = l.inst;
  auto as_meta = [&](const Formula& f) {
    if (auto* p = std::get_if<FormPtr>(&f)) return meta::form(*p);
    return meta::flc(std::get<FlcPtr>(f));
  };
  if (l.schema == SchemaId::Taut && !inst.count("phi")) inst["phi"] = as_meta(l.formula);
  if (l.schema == SchemaId::MP && inst.empty() && !prem.empty()) {
    inst["phi"] = as_meta(prem[0]);
    inst["psi"] = as_meta(l.formula);
  }
  if (l.schema == SchemaId::AFrak) {
    if (!inst.count("traps")) inst["traps"] = meta::atom_map(s.options.afrak.trap_names);
    auto b = inst.find("base");
    if (b != inst.end() && b->second.sort == MetaSort::SchemaRef && !s.options.afrak.bases.count(b->second.schema))
      return std::string("AFrak base ") + schema_name(b->second.schema) + " is not in the configured set";
  }

  SchemaInstance si;
  try {
    si = instantiate_schema(l.schema, inst, u);
    if (auto v = check_side_condition(l.schema, inst, u)) return "side condition: " + *v;
  } catch (const Error& e) {
    return e.what();
  }
  if (si.premises.size() != prem.size())
    return std::string(schema_name(l.schema)) + " needs " + std::to_string(si.premises.size()) + " premises, got " +
           std::to_string(prem.size());
  for (std::size_t k = 0; k < prem.size(); ++k)
    if (!equal(si.premises[k], prem[k]))
      return "premise " + std::to_string(l.premises[k]) + " is not " + print(si.premises[k]);
  if (!equal(si.conclusion, normalized(l.formula))) return "line does not match the instance " + print(si.conclusion);
  return {};
}

}  // namespace

Verdict check_proof(const ProofScript& s) {
  std::map<std::size_t, std::size_t> seen;  // label -> index
  for (std::size_t i = 0; i < s.lines.size(); ++i) {
    const ProofLine& l = s.lines[i];
    std::string reason;
    if (seen.count(l.label)) {
      reason = "label " + std::to_string(l.label) + " is used twice";
    } else {
      try {
        reason = check_line(s, i, seen);
      } catch (const std::exception& e) {
        reason = e.what();
      }
    }
    if (!reason.empty()) return {false, l.label, l.source_line, reason};
    seen.emplace(l.label, i);
  }
  return {};
}

}  // namespace glwb
