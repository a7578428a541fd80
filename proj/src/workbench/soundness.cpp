#include "glwb/soundness.hpp"

#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "glwb/semantics.hpp"
#include "glwb/syntax.hpp"
#include "glwb/workbench.hpp"

namespace glwb {
namespace {

const std::vector<std::string> kAlphabet = {"a", "b", "c", "d"};
const Fragment kGls = Fragment::GLs;

std::vector<FiniteStructure> fuzz_structures(int count, std::uint64_t seed, bool kripke_only) {
  Rng rng(seed);
  std::vector<FiniteStructure> out;
  for (int i = 0; i < count; ++i) {
    StructureConfig c;
    c.states = 1 + static_cast<int>(pick(rng, 4));
    c.kind = (i % 2 && !kripke_only) ? StructureKind::Neighbourhood : StructureKind::Kripke;
    c.atoms = kAlphabet;
    c.props = {"P", "Q"};
    out.push_back(random_structure(c, rng));
  }
  return out;
}

enum class Sem { Gls, Rgl, Flc };

bool valid(const Formula& f, const FiniteStructure& s, Sem sem) {
  const std::uint32_t full = s.full().bits;
  if (sem == Sem::Flc) return flc_truth(std::get<FlcPtr>(f), s).bits == full;
  const FormPtr& g = std::get<FormPtr>(f);
  if (sem == Sem::Rgl) return eval_rgl_formula(g, s).bits == full;
  return eval_gls_formula(g, s, kAlphabet)[0] == full;
}

struct Gen {
  Rng& rng;
  int size = 6;

  FormulaConfig cfg(std::vector<std::string> atoms, std::vector<std::string> sab) const {
    FormulaConfig c;
    c.max_nodes = size;
    c.atoms = std::move(atoms);
    c.sabotage = std::move(sab);
    c.props = {"P", "Q"};
    c.max_fixpoints = 2;
    return c;
  }
  GamePtr game(Fragment tag, std::vector<std::string> atoms = kAlphabet, std::vector<std::string> sab = kAlphabet) {
    return random_game(tag, cfg(std::move(atoms), std::move(sab)), rng);
  }
  FormPtr form(Fragment tag, std::vector<std::string> atoms = kAlphabet, std::vector<std::string> sab = kAlphabet) {
    return random_formula(tag, cfg(std::move(atoms), std::move(sab)), rng);
  }
  const std::string& any(const std::vector<std::string>& v) { return v[pick(rng, v.size())]; }

  // A game over `closed` pieces with the variables at right-linear positions,
  // or anywhere outside tests when `anywhere` is set.
  GamePtr holes(int k, const std::vector<std::string>& vars, const std::function<GamePtr()>& closed, bool anywhere) {
    if (k <= 1 || coin(rng, 0.25)) return coin(rng, 0.6) ? gl::var(any(vars)) : closed();
    int ops = anywhere ? 7 : 3;
    switch (pick(rng, ops)) {
      case 0: return gl::choice(holes(k / 2, vars, closed, anywhere), holes(k / 2, vars, closed, anywhere));
      case 1: return gl::dchoice(holes(k / 2, vars, closed, anywhere), holes(k / 2, vars, closed, anywhere));
      case 2: return gl::seq(closed(), holes(k - 1, vars, closed, anywhere));
      case 3: return gl::seq(holes(k / 2, vars, closed, anywhere), holes(k / 2, vars, closed, anywhere));
      case 4: return gl::star(holes(k - 1, vars, closed, anywhere));
      case 5: return gl::dstar(holes(k - 1, vars, closed, anywhere));
      default: return gl::seq(holes(k - 1, vars, closed, anywhere), closed());
    }
  }

  GamePtr trap(const std::string& a) { return coin(rng, 0.5) ? gl::trap_a(a) : gl::trap_d(a); }

  // Lmu formula with x free, positively.
  FlcPtr flc_holes(int k, const std::string& x) {
    FormulaConfig c = cfg({"a", "b"}, {});
    c.max_nodes = 4;
    if (k <= 1 || coin(rng, 0.2)) return coin(rng, 0.5) ? flc::var(x) : random_flc(Fragment::Lmu, c, rng);
    switch (pick(rng, 5)) {
      case 0: return flc::lor(flc_holes(k / 2, x), flc_holes(k / 2, x));
      case 1: return flc::land(flc_holes(k / 2, x), flc_holes(k / 2, x));
      case 2: return flc::dia(any({"a", "b"}), flc_holes(k - 1, x));
      case 3: return flc::box(any({"a", "b"}), flc_holes(k - 1, x));
      default: {
        FlcPtr body = flc::lor(flc::var("z"), flc_holes(k - 1, x));
        return coin(rng, 0.5) ? flc::mu("z", flc::dia("a", body)) : flc::nu("z", flc::box("b", body));
      }
    }
  }
};

using InstGen = std::function<Instantiation(Gen&)>;
// Adjusts a structure so that rule premises can hold (a witness proposition
// grown to a prefixpoint).
using Prepare = std::function<void(const Instantiation&, FiniteStructure&)>;
// The formula whose validity is checked, when it is not the conclusion.
using Target = std::function<Formula(const Instantiation&, const SchemaInstance&)>;

struct Entry {
  SoundnessCase info;
  InstGen gen;
  Sem sem = Sem::Gls;
  std::uint64_t seed = 0;
  bool kripke_only = false;
  Prepare prepare;
  Universe universe = Universe::Game;
  bool ignore_side = false;
  Target target;
};

void prefixpoint(FiniteStructure& s, const std::string& p, const std::function<StateSet(const FiniteStructure&)>& step) {
  for (;;) {
    StateSet cur = s.prop(p);
    StateSet next = cur | step(s);
    if (next == cur) return;
    s.set_prop(p, next);
  }
}

StateSet all_contexts(const FormPtr& f, const FiniteStructure& s) {
  CSet cs = eval_gls_formula(f, s, kAlphabet);
  std::uint32_t u = 0;
  for (auto c : cs) u |= c;
  return {u};
}

// ---- generators ----

Instantiation taut_gen(Gen& g) {
  FormPtr a = g.form(kGls), b = g.form(kGls);
  FormPtr f;
  switch (pick(g.rng, 4)) {
    case 0: f = gl::lor(a, complement(a)); break;
    case 1: f = gl::implies(gl::land(a, b), gl::lor(b, g.form(kGls))); break;
    case 2: f = gl::implies(gl::implies(a, b), gl::implies(complement(b), complement(a))); break;
    default: f = gl::lor(gl::land(a, b), gl::lor(complement(a), complement(b)));
  }
  return {{"phi", meta::form(f)}};
}

Instantiation flc_taut_gen(Gen& g) {
  FormulaConfig c = g.cfg({"a", "b"}, {});
  FlcPtr a = random_flc(Fragment::Lmu, c, g.rng), b = random_flc(Fragment::Lmu, c, g.rng);
  FlcPtr f = pick(g.rng, 2) ? flc::lor(a, flc_negate(a)) : flc::lor(flc_negate(flc::land(a, b)), a);
  return {{"phi", meta::flc(f)}};
}

InstGen game_keys(std::vector<std::string> keys) {
  return [keys](Gen& g) {
    Instantiation full{{"alpha", meta::game(g.game(kGls))},
                       {"beta", meta::game(g.game(kGls))},
                       {"phi", meta::form(g.form(kGls))},
                       {"psi", meta::form(g.form(kGls))}};
    Instantiation out;
    for (const auto& k : keys) out[k] = full[k];
    return out;
  };
}

// Premises valid by construction.
Instantiation mon_gen(Gen& g) {
  FormPtr phi = g.form(kGls), psi = g.form(kGls);
  if (coin(g.rng, 0.5))
    psi = gl::lor(phi, psi);
  else
    phi = gl::land(psi, phi);
  return {{"alpha", meta::game(g.game(kGls))}, {"phi", meta::form(phi)}, {"psi", meta::form(psi)}};
}

Instantiation star_mu_gen(Gen& g) {
  return {{"alpha", meta::game(g.game(kGls))}, {"rho", meta::form(g.form(kGls))}, {"psi", meta::form(gl::prop("R"))}};
}

void star_mu_grow(const Instantiation& in, FiniteStructure& s) {
  FormPtr step = gl::lor(in.at("rho").form, gl::dia(in.at("alpha").game, gl::prop("R")));
  prefixpoint(s, "R", [&](const FiniteStructure& st) { return all_contexts(step, st); });
}

Instantiation mp_gen(Gen& g) {
  FormPtr phi = g.form(kGls);
  return {{"phi", meta::form(gl::lor(phi, complement(phi)))}, {"psi", meta::form(g.form(kGls))}};
}

GamePtr rl_context(Gen& g) {
  return g.holes(5, {"h"}, [&] { return g.game(Fragment::rlGL, {"a", "b"}, {}); }, false);
}

Instantiation gfp_gen(Gen& g) {
  return {{"x", meta::var("h")},
          {"alpha", meta::game(rl_context(g))},
          {"phi", meta::form(g.form(Fragment::rlGL, {"a", "b"}, {}))}};
}

Instantiation galpha_gen(Gen& g) {
  Instantiation in = gfp_gen(g);
  in["sigma"] = meta::binder(coin(g.rng, 0.5));
  in["y"] = meta::var("y9");
  return in;
}

// beta = ?true and psi = R, with R grown to a prefixpoint of the premise.
Instantiation gmu_gen(Gen& g) {
  Instantiation in = gfp_gen(g);
  in["beta"] = meta::game(gl::test(gl::tt()));
  in["psi"] = meta::form(gl::prop("R"));
  return in;
}

void gmu_grow(const Instantiation& in, FiniteStructure& s) {
  GamePtr stop = gl::seq(gl::test(gl::prop("R")), gl::dtest(gl::ff()));
  FormPtr step = gl::dia(substitute(in.at("alpha").game, GameSubst{{"h", stop}}), in.at("phi").form);
  prefixpoint(s, "R", [&](const FiniteStructure& st) { return eval_rgl_formula(step, st); });
}

Instantiation gmu_free_gen(Gen& g) {
  Instantiation in = gfp_gen(g);
  in["beta"] = meta::game(g.game(Fragment::rlGL, {"a", "b"}, {}));
  in["psi"] = meta::form(g.form(Fragment::rlGL, {"a", "b"}, {}));
  return in;
}

Instantiation fp_gen(Gen& g) { return {{"x", meta::var("x")}, {"phi", meta::flc(g.flc_holes(5, "x"))}}; }

Instantiation alpha_gen(Gen& g) {
  Instantiation in = fp_gen(g);
  in["sigma"] = meta::binder(coin(g.rng, 0.5));
  in["y"] = meta::var("y9");
  return in;
}

Instantiation mu_gen(Gen& g) {
  Instantiation in = fp_gen(g);
  in["psi"] = meta::flc(flc::prop("R"));
  return in;
}

void mu_grow(const Instantiation& in, FiniteStructure& s) {
  FlcPtr step = substitute(in.at("phi").flc, FlcSubst{{"x", flc::prop("R")}});
  prefixpoint(s, "R", [&](const FiniteStructure& st) { return flc_truth(step, st); });
}

Instantiation mon_a_gen(Gen& g) {
  FormulaConfig c = g.cfg({"a", "b"}, {});
  FlcPtr phi = random_flc(Fragment::Lmu, c, g.rng);
  return {{"a", meta::atom("a")},
          {"phi", meta::flc(phi)},
          {"psi", meta::flc(flc::lor(phi, random_flc(Fragment::Lmu, c, g.rng)))}};
}

Instantiation pair_gen(Gen& g) {
  return {{"a", meta::atom(g.any({"a", "b"}))},
          {"phi", meta::form(g.form(Fragment::GL, {"a", "b"}, {}))},
          {"psi", meta::form(g.form(Fragment::GL, {"a", "b"}, {}))}};
}

Instantiation flc_pair_gen(Gen& g) {
  FormulaConfig c = g.cfg({"a", "b"}, {});
  return {{"a", meta::atom(g.any({"a", "b"}))},
          {"phi", meta::flc(random_flc(Fragment::Lmu, c, g.rng))},
          {"psi", meta::flc(random_flc(Fragment::Lmu, c, g.rng))}};
}

Instantiation top_gen(Gen& g) { return {{"a", meta::atom(g.any({"a", "b"}))}}; }

// SAsab/SDsab over atom a. The context's closed pieces avoid a; the
// substituted pieces are drawn from `pieces`.
struct SabPools {
  std::vector<std::string> ctx_atoms, ctx_traps, phi_traps, piece_atoms, piece_traps;
};

Instantiation sab_gen(Gen& g, const SabPools& p) {
  std::vector<std::string> x, y, z;
  for (const char* v : {"h1", "h2", "h3"}) {
    switch (pick(g.rng, 4)) {
      case 0: x.push_back(v); break;
      case 1: y.push_back(v); break;
      case 2: z.push_back(v); break;
      default: break;
    }
  }
  if (x.empty() && y.empty() && z.empty()) x.push_back("h1");
  std::vector<std::string> vars = x;
  vars.insert(vars.end(), y.begin(), y.end());
  vars.insert(vars.end(), z.begin(), z.end());
  auto piece = [&] { return coin(g.rng, 0.3) ? GamePtr{} : g.game(kGls, p.piece_atoms, p.piece_traps); };
  auto pieces = [&](std::size_t n) {
    std::vector<GamePtr> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(piece());
    return v;
  };
  Instantiation in{{"a", meta::atom("a")},
                   {"x", meta::vars(x)},
                   {"y", meta::vars(y)},
                   {"z", meta::vars(z)},
                   {"alpha", meta::game(g.holes(6, vars, [&] { return g.game(kGls, p.ctx_atoms, p.ctx_traps); }, false))},
                   {"phi", meta::form(g.form(kGls, p.ctx_atoms, p.phi_traps))}};
  in["beta"] = meta::games(pieces(x.size()));
  in["gamma"] = meta::games(pieces(y.size()));
  std::vector<GamePtr> delta;
  for (std::size_t i = 0; i < z.size(); ++i) delta.push_back(g.game(kGls, p.piece_atoms, p.piece_traps));
  in["delta"] = meta::games(delta);
  return in;
}

Instantiation sab_default(Gen& g) { return sab_gen(g, {{"b", "c"}, {"b", "c"}, kAlphabet, kAlphabet, kAlphabet}); }

Instantiation sabp_gen(Gen& g) {
  return {{"a", meta::atom("a")},
          {"x", meta::var("h")},
          {"alpha", meta::game(g.holes(6, {"h"}, [&] { return g.game(kGls); }, true))},
          {"phi", meta::form(g.form(kGls))}};
}

Instantiation rem_gen(Gen& g, const std::vector<std::string>& others, const std::vector<std::string>& traps) {
  std::vector<std::string> x, y;
  for (const char* v : {"h1", "h2"}) (coin(g.rng, 0.5) ? x : y).push_back(v);
  std::vector<GamePtr> eta, delta;
  for (std::size_t i = 0; i < x.size(); ++i) eta.push_back(g.trap("a"));
  for (std::size_t i = 0; i < y.size(); ++i) delta.push_back(g.trap("a"));
  Instantiation in{{"a", meta::atom("a")},
                   {"x", meta::vars(x)},
                   {"y", meta::vars(y)},
                   {"eta", meta::games(eta)},
                   {"delta", meta::games(delta)},
                   {"alpha", meta::game(g.holes(6, {"h1", "h2"}, [&] { return g.game(kGls, others, traps); }, true))},
                   {"phi", meta::form(g.form(kGls, others, traps))}};
  if (coin(g.rng, 0.7)) in["beta"] = meta::game(g.game(kGls, kAlphabet, traps));
  return in;
}

Instantiation not_yet_gen(Gen& g) {
  // No ~a, b or b^d in alpha or phi; a, a^d, ~'a and the traps of b are allowed.
  auto piece = [&] {
    switch (pick(g.rng, 5)) {
      case 0: return gl::trap_d("a");
      case 1: return g.trap("b");
      default: return g.game(kGls, {"a", "c"}, {"c"});
    }
  };
  FormPtr phi = g.form(kGls, {"a", "c"}, {"c"});
  if (coin(g.rng, 0.3)) phi = gl::dia(piece(), phi);
  Instantiation in{{"a", meta::atom("a")},
                   {"b", meta::atom("b")},
                   {"x", meta::var("h1")},
                   {"y", meta::var("h2")},
                   {"eta", meta::game(g.trap("b"))},
                   {"alpha", meta::game(g.holes(6, {"h1", "h2"}, piece, true))},
                   {"phi", meta::form(phi)}};
  if (coin(g.rng, 0.7)) in["beta"] = meta::game(g.game(kGls));
  return in;
}

Instantiation branch_gen(Gen& g) {
  std::vector<std::string> atoms = coin(g.rng, 0.5) ? std::vector<std::string>{"a"} : std::vector<std::string>{"a", "b"};
  std::vector<GamePtr> betas;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    std::vector<GamePtr> chain;
    if (coin(g.rng, 0.5)) chain.push_back(gl::trap_a("d"));
    if (coin(g.rng, 0.5)) chain.push_back(gl::trap_d("d"));
    betas.push_back(chain.empty() ? GamePtr{} : gl::seq_all(chain));
  }
  auto piece = [&] { return g.game(kGls, {"a", "b", "c"}, {"c"}); };
  return {{"atoms", meta::atoms(atoms)},
          {"i", meta::index(1 + pick(g.rng, atoms.size()))},
          {"w", meta::var("h")},
          {"alpha", meta::game(g.holes(6, {"h"}, piece, true))},
          {"betas", meta::games(betas)},
          {"beta", meta::game(g.game(kGls, kAlphabet, {"c"}))},
          {"phi", meta::form(g.form(kGls))}};
}

// Base instances over the sabotaged atom a, whose traps are renamed to the
// fresh atom d. The remaining atoms b and c are played only, so the image is GL.
Instantiation afrak_gen(Gen& g) {
  Instantiation in;
  SchemaId base;
  switch (pick(g.rng, 3)) {
    case 0:
      base = SchemaId::SAsab;
      in = sab_gen(g, {{"b", "c"}, {}, {}, {"a", "b", "c"}, {"a"}});
      break;
    case 1:
      base = SchemaId::SDsab;
      in = sab_gen(g, {{"b", "c"}, {}, {}, {"a", "b", "c"}, {"a"}});
      break;
    default:
      base = SchemaId::SSabRem;
      in = rem_gen(g, {"b", "c"}, {});
      break;
  }
  in["base"] = meta::schema(base);
  in["traps"] = meta::atom_map({{"a", "d"}});
  return in;
}

// The image is a GL axiom about the fresh atom; what must hold semantically is
// the sabotage instance it was obtained from.
Formula afrak_preimage(const Instantiation& in, const SchemaInstance&) {
  Instantiation base = in;
  base.erase("base");
  base.erase("traps");
  return instantiate_schema(in.at("base").schema, base).conclusion;
}

// ---- negative controls: a side condition dropped ----

Instantiation sab_plays_a(Gen& g) {
  return {{"a", meta::atom("a")},
          {"x", meta::vars({"h"})},
          {"beta", meta::games({nullptr})},
          {"alpha", meta::game(g.holes(6, {"h"}, [&] { return g.game(kGls, {"a", "b"}, {}); }, false))},
          {"phi", meta::form(g.form(kGls, {"b"}))}};
}

Instantiation sab_under_loop(Gen& g) {
  return {{"a", meta::atom("a")},
          {"x", meta::vars({"h"})},
          {"beta", meta::games({g.game(kGls)})},
          {"alpha", meta::game(gl::star(g.holes(4, {"h"}, [&] { return g.game(kGls, {"b"}, {}); }, true)))},
          {"phi", meta::form(g.form(kGls, {"b"}))}};
}

Instantiation rem_plays_a(Gen& g) {
  return {{"a", meta::atom("a")},
          {"x", meta::vars({"h"})},
          {"eta", meta::games({g.trap("a")})},
          {"alpha", meta::game(g.holes(6, {"h"}, [&] { return g.game(kGls, {"a", "b"}, {}); }, true))},
          {"phi", meta::form(g.form(kGls, {"a", "b"}, {}))}};
}

Instantiation not_yet_plays_b(Gen& g) {
  return {{"a", meta::atom("a")},
          {"b", meta::atom("b")},
          {"x", meta::var("h1")},
          {"y", meta::var("h2")},
          {"eta", meta::game(g.trap("b"))},
          {"alpha", meta::game(g.holes(6, {"h1", "h2"}, [&] { return g.game(kGls, {"a", "b"}, {}); }, true))},
          {"phi", meta::form(g.form(kGls, {"a", "b"}, {}))}};
}

Instantiation branch_stray_trap(Gen& g) {
  auto piece = [&] { return coin(g.rng, 0.3) ? g.trap("a") : g.game(kGls, {"a", "b"}, {}); };
  return {{"atoms", meta::atoms({"a"})},
          {"i", meta::index(1)},
          {"w", meta::var("h")},
          {"alpha", meta::game(g.holes(6, {"h"}, piece, true))},
          {"betas", meta::games({nullptr})},
          {"beta", meta::game(g.game(kGls, {"a", "b"}, {}))},
          {"phi", meta::form(g.form(kGls, {"a", "b"}, {}))}};
}

std::vector<Entry> entries() {
  using S = SchemaId;
  const Universe M = Universe::Modal;
  const auto sound = SoundnessExpect::Sound;
  const auto refuted = SoundnessExpect::Refuted;
  std::vector<Entry> v;
  auto add = [&](std::string name, S id, InstGen gen, Sem sem, std::uint64_t seed) -> Entry& {
    Entry& e = v.emplace_back();
    e.info = {std::move(name), id, sound, false};
    e.gen = std::move(gen);
    e.sem = sem;
    e.seed = seed;
    return e;
  };
  add("Taut/game", S::Taut, taut_gen, Sem::Gls, 1);
  add("Taut/modal", S::Taut, flc_taut_gen, Sem::Flc, 2).universe = M;
  add("GNot", S::GNot, game_keys({"alpha", "phi"}), Sem::Gls, 10);
  add("GTest", S::GTest, game_keys({"phi", "psi"}), Sem::Gls, 11);
  add("GChoice", S::GChoice, game_keys({"alpha", "beta", "phi"}), Sem::Gls, 12);
  add("GComp", S::GComp, game_keys({"alpha", "beta", "phi"}), Sem::Gls, 13);
  add("GStarFp", S::GStarFp, game_keys({"alpha", "phi"}), Sem::Gls, 14);
  add("GMon", S::GMon, mon_gen, Sem::Gls, 20).info.require_nonvacuous = true;
  {
    Entry& e = add("GStarMu", S::GStarMu, star_mu_gen, Sem::Gls, 21);
    e.prepare = star_mu_grow;
    e.info.require_nonvacuous = true;
  }
  add("MP", S::MP, mp_gen, Sem::Gls, 22);
  add("GFp", S::GFp, gfp_gen, Sem::Rgl, 30);
  add("GAlpha", S::GAlpha, galpha_gen, Sem::Rgl, 31);
  {
    Entry& e = add("GMuRule/prefixpoint", S::GMuRule, gmu_gen, Sem::Rgl, 32);
    e.prepare = gmu_grow;
    e.info.require_nonvacuous = true;
  }
  add("GMuRule/free", S::GMuRule, gmu_free_gen, Sem::Rgl, 33);
  add("fp", S::fp, fp_gen, Sem::Flc, 40).universe = M;
  add("alpha", S::alpha, alpha_gen, Sem::Flc, 41).universe = M;
  {
    Entry& e = add("MuRule", S::MuRule, mu_gen, Sem::Flc, 42);
    e.universe = M;
    e.prepare = mu_grow;
    e.info.require_nonvacuous = true;
  }
  {
    Entry& e = add("Mon_a", S::Mon_a, mon_a_gen, Sem::Flc, 43);
    e.universe = M;
    e.info.require_nonvacuous = true;
  }
  add("BoxAnd/game", S::BoxAnd, pair_gen, Sem::Rgl, 50).kripke_only = true;
  add("K/game", S::K, pair_gen, Sem::Rgl, 50).kripke_only = true;
  {
    Entry& e = add("BoxAnd/modal", S::BoxAnd, flc_pair_gen, Sem::Flc, 51);
    e.kripke_only = true;
    e.universe = M;
  }
  {
    Entry& e = add("K/modal", S::K, flc_pair_gen, Sem::Flc, 51);
    e.kripke_only = true;
    e.universe = M;
  }
  add("BoxTop/game", S::BoxTop, top_gen, Sem::Rgl, 52).kripke_only = true;
  {
    Entry& e = add("BoxTop/modal", S::BoxTop, top_gen, Sem::Flc, 53);
    e.kripke_only = true;
    e.universe = M;
  }
  add("BoxAnd/neighbourhood", S::BoxAnd, pair_gen, Sem::Rgl, 54).info.expect = refuted;
  add("SAsab", S::SAsab, sab_default, Sem::Gls, 60);
  add("SDsab", S::SDsab, sab_default, Sem::Gls, 61);
  add("SSabP", S::SSabP, sabp_gen, Sem::Gls, 62);
  add("SSabRem", S::SSabRem, [](Gen& g) { return rem_gen(g, {"b", "c"}, {"b", "c"}); }, Sem::Gls, 63);
  add("SSabNotYet", S::SSabNotYet, not_yet_gen, Sem::Gls, 64);
  add("SBranch", S::SBranch, branch_gen, Sem::Gls, 65);
  add("AFrak", S::AFrak, afrak_gen, Sem::Gls, 66).target = afrak_preimage;

  auto control = [&](std::string name, S id, InstGen gen, std::uint64_t seed) {
    Entry& e = add(std::move(name), id, std::move(gen), Sem::Gls, seed);
    e.ignore_side = true;
    e.info.expect = refuted;
  };
  control("SAsab/without-dagger", S::SAsab, sab_plays_a, 70);
  control("SAsab/under-loop", S::SAsab, sab_under_loop, 71);
  control("SSabRem/played", S::SSabRem, rem_plays_a, 72);
  control("SSabNotYet/played", S::SSabNotYet, not_yet_plays_b, 73);
  control("SBranch/stray-trap", S::SBranch, branch_stray_trap, 74);
  return v;
}

std::string describe(const SoundnessCase& c, const Formula& f, const FiniteStructure& s) {
  std::ostringstream o;
  o << c.name << ": " << print(f) << "\n" << write_structure(s);
  return o.str();
}

}  // namespace

bool SoundnessTally::passed() const {
  if (instances < wanted) return false;
  if (expect == SoundnessExpect::Refuted) return failures > 0;
  if (require_nonvacuous && nonvacuous < instances) return false;
  return failures == 0;
}

std::vector<SoundnessCase> soundness_cases() {
  std::vector<SoundnessCase> out;
  for (const auto& e : entries()) out.push_back(e.info);
  return out;
}

SoundnessTally run_soundness_case(std::size_t index, const SoundnessConfig& c) {
  const std::vector<Entry> all = entries();
  const Entry& e = all.at(index);
  const std::uint64_t seed = e.seed + c.seed * 1000003;
  Rng rng(seed);
  Gen g{rng, c.formula_nodes};
  const auto structs = fuzz_structures(c.structures, seed * 7 + 1, e.kripke_only);
  SoundnessTally t;
  t.name = e.info.name;
  t.id = e.info.id;
  t.expect = e.info.expect;
  t.require_nonvacuous = e.info.require_nonvacuous;
  t.wanted = c.instances;
  for (int tries = 0; t.instances < c.instances && tries < 20 * c.instances; ++tries) {
    Instantiation in = e.gen(g);
    if (!e.ignore_side && check_side_condition(e.info.id, in, e.universe)) {
      ++t.refused;
      continue;
    }
    ++t.instances;
    SchemaInstance si = instantiate_schema(e.info.id, in, e.universe);
    const Formula goal = e.target ? e.target(in, si) : si.conclusion;
    bool any_premise_held = false;
    for (FiniteStructure s : structs) {
      if (e.prepare) e.prepare(in, s);
      bool premises = true;
      for (const auto& p : si.premises) premises = premises && valid(p, s, e.sem);
      if (!premises) continue;
      any_premise_held = true;
      if (!valid(goal, s, e.sem)) {
        ++t.failures;
        if (t.witness.empty()) t.witness = describe(e.info, goal, s);
      }
    }
    t.nonvacuous += any_premise_held;
  }
  return t;
}

}  // namespace glwb
