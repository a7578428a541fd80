#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "glwb/error.hpp"
#include "glwb/proof.hpp"
#include "glwb/syntax.hpp"
#include "schema_util.hpp"

namespace glwb {
namespace {

using Violation = std::optional<std::string>;
using GamePred = std::function<bool(const Game&)>;

GamePtr find_game(const FormPtr& f, const GamePred& p);

// First subgame (preorder, tests included) satisfying p.
GamePtr find_game(const GamePtr& g, const GamePred& p) {
  if (!g) return nullptr;
  if (p(*g)) return g;
  if (g->system)
    for (const auto& b : g->system->bindings)
      if (auto r = find_game(b.second, p)) return r;
  if (auto r = find_game(g->form, p)) return r;
  if (auto r = find_game(g->left, p)) return r;
  return find_game(g->right, p);
}

GamePtr find_game(const FormPtr& f, const GamePred& p) {
  if (!f) return nullptr;
  if (auto r = find_game(f->game, p)) return r;
  if (auto r = find_game(f->left, p)) return r;
  return find_game(f->right, p);
}

GamePred named(std::initializer_list<GameKind> kinds, const std::string& a) {
  std::vector<GameKind> ks(kinds);
  return [ks, a](const Game& g) {
    for (GameKind k : ks)
      if (g.kind == k && g.name == a) return true;
    return false;
  };
}

const std::initializer_list<GameKind> kPlayed = {GameKind::Atom, GameKind::DualAtom};
const std::initializer_list<GameKind> kAnyUse = {GameKind::Atom, GameKind::DualAtom, GameKind::TrapA, GameKind::TrapD};

template <class T>
Violation absent(const std::string& tag, const T& where, const char* where_name, const GamePred& p) {
  if (auto g = find_game(where, p)) return tag + ": " + print(g) + " appears in " + where_name;
  return std::nullopt;
}

// Variables of xs occur in g only right-linearly: never left of ';', under a
// loop, or inside a test. Dualized occurrences are refused as well.
struct RightLinearOccurrence {
  const std::set<std::string>& xs;
  Violation hit;

  void form(const FormPtr& f) {
    if (!f || hit) return;
    if (f->game) in_test(f->game);
    form(f->left);
    form(f->right);
  }
  void in_test(const GamePtr& g) {
    if (!g || hit) return;
    if ((g->kind == GameKind::Var || g->kind == GameKind::DualVar) && xs.count(g->name)) {
      hit = g->name + " occurs inside a test in α";
      return;
    }
    if (g->system)
      for (const auto& b : g->system->bindings) in_test(b.second);
    form(g->form);
    in_test(g->left);
    in_test(g->right);
  }
  void game(const GamePtr& g, bool left, bool loop, bool dual) {
    if (!g || hit) return;
    switch (g->kind) {
      case GameKind::Var:
      case GameKind::DualVar:
        if (!xs.count(g->name)) return;
        if (left) hit = g->name + " occurs left of ';' in α";
        else if (loop) hit = g->name + " occurs inside a loop in α";
        else if (dual || g->kind == GameKind::DualVar) hit = g->name + " occurs dualized in α";
        return;
      case GameKind::Test:
      case GameKind::DTest: form(g->form); return;
      case GameKind::Seq:
        game(g->left, true, loop, dual);
        game(g->right, left, loop, dual);
        return;
      case GameKind::Choice:
      case GameKind::DChoice:
        game(g->left, left, loop, dual);
        game(g->right, left, loop, dual);
        return;
      case GameKind::Star:
      case GameKind::DStar:
      case GameKind::Rec:
      case GameKind::CoRec: game(g->left, left, true, dual); return;
      case GameKind::Dual: game(g->left, left, loop, !dual); return;
      case GameKind::System:
        for (const auto& b : g->system->bindings) game(b.second, left, true, dual);
        return;
      default: return;
    }
  }
};

Violation right_linear_vars(const GamePtr& alpha, const std::set<std::string>& xs) {
  RightLinearOccurrence r{xs, std::nullopt};
  r.game(alpha, false, false, false);
  if (r.hit) return "right-linearity: " + *r.hit;
  return std::nullopt;
}

void flatten_seq(const GamePtr& g, std::vector<GamePtr>& out) {
  if (g && g->kind == GameKind::Seq) {
    flatten_seq(g->left, out);
    flatten_seq(g->right, out);
  } else if (g) {
    out.push_back(g);
  }
}

bool is_trap(const GamePtr& g) { return g->kind == GameKind::TrapA || g->kind == GameKind::TrapD; }

// Condition of the branch axiom: traps of the listed atoms occur only as a
// whole block η;~a_i;β_i.
struct BranchShape {
  std::set<std::string> relevant;
  std::vector<std::vector<GamePtr>> blocks;
  Violation hit;

  bool block_at(const std::vector<GamePtr>& es, std::size_t p, std::size_t& len) const {
    for (const auto& b : blocks) {
      if (p + b.size() > es.size()) continue;
      bool ok = true;
      for (std::size_t k = 0; ok && k < b.size(); ++k) ok = equal(es[p + k], b[k]);
      if (ok) {
        len = b.size();
        return true;
      }
    }
    return false;
  }
  void form(const FormPtr& f) {
    if (!f || hit) return;
    if (f->game) game(f->game);
    form(f->left);
    form(f->right);
  }
  void game(const GamePtr& g) {
    if (!g || hit) return;
    if (g->kind == GameKind::Seq) {
      std::vector<GamePtr> es;
      flatten_seq(g, es);
      for (std::size_t p = 0; p < es.size() && !hit;) {
        std::size_t len = 0;
        if (is_trap(es[p]) && relevant.count(es[p]->name)) {
          if (!block_at(es, p, len)) hit = "‡: " + print(es[p]) + " appears outside a block η;~a_i;β_i";
          p += len;
        } else {
          game(es[p]);
          ++p;
        }
      }
      return;
    }
    if (is_trap(g) && relevant.count(g->name)) {
      hit = "‡: " + print(g) + " appears outside a block η;~a_i;β_i";
      return;
    }
    if (g->system)
      for (const auto& b : g->system->bindings) game(b.second);
    form(g->form);
    game(g->left);
    game(g->right);
  }
};

Violation branch_condition(const Instantiation& in) {
  const auto& as = detail::names_or_empty(in, "atoms");
  const auto& bs = detail::games_or_empty(in, "betas");
  BranchShape shape;
  std::vector<GamePtr> eta;
  for (const auto& a : as) {
    shape.relevant.insert(a);
    eta.push_back(gl::trap_d(a));
  }
  for (std::size_t i = 0; i < bs.size(); ++i) {
    std::vector<GamePtr> es;
    flatten_seq(bs[i], es);
    bool demon_part = false;
    for (const auto& e : es) {
      if (!is_trap(e) || (e->kind == GameKind::TrapA && demon_part))
        return "‡: β_" + std::to_string(i + 1) + " = " + print(bs[i]) + " is not of the form ~b1;..;~bj;~'bj+1;..;~'bm";
      demon_part = e->kind == GameKind::TrapD;
      shape.relevant.insert(e->name);
    }
    std::vector<GamePtr> block = eta;
    block.push_back(gl::trap_a(as[i]));
    block.insert(block.end(), es.begin(), es.end());
    shape.blocks.push_back(std::move(block));
  }
  shape.game(in.at("alpha").game);
  if (shape.hit) return *shape.hit + " in α";
  shape.game(in.at("beta").game);
  if (shape.hit) return *shape.hit + " in β";
  return std::nullopt;
}

Violation single_trap(const std::string& what, const GamePtr& g, const std::string& a) {
  if (g && is_trap(g) && g->name == a) return std::nullopt;
  return what + " = " + (g ? print(g) : std::string("_")) + " is not ~" + a + " or ~'" + a;
}

Violation game_side(SchemaId id, const Instantiation& in) {
  using detail::find;
  switch (id) {
    case SchemaId::Taut:
      if (!taut_check(in.at("phi").form)) return "not a propositional tautology";
      return std::nullopt;
    case SchemaId::GAlpha: {
      const std::string &x = in.at("x").name, &y = in.at("y").name;
      const GamePtr& al = in.at("alpha").game;
      if (x != y && (free_vars(al).count(y) || bound_vars(al).count(y))) return "freshness: " + y + " occurs in α";
      return std::nullopt;
    }
    case SchemaId::SAsab:
    case SchemaId::SDsab: {
      const std::string& a = in.at("a").name;
      const GamePtr& al = in.at("alpha").game;
      if (auto v = absent("†", al, "α", named(kAnyUse, a))) return v;
      if (auto v = absent("†", in.at("phi").form, "φ", named(kPlayed, a))) return v;
      std::set<std::string> xs;
      for (const char* k : {"x", "y", "z"})
        for (const auto& x : detail::names_or_empty(in, k)) xs.insert(x);
      return right_linear_vars(al, xs);
    }
    case SchemaId::SBranch: return branch_condition(in);
    case SchemaId::SSabRem: {
      const std::string& a = in.at("a").name;
      if (auto v = absent("SSabRem", in.at("alpha").game, "α", named(kPlayed, a))) return v;
      if (auto v = absent("SSabRem", in.at("phi").form, "φ", named(kPlayed, a))) return v;
      const auto& etas = detail::games_or_empty(in, "eta");
      const auto& deltas = detail::games_or_empty(in, "delta");
      for (std::size_t i = 0; i < etas.size(); ++i)
        if (auto v = single_trap("SSabRem: eta_" + std::to_string(i + 1), etas[i], a)) return v;
      for (std::size_t i = 0; i < deltas.size(); ++i)
        if (auto v = single_trap("SSabRem: delta_" + std::to_string(i + 1), deltas[i], a)) return v;
      return std::nullopt;
    }
    case SchemaId::SSabNotYet: {
      const std::string &a = in.at("a").name, &b = in.at("b").name;
      if (a == b) return "SSabNotYet: a and b must differ";
      if (auto v = single_trap("SSabNotYet: eta", in.at("eta").game, b)) return v;
      auto bad = [&](const Game& g) {
        return (g.kind == GameKind::TrapA && g.name == a) ||
               ((g.kind == GameKind::Atom || g.kind == GameKind::DualAtom) && g.name == b);
      };
      if (auto v = absent("SSabNotYet", in.at("alpha").game, "α", bad)) return v;
      return absent("SSabNotYet", in.at("phi").form, "φ", bad);
    }
    case SchemaId::AFrak: {
      SchemaId base = in.at("base").schema;
      Instantiation rest = in;
      rest.erase("base");
      rest.erase("traps");
      if (auto v = check_side_condition(base, rest)) return "AFrak base " + std::string(schema_name(base)) + ": " + *v;
      FormPtr f = std::get<FormPtr>(instantiate_schema(base, rest).conclusion);
      const auto& m = in.at("traps").pairs;
      std::set<std::string> targets;
      for (const auto& [b, s] : m) targets.insert(s);
      for (const auto& b : sabotage_atoms(f))
        if (!m.count(b)) return "AFrak: sabotaged atom " + b + " has no trap name";
      for (const auto& p : played_atoms(f))
        if (targets.count(p)) return "AFrak: trap name " + p + " already played in the instance";
      if (!check_fragment(std::get<FormPtr>(instantiate_schema(SchemaId::AFrak, in).conclusion), Fragment::GL))
        return "AFrak: the image is not a GL formula";
      return std::nullopt;
    }
    default: return std::nullopt;
  }
}

Violation modal_side(SchemaId id, const Instantiation& in) {
  switch (id) {
    case SchemaId::Taut:
      if (!taut_check(in.at("phi").flc)) return "not a propositional tautology";
      return std::nullopt;
    case SchemaId::alpha: {
      const std::string &x = in.at("x").name, &y = in.at("y").name;
      const FlcPtr& phi = in.at("phi").flc;
      if (x != y && (free_vars(phi).count(y) || bound_vars(phi).count(y))) return "freshness: " + y + " occurs in φ";
      return std::nullopt;
    }
    default: return std::nullopt;
  }
}

}  // namespace

std::optional<std::string> check_side_condition(SchemaId id, const Instantiation& inst, Universe u) {
  u = detail::universe_of(inst, u);
  detail::validate(id, inst, u);
  // Shape errors (widths, indices) surface here rather than as a false "ok".
  instantiate_schema(id, inst, u);
  if (u == Universe::Modal || id == SchemaId::fp || id == SchemaId::alpha || id == SchemaId::MuRule ||
      id == SchemaId::Mon_a)
    return modal_side(id, inst);
  return game_side(id, inst);
}

}  // namespace glwb
