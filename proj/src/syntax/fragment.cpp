#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "glwb/syntax.hpp"

namespace glwb {

const char* fragment_name(Fragment f) {
  switch (f) {
    case Fragment::GL: return "GL";
    case Fragment::GLs: return "GLs";
    case Fragment::RGL: return "RGL";
    case Fragment::rlGL: return "rlGL";
    case Fragment::Lmu: return "Lmu";
    case Fragment::Lstar: return "Lstar";
    case Fragment::Lsep: return "Lsep";
    case Fragment::PoorTest: return "PoorTest";
  }
  return "?";
}

bool parse_fragment(std::string_view s, Fragment& out) {
  for (Fragment f : {Fragment::GL, Fragment::GLs, Fragment::RGL, Fragment::rlGL, Fragment::Lmu, Fragment::Lstar,
                     Fragment::Lsep, Fragment::PoorTest}) {
    std::string n = fragment_name(f);
    std::string lower = n, in(s);
    std::transform(lower.begin(), lower.end(), lower.begin(), ::tolower);
    std::transform(in.begin(), in.end(), in.begin(), ::tolower);
    if (lower == in) {
      out = f;
      return true;
    }
  }
  return false;
}

namespace {

// Does every node satisfy pred (recursing through formulas, games, systems)?
bool all_nodes(const FormPtr& f, const std::function<bool(const Game&)>& pg,
               const std::function<bool(const Form&)>& pf);

bool all_nodes(const GamePtr& g, const std::function<bool(const Game&)>& pg,
               const std::function<bool(const Form&)>& pf) {
  if (!g) return true;
  if (!pg(*g)) return false;
  if (g->system)
    for (const auto& b : g->system->bindings)
      if (!all_nodes(b.second, pg, pf)) return false;
  return all_nodes(g->form, pg, pf) && all_nodes(g->left, pg, pf) && all_nodes(g->right, pg, pf);
}

bool all_nodes(const FormPtr& f, const std::function<bool(const Game&)>& pg,
               const std::function<bool(const Form&)>& pf) {
  if (!f) return true;
  if (!pf(*f)) return false;
  return all_nodes(f->left, pg, pf) && all_nodes(f->right, pg, pf) && all_nodes(f->game, pg, pf);
}

bool any_form(const Form&) { return true; }

bool gl_game_node(const Game& g) {
  switch (g.kind) {
    case GameKind::Var:
    case GameKind::DualVar:
    case GameKind::Rec:
    case GameKind::CoRec:
    case GameKind::TrapA:
    case GameKind::TrapD:
    case GameKind::System:
      return false;
    default:
      return true;
  }
}

bool gls_game_node(const Game& g) { return gl_game_node(g) || g.kind == GameKind::TrapA || g.kind == GameKind::TrapD; }

bool rgl_game_node(const Game& g) { return g.kind != GameKind::TrapA && g.kind != GameKind::TrapD; }

bool literal_tests(const Game& g) {
  if (g.kind != GameKind::Test && g.kind != GameKind::DTest) return true;
  switch (g.form->kind) {
    case FormKind::Prop:
    case FormKind::NegProp:
    case FormKind::True:
    case FormKind::False:
      return true;
    default:
      return false;
  }
}

struct WellFormed {
  std::vector<std::pair<std::string, bool>> scope;

  bool form(const FormPtr& f, bool neg) {
    switch (f->kind) {
      case FormKind::Neg: return form(f->left, !neg);
      case FormKind::Or:
      case FormKind::And: return form(f->left, neg) && form(f->right, neg);
      case FormKind::Diamond: return game(f->game, neg) && form(f->left, neg);
      default: return true;
    }
  }
  bool var(const std::string& x, bool dual) const {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == x) return it->second == dual;
    return true;
  }
  bool game(const GamePtr& g, bool dual) {
    switch (g->kind) {
      case GameKind::Var: return var(g->name, dual);
      case GameKind::DualVar: return var(g->name, !dual);
      case GameKind::Test:
      case GameKind::DTest: {
        if (!free_vars(g->form).empty()) return false;
        WellFormed inner;
        return inner.form(g->form, false);
      }
      case GameKind::Choice:
      case GameKind::DChoice:
      case GameKind::Seq: return game(g->left, dual) && game(g->right, dual);
      case GameKind::Star:
      case GameKind::DStar: return game(g->left, dual);
      case GameKind::Dual: return game(g->left, !dual);
      case GameKind::Rec:
      case GameKind::CoRec: {
        scope.emplace_back(g->name, dual);
        bool ok = game(g->left, dual);
        scope.pop_back();
        return ok;
      }
      case GameKind::System: {
        for (const auto& b : g->system->bindings) scope.emplace_back(b.first, dual);
        bool ok = true;
        for (const auto& b : g->system->bindings) ok = ok && game(b.second, dual);
        scope.resize(scope.size() - g->system->bindings.size());
        return ok;
      }
      default: return true;
    }
  }
};

bool rl_game(const GamePtr& g);

bool rl_form(const FormPtr& f) {
  if (!f) return true;
  return rl_form(f->left) && rl_form(f->right) && (!f->game || rl_game(f->game));
}

bool rl_game(const GamePtr& g) {
  if (!g) return true;
  if (g->kind == GameKind::Seq && !free_vars(g->left).empty()) return false;
  if (g->system)
    for (const auto& b : g->system->bindings)
      if (!rl_game(b.second)) return false;
  return rl_form(g->form) && rl_game(g->left) && rl_game(g->right);
}

// ---- FLC fragments ----

bool lmu_node(const Flc& f) { return f.kind != FlcKind::Id && f.kind != FlcKind::Chop && f.kind != FlcKind::StarFix; }

bool all_flc(const FlcPtr& f, const std::function<bool(const Flc&)>& p) {
  if (!f) return true;
  return p(*f) && all_flc(f->left, p) && all_flc(f->right, p);
}

bool separable(const FlcPtr& f) {
  if (!f) return true;
  if (f->kind == FlcKind::Mu || f->kind == FlcKind::Nu) {
    FlcKind want = f->kind == FlcKind::Mu ? FlcKind::Or : FlcKind::And;
    const FlcPtr& body = f->left;
    if (body->kind != want) return false;
    auto only_x = [&](const FlcPtr& psi) {
      auto fv = free_vars(psi);
      return fv.empty() || (fv.size() == 1 && *fv.begin() == f->name);
    };
    auto x_free = [&](const FlcPtr& rho) { return !occurs_free(f->name, rho); };
    bool shape = (only_x(body->left) && x_free(body->right)) || (only_x(body->right) && x_free(body->left));
    return shape && separable(body->left) && separable(body->right);
  }
  return separable(f->left) && separable(f->right);
}

// mu x.(id \/ (phi ; x)) or nu x.(id /\ (phi ; x)) with x not free in phi.
bool star_shape(const FlcPtr& f) {
  if (f->kind != FlcKind::Mu && f->kind != FlcKind::Nu) return false;
  FlcKind want = f->kind == FlcKind::Mu ? FlcKind::Or : FlcKind::And;
  const FlcPtr& b = f->left;
  return b->kind == want && b->left->kind == FlcKind::Id && b->right->kind == FlcKind::Chop &&
         b->right->right->kind == FlcKind::Var && b->right->right->name == f->name &&
         !occurs_free(f->name, b->right->left);
}

bool lstar(const FlcPtr& f) {
  if (!f) return true;
  switch (f->kind) {
    case FlcKind::Var: return false;
    case FlcKind::Mu:
    case FlcKind::Nu: return star_shape(f) && lstar(f->left->right->left);
    default: return lstar(f->left) && lstar(f->right);
  }
}

}  // namespace

bool right_linear(const GamePtr& g) { return rl_game(desugar_star(g)); }
bool right_linear(const FormPtr& f) { return rl_form(desugar_star(f)); }
bool rgl_wellformed(const GamePtr& g) { return WellFormed{}.game(g, false); }
bool rgl_wellformed(const FormPtr& f) { return WellFormed{}.form(f, false); }

bool check_fragment(const FormPtr& f, Fragment tag) {
  switch (tag) {
    case Fragment::GL: return all_nodes(f, gl_game_node, any_form);
    case Fragment::GLs: return all_nodes(f, gls_game_node, any_form);
    case Fragment::RGL: return all_nodes(f, rgl_game_node, any_form) && rgl_wellformed(f);
    case Fragment::rlGL: return check_fragment(f, Fragment::RGL) && right_linear(f);
    case Fragment::PoorTest: return all_nodes(f, literal_tests, any_form);
    default: return false;
  }
}

bool check_fragment(const GamePtr& g, Fragment tag) {
  switch (tag) {
    case Fragment::GL: return all_nodes(g, gl_game_node, any_form);
    case Fragment::GLs: return all_nodes(g, gls_game_node, any_form);
    case Fragment::RGL: return all_nodes(g, rgl_game_node, any_form) && rgl_wellformed(g);
    case Fragment::rlGL: return check_fragment(g, Fragment::RGL) && right_linear(g);
    case Fragment::PoorTest: return all_nodes(g, literal_tests, any_form);
    default: return false;
  }
}

bool check_fragment(const FlcPtr& f, Fragment tag) {
  switch (tag) {
    case Fragment::Lmu: return all_flc(f, lmu_node);
    case Fragment::Lsep: return all_flc(f, lmu_node) && separable(f);
    case Fragment::Lstar: return lstar(f);
    case Fragment::PoorTest: return true;
    default: return false;
  }
}

// ---- rank ----

namespace {
std::uint64_t rank_form(const FormPtr& f);

std::uint64_t rank_game(const GamePtr& g) {
  switch (g->kind) {
    case GameKind::Atom:
    case GameKind::DualAtom:
    case GameKind::Var:
    case GameKind::DualVar:
    case GameKind::TrapA:
    case GameKind::TrapD:
      return 0;
    case GameKind::Test: return rank_form(g->form) + 2;
    case GameKind::DTest: return rank_form(g->form) + 3;
    case GameKind::Choice:
    case GameKind::DChoice: return std::max(rank_game(g->left), rank_game(g->right)) + 2;
    case GameKind::Seq: return rank_game(g->left) + rank_game(g->right) + 2;
    // Star as rec x.(a;x u ?true): max(r+0+2, 0+2) + 2 + 1.
    case GameKind::Star: return rank_game(g->left) + 5;
    case GameKind::DStar: return std::max(rank_game(g->left) + 2, std::uint64_t{3}) + 3;
    case GameKind::Rec:
    case GameKind::CoRec: return rank_game(g->left) + 1;
    case GameKind::System: {
      std::uint64_t m = 0;
      for (const auto& b : g->system->bindings) m = std::max(m, rank_game(b.second));
      return m + 1;
    }
    case GameKind::Dual: return rank_game(game_dual(g->left));
  }
  return 0;
}

std::uint64_t rank_form(const FormPtr& f) {
  switch (f->kind) {
    case FormKind::True:
    case FormKind::False:
    case FormKind::Prop:
    case FormKind::NegProp:
      return 0;
    case FormKind::Neg: return rank_form(complement(f->left));
    case FormKind::Or:
    case FormKind::And: return std::max(rank_form(f->left), rank_form(f->right)) + 1;
    case FormKind::Diamond: return rank_game(f->game) + rank_form(f->left) + 1;
  }
  return 0;
}
}  // namespace

std::uint64_t rank(const FormPtr& f) { return rank_form(normal_form(f)); }
std::uint64_t rank(const GamePtr& g) { return rank_game(normal_form(g)); }

}  // namespace glwb
