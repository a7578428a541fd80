#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "glwb/error.hpp"
#include "glwb/syntax.hpp"

namespace glwb {

const std::vector<std::string> kReservedPrefixes = {"u_", "v_", "y_ctx_", "z_fix_", "b_", "c_"};

bool has_reserved_prefix(const std::string& name) {
  for (const auto& p : kReservedPrefixes)
    if (name.compare(0, p.size(), p) == 0) return true;
  return false;
}

std::string NameSupply::fresh(const std::string& prefix) {
  std::uint64_t& k = counters_[prefix];
  for (;;) {
    std::string cand = prefix + "_" + std::to_string(++k);
    if (avoid_.insert(cand).second) return cand;
  }
}

// ---------------------------------------------------------------------------
// Collectors

namespace {

struct Collector {
  std::function<void(const Game&)> on_game;
  std::function<void(const Form&)> on_form;
  std::set<const RecSystem*> seen_systems;

  void form(const FormPtr& f) {
    if (!f) return;
    if (on_form) on_form(*f);
    form(f->left);
    form(f->right);
    game(f->game);
  }
  void game(const GamePtr& g) {
    if (!g) return;
    if (on_game) on_game(*g);
    form(g->form);
    game(g->left);
    game(g->right);
    if (g->system && seen_systems.insert(g->system.get()).second)
      for (const auto& b : g->system->bindings) game(b.second);
  }
};

void flc_walk(const FlcPtr& f, const std::function<void(const Flc&)>& fn) {
  if (!f) return;
  fn(*f);
  flc_walk(f->left, fn);
  flc_walk(f->right, fn);
}

void fv_form(const FormPtr& f, std::set<std::string>& out);

void fv_game(const GamePtr& g, std::set<std::string>& out) {
  if (!g) return;
  switch (g->kind) {
    case GameKind::Var:
    case GameKind::DualVar:
      out.insert(g->name);
      return;
    case GameKind::Rec:
    case GameKind::CoRec: {
      std::set<std::string> inner;
      fv_game(g->left, inner);
      inner.erase(g->name);
      out.insert(inner.begin(), inner.end());
      return;
    }
    case GameKind::System: {
      std::set<std::string> inner;
      for (const auto& b : g->system->bindings) fv_game(b.second, inner);
      for (const auto& b : g->system->bindings) inner.erase(b.first);
      out.insert(inner.begin(), inner.end());
      return;
    }
    default:
      fv_form(g->form, out);
      fv_game(g->left, out);
      fv_game(g->right, out);
  }
}

void fv_form(const FormPtr& f, std::set<std::string>& out) {
  if (!f) return;
  fv_form(f->left, out);
  fv_form(f->right, out);
  fv_game(f->game, out);
}

void fv_flc(const FlcPtr& f, std::set<std::string>& out) {
  if (!f) return;
  if (f->kind == FlcKind::Var) {
    out.insert(f->name);
    return;
  }
  if (f->kind == FlcKind::Mu || f->kind == FlcKind::Nu) {
    std::set<std::string> inner;
    fv_flc(f->left, inner);
    inner.erase(f->name);
    out.insert(inner.begin(), inner.end());
    return;
  }
  fv_flc(f->left, out);
  fv_flc(f->right, out);
}

}  // namespace

std::set<std::string> free_vars(const FormPtr& f) {
  std::set<std::string> s;
  fv_form(f, s);
  return s;
}
std::set<std::string> free_vars(const GamePtr& g) {
  std::set<std::string> s;
  fv_game(g, s);
  return s;
}
std::set<std::string> free_vars(const FlcPtr& f) {
  std::set<std::string> s;
  fv_flc(f, s);
  return s;
}

bool occurs_free(const std::string& x, const GamePtr& g) { return free_vars(g).count(x) > 0; }
bool occurs_free(const std::string& x, const FlcPtr& f) { return free_vars(f).count(x) > 0; }

namespace {
std::set<std::string> game_names(const FormPtr* f, const GamePtr* g, const std::function<bool(const Game&)>& pick,
                                 bool binders = false) {
  std::set<std::string> s;
  Collector c;
  c.on_game = [&](const Game& n) {
    if (pick(n)) s.insert(n.name);
    if (binders && n.kind == GameKind::System)
      for (const auto& b : n.system->bindings) s.insert(b.first);
  };
  if (f) c.form(*f);
  if (g) c.game(*g);
  return s;
}
bool is_trap(const Game& n) { return n.kind == GameKind::TrapA || n.kind == GameKind::TrapD; }
bool is_played(const Game& n) { return n.kind == GameKind::Atom || n.kind == GameKind::DualAtom; }
bool is_binder_node(const Game& n) { return n.kind == GameKind::Rec || n.kind == GameKind::CoRec; }
}  // namespace

std::set<std::string> sabotage_atoms(const FormPtr& f) { return game_names(&f, nullptr, is_trap); }
std::set<std::string> sabotage_atoms(const GamePtr& g) { return game_names(nullptr, &g, is_trap); }
std::set<std::string> played_atoms(const FormPtr& f) { return game_names(&f, nullptr, is_played); }
std::set<std::string> played_atoms(const GamePtr& g) { return game_names(nullptr, &g, is_played); }
std::set<std::string> bound_vars(const FormPtr& f) { return game_names(&f, nullptr, is_binder_node, true); }
std::set<std::string> bound_vars(const GamePtr& g) { return game_names(nullptr, &g, is_binder_node, true); }

std::set<std::string> props_of(const FormPtr& f) {
  std::set<std::string> s;
  Collector c;
  c.on_form = [&](const Form& n) {
    if (n.kind == FormKind::Prop || n.kind == FormKind::NegProp) s.insert(n.name);
  };
  c.form(f);
  return s;
}
std::set<std::string> props_of(const GamePtr& g) {
  std::set<std::string> s;
  Collector c;
  c.on_form = [&](const Form& n) {
    if (n.kind == FormKind::Prop || n.kind == FormKind::NegProp) s.insert(n.name);
  };
  c.game(g);
  return s;
}
std::set<std::string> props_of(const FlcPtr& f) {
  std::set<std::string> s;
  flc_walk(f, [&](const Flc& n) {
    if (n.kind == FlcKind::Prop || n.kind == FlcKind::NegProp) s.insert(n.name);
  });
  return s;
}
std::set<std::string> atoms_of(const FlcPtr& f) {
  std::set<std::string> s;
  flc_walk(f, [&](const Flc& n) {
    if (n.kind == FlcKind::Dia || n.kind == FlcKind::Box) s.insert(n.name);
  });
  return s;
}
std::set<std::string> bound_vars(const FlcPtr& f) {
  std::set<std::string> s;
  flc_walk(f, [&](const Flc& n) {
    if (n.kind == FlcKind::Mu || n.kind == FlcKind::Nu) s.insert(n.name);
  });
  return s;
}

std::set<std::string> all_names(const FormPtr& f) {
  std::set<std::string> s;
  Collector c;
  c.on_form = [&](const Form& n) {
    if (!n.name.empty()) s.insert(n.name);
  };
  c.on_game = [&](const Game& n) {
    if (!n.name.empty()) s.insert(n.name);
    if (n.kind == GameKind::System)
      for (const auto& b : n.system->bindings) s.insert(b.first);
  };
  c.form(f);
  return s;
}
std::set<std::string> all_names(const GamePtr& g) {
  std::set<std::string> s;
  Collector c;
  c.on_form = [&](const Form& n) {
    if (!n.name.empty()) s.insert(n.name);
  };
  c.on_game = [&](const Game& n) {
    if (!n.name.empty()) s.insert(n.name);
    if (n.kind == GameKind::System)
      for (const auto& b : n.system->bindings) s.insert(b.first);
  };
  c.game(g);
  return s;
}
std::set<std::string> all_names(const FlcPtr& f) {
  std::set<std::string> s;
  flc_walk(f, [&](const Flc& n) {
    if (!n.name.empty()) s.insert(n.name);
  });
  return s;
}

// ---------------------------------------------------------------------------
// Normal form
//
// The dual flag says whether the node is being dualized (games) or negated
// (formulas) relative to the root. A bound variable must occur with the flag its
// binder had; a free variable reached with the flag set becomes DualVar.

namespace {

struct Normalizer {
  std::vector<std::pair<std::string, bool>> scope;
  std::map<std::pair<const RecSystem*, bool>, SystemPtr> systems;

  FormPtr form(const FormPtr& f, bool negate) {
    switch (f->kind) {
      case FormKind::True: return negate ? gl::ff() : f;
      case FormKind::False: return negate ? gl::tt() : f;
      case FormKind::Prop: return negate ? gl::neg_prop(f->name) : f;
      case FormKind::NegProp: return negate ? gl::prop(f->name) : f;
      case FormKind::Neg: return form(f->left, !negate);
      case FormKind::Or:
      case FormKind::And: {
        FormPtr l = form(f->left, negate);
        FormPtr r = form(f->right, negate);
        bool is_or = (f->kind == FormKind::Or) != negate;
        if (!negate && l == f->left && r == f->right) return f;
        return is_or ? gl::lor(l, r) : gl::land(l, r);
      }
      case FormKind::Diamond: {
        GamePtr g = game(f->game, negate);
        FormPtr b = form(f->left, negate);
        if (g == f->game && b == f->left) return f;
        return gl::dia(g, b);
      }
    }
    return f;
  }

  GamePtr var_at(const GamePtr& g, bool dual) {
    const std::string& x = g->name;
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      if (it->first == x) {
        if (it->second != dual)
          throw Error(ErrorKind::NormalFormViolation, "bound variable '" + x + "' occurs under an odd number of duals");
        return g->kind == GameKind::Var ? g : gl::var(x);
      }
    }
    if (dual) return g->kind == GameKind::DualVar ? g : gl::dual_var(x);
    return g->kind == GameKind::Var ? g : gl::var(x);
  }

  GamePtr game(const GamePtr& g, bool dual) {
    switch (g->kind) {
      case GameKind::Atom: return dual ? gl::dual_atom(g->name) : g;
      case GameKind::DualAtom: return dual ? gl::atom(g->name) : g;
      case GameKind::TrapA: return dual ? gl::trap_d(g->name) : g;
      case GameKind::TrapD: return dual ? gl::trap_a(g->name) : g;
      case GameKind::Var: return var_at(g, dual);
      case GameKind::DualVar: return var_at(g, !dual);
      case GameKind::Test:
      case GameKind::DTest: {
        FormPtr b = form(g->form, false);
        bool angel = (g->kind == GameKind::Test) != dual;
        if (!dual && b == g->form) return g;
        return angel ? gl::test(b) : gl::dtest(b);
      }
      case GameKind::Choice:
      case GameKind::DChoice: {
        GamePtr l = game(g->left, dual);
        GamePtr r = game(g->right, dual);
        bool angel = (g->kind == GameKind::Choice) != dual;
        if (!dual && l == g->left && r == g->right) return g;
        return angel ? gl::choice(l, r) : gl::dchoice(l, r);
      }
      case GameKind::Seq: {
        GamePtr l = game(g->left, dual);
        GamePtr r = game(g->right, dual);
        if (!dual && l == g->left && r == g->right) return g;
        return gl::seq(l, r);
      }
      case GameKind::Star:
      case GameKind::DStar: {
        GamePtr b = game(g->left, dual);
        bool angel = (g->kind == GameKind::Star) != dual;
        if (!dual && b == g->left) return g;
        return angel ? gl::star(b) : gl::dstar(b);
      }
      case GameKind::Dual: return game(g->left, !dual);
      case GameKind::Rec:
      case GameKind::CoRec: {
        scope.emplace_back(g->name, dual);
        GamePtr b = game(g->left, dual);
        scope.pop_back();
        bool least = (g->kind == GameKind::Rec) != dual;
        if (!dual && b == g->left) return g;
        return least ? gl::rec(g->name, b) : gl::corec(g->name, b);
      }
      case GameKind::System: {
        auto key = std::make_pair(g->system.get(), dual);
        auto it = systems.find(key);
        if (it == systems.end()) {
          for (const auto& b : g->system->bindings) scope.emplace_back(b.first, dual);
          auto sys = std::make_shared<RecSystem>();
          bool mu = (g->system->kind == FixKind::Mu) != dual;
          sys->kind = mu ? FixKind::Mu : FixKind::Nu;
          bool changed = dual;
          for (const auto& b : g->system->bindings) {
            GamePtr nb = game(b.second, dual);
            changed = changed || nb != b.second;
            sys->bindings.emplace_back(b.first, nb);
          }
          scope.resize(scope.size() - g->system->bindings.size());
          it = systems.emplace(key, changed ? SystemPtr(sys) : g->system).first;
        }
        return it->second == g->system ? g : gl::component(it->second, g->index);
      }
    }
    return g;
  }
};

}  // namespace

FormPtr normal_form(const FormPtr& f) { return Normalizer{}.form(f, false); }
GamePtr normal_form(const GamePtr& g) { return Normalizer{}.game(g, false); }
FormPtr complement(const FormPtr& f) { return Normalizer{}.form(f, true); }
GamePtr game_dual(const GamePtr& g) { return Normalizer{}.game(g, true); }

FlcPtr flc_negate(const FlcPtr& f) {
  switch (f->kind) {
    case FlcKind::True: return flc::ff();
    case FlcKind::False: return flc::tt();
    case FlcKind::Var: return f;
    case FlcKind::Prop: return flc::neg_prop(f->name);
    case FlcKind::NegProp: return flc::prop(f->name);
    case FlcKind::Or: return flc::land(flc_negate(f->left), flc_negate(f->right));
    case FlcKind::And: return flc::lor(flc_negate(f->left), flc_negate(f->right));
    case FlcKind::Dia: return flc::box(f->name, flc_negate(f->left));
    case FlcKind::Box: return flc::dia(f->name, flc_negate(f->left));
    case FlcKind::Mu: return flc::nu(f->name, flc_negate(f->left));
    case FlcKind::Nu: return flc::mu(f->name, flc_negate(f->left));
    case FlcKind::Id:
    case FlcKind::Chop:
    case FlcKind::StarFix:
      throw Error(ErrorKind::UnsupportedNegation, "negation is defined on Lmu formulas only, found '" + print(f) + "'");
  }
  return f;
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

struct GameSubstituter {
  std::map<std::string, std::set<std::string>> repl_fv;
  // System nodes sharing one RecSystem keep sharing it after substitution.
  std::map<std::pair<const RecSystem*, std::string>, SystemPtr> systems;

  void check_capture(const std::string& binder, const GameSubst& s, const std::vector<GamePtr>& bodies) {
    for (const auto& [y, r] : s) {
      if (!repl_fv[y].count(binder)) continue;
      for (const auto& b : bodies)
        if (occurs_free(y, b))
          throw Error(ErrorKind::Capture, "binder '" + binder + "' captures a free variable of the replacement for '" + y + "'");
    }
  }

  FormPtr form(const FormPtr& f, const GameSubst& s) {
    if (!f || s.empty()) return f;
    switch (f->kind) {
      case FormKind::Neg: {
        FormPtr l = form(f->left, s);
        return l == f->left ? f : gl::neg(l);
      }
      case FormKind::Or:
      case FormKind::And: {
        FormPtr l = form(f->left, s), r = form(f->right, s);
        if (l == f->left && r == f->right) return f;
        return f->kind == FormKind::Or ? gl::lor(l, r) : gl::land(l, r);
      }
      case FormKind::Diamond: {
        GamePtr g = game(f->game, s);
        FormPtr b = form(f->left, s);
        if (g == f->game && b == f->left) return f;
        return gl::dia(g, b);
      }
      default: return f;
    }
  }

  GamePtr game(const GamePtr& g, const GameSubst& s) {
    if (s.empty()) return g;
    switch (g->kind) {
      case GameKind::Var: {
        auto it = s.find(g->name);
        return it == s.end() ? g : it->second;
      }
      case GameKind::DualVar: {
        auto it = s.find(g->name);
        return it == s.end() ? g : gl::dual(it->second);
      }
      case GameKind::Test:
      case GameKind::DTest: {
        FormPtr b = form(g->form, s);
        if (b == g->form) return g;
        return g->kind == GameKind::Test ? gl::test(b) : gl::dtest(b);
      }
      case GameKind::Choice:
      case GameKind::DChoice:
      case GameKind::Seq: {
        GamePtr l = game(g->left, s), r = game(g->right, s);
        if (l == g->left && r == g->right) return g;
        if (g->kind == GameKind::Choice) return gl::choice(l, r);
        if (g->kind == GameKind::DChoice) return gl::dchoice(l, r);
        return gl::seq(l, r);
      }
      case GameKind::Star:
      case GameKind::DStar:
      case GameKind::Dual: {
        GamePtr b = game(g->left, s);
        if (b == g->left) return g;
        if (g->kind == GameKind::Star) return gl::star(b);
        if (g->kind == GameKind::DStar) return gl::dstar(b);
        return gl::dual(b);
      }
      case GameKind::Rec:
      case GameKind::CoRec: {
        GameSubst inner = s;
        inner.erase(g->name);
        if (inner.empty()) return g;
        check_capture(g->name, inner, {g->left});
        GamePtr b = game(g->left, inner);
        if (b == g->left) return g;
        return g->kind == GameKind::Rec ? gl::rec(g->name, b) : gl::corec(g->name, b);
      }
      case GameKind::System: {
        GameSubst inner = s;
        for (const auto& b : g->system->bindings) inner.erase(b.first);
        if (inner.empty()) return g;
        std::string keys;
        for (const auto& kv : inner) keys += kv.first + ",";
        auto memo = systems.find({g->system.get(), keys});
        if (memo != systems.end()) return memo->second == g->system ? g : gl::component(memo->second, g->index);
        std::vector<GamePtr> bodies;
        for (const auto& b : g->system->bindings) bodies.push_back(b.second);
        for (const auto& b : g->system->bindings) check_capture(b.first, inner, bodies);
        auto sys = std::make_shared<RecSystem>();
        sys->kind = g->system->kind;
        bool changed = false;
        for (const auto& b : g->system->bindings) {
          GamePtr nb = game(b.second, inner);
          changed = changed || nb != b.second;
          sys->bindings.emplace_back(b.first, nb);
        }
        SystemPtr result = changed ? SystemPtr(sys) : g->system;
        systems.emplace(std::make_pair(g->system.get(), keys), result);
        return changed ? gl::component(result, g->index) : g;
      }
      default: return g;
    }
  }
};

}  // namespace

GamePtr substitute(const GamePtr& g, const GameSubst& s) {
  GameSubstituter sub;
  for (const auto& [y, r] : s) sub.repl_fv[y] = free_vars(r);
  return sub.game(g, s);
}

FormPtr substitute(const FormPtr& f, const GameSubst& s) {
  GameSubstituter sub;
  for (const auto& [y, r] : s) sub.repl_fv[y] = free_vars(r);
  return sub.form(f, s);
}

namespace {
struct FlcSubstituter {
  std::map<std::string, std::set<std::string>> repl_fv;

  FlcPtr run(const FlcPtr& f, const FlcSubst& s) {
    if (s.empty()) return f;
    switch (f->kind) {
      case FlcKind::Var: {
        auto it = s.find(f->name);
        return it == s.end() ? f : it->second;
      }
      case FlcKind::Or:
      case FlcKind::And:
      case FlcKind::Chop: {
        FlcPtr l = run(f->left, s), r = run(f->right, s);
        if (l == f->left && r == f->right) return f;
        if (f->kind == FlcKind::Or) return flc::lor(l, r);
        if (f->kind == FlcKind::And) return flc::land(l, r);
        return flc::chop(l, r);
      }
      case FlcKind::Dia:
      case FlcKind::Box:
      case FlcKind::StarFix: {
        FlcPtr b = run(f->left, s);
        if (b == f->left) return f;
        if (f->kind == FlcKind::Dia) return flc::dia(f->name, b);
        if (f->kind == FlcKind::Box) return flc::box(f->name, b);
        return flc::star(b);
      }
      case FlcKind::Mu:
      case FlcKind::Nu: {
        FlcSubst inner = s;
        inner.erase(f->name);
        if (inner.empty()) return f;
        for (const auto& [y, r] : inner)
          if (repl_fv[y].count(f->name) && occurs_free(y, f->left))
            throw Error(ErrorKind::Capture, "binder '" + f->name + "' captures a free variable of the replacement for '" + y + "'");
        FlcPtr b = run(f->left, inner);
        if (b == f->left) return f;
        return f->kind == FlcKind::Mu ? flc::mu(f->name, b) : flc::nu(f->name, b);
      }
      default: return f;
    }
  }
};
}  // namespace

FlcPtr substitute(const FlcPtr& f, const FlcSubst& s) {
  FlcSubstituter sub;
  for (const auto& [y, r] : s) sub.repl_fv[y] = free_vars(r);
  return sub.run(f, s);
}

// ---------------------------------------------------------------------------
// Bound renaming

namespace {

struct Renamer {
  NameSupply supply;
  std::set<std::string> taken;  // free variables and binders seen so far
  std::vector<std::pair<std::string, std::string>> scope;

  std::string lookup(const std::string& x) const {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == x) return it->second;
    return x;
  }
  std::string bind(const std::string& x) {
    std::string n = taken.count(x) ? supply.fresh(x) : x;
    taken.insert(n);
    supply.avoid(n);
    return n;
  }

  FormPtr form(const FormPtr& f) {
    switch (f->kind) {
      case FormKind::Neg: return gl::neg(form(f->left));
      case FormKind::Or: return gl::lor(form(f->left), form(f->right));
      case FormKind::And: return gl::land(form(f->left), form(f->right));
      case FormKind::Diamond: return gl::dia(game(f->game), form(f->left));
      default: return f;
    }
  }
  GamePtr game(const GamePtr& g) {
    switch (g->kind) {
      case GameKind::Var: return gl::var(lookup(g->name));
      case GameKind::DualVar: return gl::dual_var(lookup(g->name));
      case GameKind::Test: return gl::test(form(g->form));
      case GameKind::DTest: return gl::dtest(form(g->form));
      case GameKind::Choice: return gl::choice(game(g->left), game(g->right));
      case GameKind::DChoice: return gl::dchoice(game(g->left), game(g->right));
      case GameKind::Seq: return gl::seq(game(g->left), game(g->right));
      case GameKind::Star: return gl::star(game(g->left));
      case GameKind::DStar: return gl::dstar(game(g->left));
      case GameKind::Dual: return gl::dual(game(g->left));
      case GameKind::Rec:
      case GameKind::CoRec: {
        std::string n = bind(g->name);
        scope.emplace_back(g->name, n);
        GamePtr b = game(g->left);
        scope.pop_back();
        return g->kind == GameKind::Rec ? gl::rec(n, b) : gl::corec(n, b);
      }
      case GameKind::System: {
        auto sys = std::make_shared<RecSystem>();
        sys->kind = g->system->kind;
        std::vector<std::string> names;
        for (const auto& b : g->system->bindings) names.push_back(bind(b.first));
        for (std::size_t i = 0; i < names.size(); ++i) scope.emplace_back(g->system->bindings[i].first, names[i]);
        for (std::size_t i = 0; i < names.size(); ++i) sys->bindings.emplace_back(names[i], game(g->system->bindings[i].second));
        scope.resize(scope.size() - names.size());
        return gl::component(sys, g->index);
      }
      default: return g;
    }
  }
  FlcPtr flc(const FlcPtr& f) {
    switch (f->kind) {
      case FlcKind::Var: return flc::var(lookup(f->name));
      case FlcKind::Or: return flc::lor(flc(f->left), flc(f->right));
      case FlcKind::And: return flc::land(flc(f->left), flc(f->right));
      case FlcKind::Chop: return flc::chop(flc(f->left), flc(f->right));
      case FlcKind::Dia: return flc::dia(f->name, flc(f->left));
      case FlcKind::Box: return flc::box(f->name, flc(f->left));
      case FlcKind::StarFix: return flc::star(flc(f->left));
      case FlcKind::Mu:
      case FlcKind::Nu: {
        std::string n = bind(f->name);
        scope.emplace_back(f->name, n);
        FlcPtr b = flc(f->left);
        scope.pop_back();
        return f->kind == FlcKind::Mu ? flc::mu(n, b) : flc::nu(n, b);
      }
      default: return f;
    }
  }
};

template <class P>
Renamer make_renamer(const P& e) {
  Renamer r{NameSupply(all_names(e)), free_vars(e), {}};
  return r;
}

template <class P>
bool well_named_impl(const P& e, const std::function<void(const std::function<void(const std::string&)>&)>& each_binder) {
  std::set<std::string> fv = free_vars(e), seen;
  bool ok = true;
  each_binder([&](const std::string& x) {
    if (fv.count(x) || !seen.insert(x).second) ok = false;
  });
  return ok;
}

}  // namespace

FormPtr rename_bound(const FormPtr& f) {
  if (well_named(f)) return f;
  return make_renamer(f).form(f);
}
GamePtr rename_bound(const GamePtr& g) {
  if (well_named(g)) return g;
  return make_renamer(g).game(g);
}
FlcPtr rename_bound(const FlcPtr& f) {
  if (well_named(f)) return f;
  return make_renamer(f).flc(f);
}

bool well_named(const FormPtr& f) {
  return well_named_impl(f, [&](const std::function<void(const std::string&)>& cb) {
    Collector c;
    c.on_game = [&](const Game& n) {
      if (n.kind == GameKind::Rec || n.kind == GameKind::CoRec) cb(n.name);
      if (n.kind == GameKind::System)
        for (const auto& b : n.system->bindings) cb(b.first);
    };
    c.form(f);
  });
}
bool well_named(const GamePtr& g) {
  return well_named_impl(g, [&](const std::function<void(const std::string&)>& cb) {
    Collector c;
    c.on_game = [&](const Game& n) {
      if (n.kind == GameKind::Rec || n.kind == GameKind::CoRec) cb(n.name);
      if (n.kind == GameKind::System)
        for (const auto& b : n.system->bindings) cb(b.first);
    };
    c.game(g);
  });
}
bool well_named(const FlcPtr& f) {
  return well_named_impl(f, [&](const std::function<void(const std::string&)>& cb) {
    flc_walk(f, [&](const Flc& n) {
      if (n.kind == FlcKind::Mu || n.kind == FlcKind::Nu) cb(n.name);
    });
  });
}

// ---------------------------------------------------------------------------
// Star desugaring

namespace {
struct Desugarer {
  NameSupply supply;

  FormPtr form(const FormPtr& f) {
    switch (f->kind) {
      case FormKind::Neg: {
        FormPtr l = form(f->left);
        return l == f->left ? f : gl::neg(l);
      }
      case FormKind::Or:
      case FormKind::And: {
        FormPtr l = form(f->left), r = form(f->right);
        if (l == f->left && r == f->right) return f;
        return f->kind == FormKind::Or ? gl::lor(l, r) : gl::land(l, r);
      }
      case FormKind::Diamond: {
        GamePtr g = game(f->game);
        FormPtr b = form(f->left);
        if (g == f->game && b == f->left) return f;
        return gl::dia(g, b);
      }
      default: return f;
    }
  }
  GamePtr game(const GamePtr& g) {
    switch (g->kind) {
      case GameKind::Star: {
        std::string z = supply.fresh("z_fix");
        return gl::rec(z, gl::choice(gl::seq(game(g->left), gl::var(z)), gl::test(gl::tt())));
      }
      case GameKind::DStar: {
        std::string z = supply.fresh("z_fix");
        return gl::corec(z, gl::dchoice(gl::seq(game(g->left), gl::var(z)), gl::dtest(gl::tt())));
      }
      case GameKind::Test:
      case GameKind::DTest: {
        FormPtr b = form(g->form);
        if (b == g->form) return g;
        return g->kind == GameKind::Test ? gl::test(b) : gl::dtest(b);
      }
      case GameKind::Choice:
      case GameKind::DChoice:
      case GameKind::Seq: {
        GamePtr l = game(g->left), r = game(g->right);
        if (l == g->left && r == g->right) return g;
        if (g->kind == GameKind::Choice) return gl::choice(l, r);
        if (g->kind == GameKind::DChoice) return gl::dchoice(l, r);
        return gl::seq(l, r);
      }
      case GameKind::Dual: {
        GamePtr b = game(g->left);
        return b == g->left ? g : gl::dual(b);
      }
      case GameKind::Rec:
      case GameKind::CoRec: {
        GamePtr b = game(g->left);
        if (b == g->left) return g;
        return g->kind == GameKind::Rec ? gl::rec(g->name, b) : gl::corec(g->name, b);
      }
      case GameKind::System: {
        auto sys = std::make_shared<RecSystem>();
        sys->kind = g->system->kind;
        for (const auto& b : g->system->bindings) sys->bindings.emplace_back(b.first, game(b.second));
        return gl::component(sys, g->index);
      }
      default: return g;
    }
  }
};
}  // namespace

GamePtr desugar_star(const GamePtr& g) { return Desugarer{NameSupply(all_names(g))}.game(g); }
FormPtr desugar_star(const FormPtr& f) { return Desugarer{NameSupply(all_names(f))}.form(f); }

}  // namespace glwb
