#include <map>
#include <string>
#include <vector>

#include "common.hpp"
#include "glwb/error.hpp"
#include "glwb/syntax.hpp"
#include "glwb/translate.hpp"

namespace glwb {

namespace {

// Gauss elimination. Precondition: no body binds one of the system variables.
GamePtr eliminate(const RecSystem& sys, std::size_t i, detail::FreeVars& fv) {
  const std::size_t n = sys.bindings.size();
  if (i >= n) throw Error(ErrorKind::Usage, "component index out of range");
  std::map<std::string, std::size_t> pos;
  for (std::size_t k = 0; k < n; ++k) pos[sys.bindings[k].first] = k;

  std::vector<bool> live(n, false);
  std::vector<std::size_t> todo{i};
  live[i] = true;
  while (!todo.empty()) {
    std::size_t k = todo.back();
    todo.pop_back();
    for (const auto& x : fv.game(sys.bindings[k].second))
      if (auto it = pos.find(x); it != pos.end() && !live[it->second]) {
        live[it->second] = true;
        todo.push_back(it->second);
      }
  }

  auto bind = [&](std::size_t k, GamePtr body) {
    return sys.kind == FixKind::Mu ? gl::rec(sys.bindings[k].first, std::move(body))
                                   : gl::corec(sys.bindings[k].first, std::move(body));
  };
  std::vector<GamePtr> body(n);
  for (std::size_t k = 0; k < n; ++k) body[k] = sys.bindings[k].second;
  for (std::size_t k = n; k-- > 0;) {
    if (k == i || !live[k]) continue;
    GamePtr closed = bind(k, body[k]);
    const std::string& x = sys.bindings[k].first;
    detail::DagSubst sub([&](const std::string& y) { return y == x ? closed : nullptr; });
    live[k] = false;
    for (std::size_t j = 0; j < n; ++j)
      if (live[j]) body[j] = sub.game(body[j]);
  }
  return bind(i, body[i]);
}

struct Eliminator {
  explicit Eliminator(detail::ReportScope& r) : rep(r) {}
  detail::ReportScope& rep;
  detail::FreeVars fv;
  std::map<const Game*, GamePtr> gmemo;
  std::map<const Form*, FormPtr> fmemo;
  std::map<const RecSystem*, std::shared_ptr<RecSystem>> inner;

  FormPtr form(const FormPtr& f) {
    if (auto it = fmemo.find(f.get()); it != fmemo.end()) return it->second;
    FormPtr out = f;
    switch (f->kind) {
      case FormKind::Neg: {
        FormPtr l = form(f->left);
        if (l != f->left) out = gl::neg(l);
        break;
      }
      case FormKind::Or:
      case FormKind::And: {
        FormPtr l = form(f->left), r = form(f->right);
        if (l != f->left || r != f->right) out = f->kind == FormKind::Or ? gl::lor(l, r) : gl::land(l, r);
        break;
      }
      case FormKind::Diamond: {
        GamePtr g = game(f->game);
        FormPtr b = form(f->left);
        if (g != f->game || b != f->left) out = gl::dia(g, b);
        break;
      }
      default: break;
    }
    fmemo.emplace(f.get(), out);
    return out;
  }

  GamePtr game(const GamePtr& g) {
    if (auto it = gmemo.find(g.get()); it != gmemo.end()) return it->second;
    GamePtr out = g;
    switch (g->kind) {
      case GameKind::Test:
      case GameKind::DTest: {
        FormPtr b = form(g->form);
        if (b != g->form) out = g->kind == GameKind::Test ? gl::test(b) : gl::dtest(b);
        break;
      }
      case GameKind::Choice:
      case GameKind::DChoice:
      case GameKind::Seq: {
        GamePtr l = game(g->left), r = game(g->right);
        if (l != g->left || r != g->right)
          out = g->kind == GameKind::Choice    ? gl::choice(l, r)
                : g->kind == GameKind::DChoice ? gl::dchoice(l, r)
                                                : gl::seq(l, r);
        break;
      }
      case GameKind::Star:
      case GameKind::DStar:
      case GameKind::Dual: {
        GamePtr b = game(g->left);
        if (b != g->left) out = g->kind == GameKind::Star ? gl::star(b) : g->kind == GameKind::DStar ? gl::dstar(b) : gl::dual(b);
        break;
      }
      case GameKind::Rec:
      case GameKind::CoRec: {
        GamePtr b = game(g->left);
        if (b != g->left) out = g->kind == GameKind::Rec ? gl::rec(g->name, b) : gl::corec(g->name, b);
        break;
      }
      case GameKind::System: {
        auto it = inner.find(g->system.get());
        if (it == inner.end()) {
          auto sys = std::make_shared<RecSystem>();
          sys->kind = g->system->kind;
          for (const auto& [x, body] : g->system->bindings) sys->bindings.emplace_back(x, game(body));
          it = inner.emplace(g->system.get(), sys).first;
        }
        out = eliminate(*it->second, g->index, fv);
        rep.fixpoint(expr_size(g), expr_size(out));
        break;
      }
      default: break;
    }
    gmemo.emplace(g.get(), out);
    return out;
  }
};

}  // namespace

GamePtr bekic_eliminate(const RecSystem& sys, std::size_t i) {
  std::set<std::string> vars;
  for (const auto& b : sys.bindings) vars.insert(b.first);
  if (vars.size() != sys.bindings.size()) throw Error(ErrorKind::Usage, "system variables are not distinct");
  for (const auto& b : sys.bindings)
    for (const auto& y : bound_vars(b.second))
      if (vars.count(y)) throw Error(ErrorKind::Usage, "system body rebinds " + y);
  // Inner systems first, so the result holds no System node.
  detail::ReportScope rep(nullptr, "bekic", 0);
  Eliminator el(rep);
  RecSystem flat_sys{sys.kind, {}};
  for (const auto& [x, body] : sys.bindings) flat_sys.bindings.emplace_back(x, el.game(body));
  return eliminate(flat_sys, i, el.fv);
}

GamePtr eliminate_systems(const GamePtr& g, TranslationReport* r) {
  detail::ReportScope rep(r, "bekic", expr_size(g));
  Eliminator el(rep);
  GamePtr out = el.game(g);
  rep.finish(expr_size(out));
  return out;
}

FormPtr eliminate_systems(const FormPtr& f, TranslationReport* r) {
  detail::ReportScope rep(r, "bekic", expr_size(f));
  Eliminator el(rep);
  FormPtr out = el.form(f);
  rep.finish(expr_size(out));
  return out;
}

}  // namespace glwb
