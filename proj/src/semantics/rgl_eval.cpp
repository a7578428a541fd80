#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "eval_common.hpp"
#include "glwb/error.hpp"
#include "glwb/semantics.hpp"
#include "glwb/syntax.hpp"

namespace glwb {
namespace {

using detail::Env;
using detail::Key;
using detail::Value;

class RglEval {
 public:
  RglEval(const FiniteStructure& s, const Valuation& I, EvalOptions o)
      : s_(s), n_(s.states()), full_(s.full().bits), o_(o) {
    detail::check_valuation_width(I, n_);
    for (const auto& [x, w] : I) env_.push(x, table_value(w.table()));
  }

  std::uint32_t game(const Game* g, std::uint32_t a) {
    switch (g->kind) {
      case GameKind::Atom: return s_.apply(g->name, {a}).bits;
      case GameKind::DualAtom: return full_ & ~s_.apply(g->name, {full_ & ~a}).bits;
      case GameKind::Var: return env_.lookup(g->name).at(a);
      case GameKind::DualVar: return full_ & ~env_.lookup(g->name).at(full_ & ~a);
      case GameKind::Test: return form(g->form.get()) & a;
      case GameKind::DTest: return (full_ & ~form(g->form.get())) | a;
      case GameKind::Choice: return game(g->left.get(), a) | game(g->right.get(), a);
      case GameKind::DChoice: return game(g->left.get(), a) & game(g->right.get(), a);
      case GameKind::Seq: return game(g->left.get(), game(g->right.get(), a));
      case GameKind::Star:
      case GameKind::DStar: return star(g, a);
      case GameKind::Dual: return full_ & ~game(g->left.get(), full_ & ~a);
      case GameKind::Rec:
      case GameKind::CoRec: return binder(g, a);
      case GameKind::System: return system(g, a);
      case GameKind::TrapA:
      case GameKind::TrapD:
        throw Error(ErrorKind::Usage, "trap game ~" + g->name + " needs the sabotage evaluator");
    }
    return 0;
  }

  std::uint32_t form(const Form* f) {
    const bool closed = fv(f).empty();
    if (closed)
      if (auto it = form_cache_.find(f); it != form_cache_.end()) return it->second;
    std::uint32_t v = 0;
    switch (f->kind) {
      case FormKind::True: v = full_; break;
      case FormKind::False: v = 0; break;
      case FormKind::Prop: v = s_.prop(f->name).bits; break;
      case FormKind::NegProp: v = full_ & ~s_.prop(f->name).bits; break;
      case FormKind::Neg: v = full_ & ~form(f->left.get()); break;
      case FormKind::Or: v = form(f->left.get()) | form(f->right.get()); break;
      case FormKind::And: v = form(f->left.get()) & form(f->right.get()); break;
      case FormKind::Diamond: v = game(f->game.get(), form(f->left.get())); break;
    }
    if (closed) form_cache_.emplace(f, v);
    return v;
  }

 private:
  const FiniteStructure& s_;
  const int n_;
  const std::uint32_t full_;
  const EvalOptions o_;
  Env env_;
  std::uint64_t next_id_ = 1;

  std::unordered_map<const Form*, std::uint32_t> form_cache_;
  std::unordered_map<const void*, std::vector<std::string>> fv_cache_;
  std::map<std::pair<const void*, std::string>, bool> pw_cache_;
  std::unordered_map<std::string, std::uint32_t> point_memo_;
  std::unordered_map<std::string, Value> table_memo_;
  std::unordered_map<std::string, std::vector<std::uint32_t>> system_point_memo_;
  std::unordered_map<std::string, std::vector<Value>> system_table_memo_;

  std::uint32_t size() const { return 1u << n_; }

  Value table_value(std::vector<std::uint32_t> t) {
    Value v;
    v.table = std::make_shared<const std::vector<std::uint32_t>>(std::move(t));
    v.id = next_id_++;
    return v;
  }
  static Value const_value(std::uint32_t b) {
    Value v;
    v.bits = b;
    return v;
  }

  // ---- free variables, memoized per node ----

  static void merge(std::vector<std::string>& into, const std::vector<std::string>& from) {
    std::set<std::string> s(into.begin(), into.end());
    s.insert(from.begin(), from.end());
    into.assign(s.begin(), s.end());
  }

  const std::vector<std::string>& fv(const Form* f) {
    if (auto it = fv_cache_.find(f); it != fv_cache_.end()) return it->second;
    std::vector<std::string> out;
    if (f->left) merge(out, fv(f->left.get()));
    if (f->right) merge(out, fv(f->right.get()));
    if (f->game) merge(out, fv(f->game.get()));
    return fv_cache_[f] = std::move(out);
  }

  const std::vector<std::string>& fv_system(const RecSystem* sys) {
    if (auto it = fv_cache_.find(sys); it != fv_cache_.end()) return it->second;
    std::vector<std::string> all;
    for (const auto& b : sys->bindings) merge(all, fv(b.second.get()));
    std::vector<std::string> out;
    for (const auto& x : all) {
      bool bound = false;
      for (const auto& b : sys->bindings) bound = bound || b.first == x;
      if (!bound) out.push_back(x);
    }
    return fv_cache_[sys] = std::move(out);
  }

  const std::vector<std::string>& fv(const Game* g) {
    if (auto it = fv_cache_.find(g); it != fv_cache_.end()) return it->second;
    std::vector<std::string> out;
    switch (g->kind) {
      case GameKind::Var:
      case GameKind::DualVar: out.push_back(g->name); break;
      case GameKind::Rec:
      case GameKind::CoRec:
        for (const auto& x : fv(g->left.get()))
          if (x != g->name) out.push_back(x);
        break;
      case GameKind::System: out = fv_system(g->system.get()); break;
      default:
        if (g->form) merge(out, fv(g->form.get()));
        if (g->left) merge(out, fv(g->left.get()));
        if (g->right) merge(out, fv(g->right.get()));
    }
    return fv_cache_[g] = std::move(out);
  }

  bool free_in(const std::string& x, const Game* g) {
    const auto& v = fv(g);
    return std::binary_search(v.begin(), v.end(), x);
  }

  // x is only ever evaluated at the argument of g: x does not occur left of a
  // composition, under a loop, a dual, or a test, nor inside a fixpoint that is
  // itself evaluated over tables.
  bool pw(const std::string& x, const Game* g) {
    if (!free_in(x, g)) return true;
    auto key = std::make_pair(static_cast<const void*>(g), x);
    if (auto it = pw_cache_.find(key); it != pw_cache_.end()) return it->second;
    bool ok = false;
    switch (g->kind) {
      case GameKind::Var: ok = true; break;
      case GameKind::Choice:
      case GameKind::DChoice: ok = pw(x, g->left.get()) && pw(x, g->right.get()); break;
      case GameKind::Seq: ok = !free_in(x, g->left.get()) && pw(x, g->right.get()); break;
      case GameKind::Rec:
      case GameKind::CoRec: ok = pw(x, g->left.get()) && pointwise_binder(g); break;
      case GameKind::System: {
        ok = pointwise_system(g->system.get());
        for (const auto& b : g->system->bindings) ok = ok && pw(x, b.second.get());
        break;
      }
      default: ok = false;
    }
    return pw_cache_[key] = ok;
  }

  bool pointwise_binder(const Game* g) { return o_.pointwise && pw(g->name, g->left.get()); }

  bool pointwise_system(const RecSystem* sys) {
    if (!o_.pointwise) return false;
    for (const auto& b : sys->bindings)
      for (const auto& x : sys->bindings)
        if (!pw(x.first, b.second.get())) return false;
    return true;
  }

  Key base_key(const void* node, const std::vector<std::string>& vars) {
    Key k;
    k.add(node);
    for (const auto& x : vars) k.add(env_.lookup(x).key());
    return k;
  }

  void check_step(std::uint32_t before, std::uint32_t after, bool up) const {
    bool ordered = up ? (before & ~after) == 0 : (after & ~before) == 0;
    if (!ordered) throw Error(ErrorKind::NonMonotone, up ? "lfp iteration shrank" : "gfp iteration grew");
  }

  void check_step(const std::vector<std::uint32_t>& before, const std::vector<std::uint32_t>& after, bool up) const {
    for (std::size_t i = 0; i < before.size(); ++i) check_step(before[i], after[i], up);
  }

  // ---- loops ----

  std::uint32_t star(const Game* g, std::uint32_t a) {
    const bool up = g->kind == GameKind::Star;
    const Game* body = g->left.get();
    if (o_.pointwise) {
      std::uint32_t b = up ? 0 : full_;
      for (;;) {
        std::uint32_t nb = up ? (a | game(body, b)) : (a & game(body, b));
        check_step(b, nb, up);
        if (nb == b) return b;
        b = nb;
      }
    }
    std::string key = base_key(g, fv(g)).str();
    auto it = table_memo_.find(key);
    if (it == table_memo_.end()) {
      std::vector<std::uint32_t> u(size(), up ? 0 : full_);
      for (;;) {
        std::vector<std::uint32_t> nu(size());
        for (std::uint32_t x = 0; x < size(); ++x) nu[x] = up ? (x | game(body, u[x])) : (x & game(body, u[x]));
        check_step(u, nu, up);
        if (nu == u) break;
        u = std::move(nu);
      }
      it = table_memo_.emplace(std::move(key), table_value(std::move(u))).first;
    }
    return it->second.at(a);
  }

  std::uint32_t binder(const Game* g, std::uint32_t a) {
    const bool up = g->kind == GameKind::Rec;
    const Game* body = g->left.get();
    if (pointwise_binder(g)) {
      std::string key = base_key(g, fv(g)).add(a).str();
      if (auto it = point_memo_.find(key); it != point_memo_.end()) return it->second;
      std::uint32_t b = up ? 0 : full_;
      for (;;) {
        env_.push(g->name, const_value(b));
        std::uint32_t nb = game(body, a);
        env_.pop();
        check_step(b, nb, up);
        if (nb == b) break;
        b = nb;
      }
      point_memo_.emplace(std::move(key), b);
      return b;
    }
    std::string key = base_key(g, fv(g)).str();
    auto it = table_memo_.find(key);
    if (it == table_memo_.end()) {
      Value u = table_value(std::vector<std::uint32_t>(size(), up ? 0 : full_));
      for (;;) {
        std::vector<std::uint32_t> nu(size());
        env_.push(g->name, u);
        for (std::uint32_t x = 0; x < size(); ++x) nu[x] = game(body, x);
        env_.pop();
        check_step(*u.table, nu, up);
        if (nu == *u.table) break;
        u = table_value(std::move(nu));
      }
      it = table_memo_.emplace(std::move(key), u).first;
    }
    return it->second.at(a);
  }

  std::uint32_t system(const Game* g, std::uint32_t a) {
    const RecSystem* sys = g->system.get();
    const bool up = sys->kind == FixKind::Mu;
    const std::size_t m = sys->bindings.size();
    if (pointwise_system(sys)) {
      std::string key = base_key(sys, fv_system(sys)).add(a).str();
      auto it = system_point_memo_.find(key);
      if (it == system_point_memo_.end()) {
        std::vector<std::uint32_t> b(m, up ? 0 : full_);
        for (;;) {
          for (std::size_t l = 0; l < m; ++l) env_.push(sys->bindings[l].first, const_value(b[l]));
          std::vector<std::uint32_t> nb(m);
          for (std::size_t j = 0; j < m; ++j) nb[j] = game(sys->bindings[j].second.get(), a);
          env_.pop(m);
          check_step(b, nb, up);
          if (nb == b) break;
          b = std::move(nb);
        }
        it = system_point_memo_.emplace(std::move(key), std::move(b)).first;
      }
      return it->second.at(g->index);
    }
    std::string key = base_key(sys, fv_system(sys)).str();
    auto it = system_table_memo_.find(key);
    if (it == system_table_memo_.end()) {
      std::vector<Value> u;
      for (std::size_t l = 0; l < m; ++l) u.push_back(table_value(std::vector<std::uint32_t>(size(), up ? 0 : full_)));
      for (;;) {
        for (std::size_t l = 0; l < m; ++l) env_.push(sys->bindings[l].first, u[l]);
        std::vector<std::vector<std::uint32_t>> nu(m, std::vector<std::uint32_t>(size()));
        for (std::size_t j = 0; j < m; ++j)
          for (std::uint32_t x = 0; x < size(); ++x) nu[j][x] = game(sys->bindings[j].second.get(), x);
        env_.pop(m);
        bool same = true;
        for (std::size_t j = 0; j < m; ++j) {
          check_step(*u[j].table, nu[j], up);
          same = same && nu[j] == *u[j].table;
        }
        if (same) break;
        for (std::size_t j = 0; j < m; ++j) u[j] = table_value(std::move(nu[j]));
      }
      it = system_table_memo_.emplace(std::move(key), std::move(u)).first;
    }
    return it->second[g->index].at(a);
  }
};

}  // namespace

Effectivity eval_rgl_game(const GamePtr& g, const FiniteStructure& s, const Valuation& I, EvalOptions o) {
  GamePtr h = o.normalize ? normal_form(g) : g;
  RglEval ev(s, I, o);
  std::vector<std::uint32_t> t(std::size_t{1} << s.states());
  for (std::uint32_t a = 0; a < t.size(); ++a) t[a] = ev.game(h.get(), a);
  return Effectivity(s.states(), std::move(t), s.cap());
}

StateSet eval_rgl_game_at(const GamePtr& g, const FiniteStructure& s, StateSet a, const Valuation& I,
                          EvalOptions o) {
  GamePtr h = o.normalize ? normal_form(g) : g;
  RglEval ev(s, I, o);
  return {ev.game(h.get(), a.bits)};
}

StateSet eval_rgl_formula(const FormPtr& f, const FiniteStructure& s, const Valuation& I, EvalOptions o) {
  FormPtr h = o.normalize ? normal_form(f) : f;
  RglEval ev(s, I, o);
  return {ev.form(h.get())};
}

Effectivity eval_vectorial(const RecSystem& sys, const FiniteStructure& s, const Valuation& I, std::size_t i,
                           EvalOptions o) {
  if (i >= sys.bindings.size()) throw Error(ErrorKind::Usage, "system component out of range");
  return eval_rgl_game(gl::component(std::make_shared<RecSystem>(sys), i), s, I, o);
}

}  // namespace glwb
