#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "eval_common.hpp"
#include "glwb/error.hpp"
#include "glwb/semantics.hpp"

namespace glwb {
namespace {

using detail::Env;
using detail::Key;
using detail::Value;

class FlcEval {
 public:
  FlcEval(const FiniteStructure& s, const Valuation& I, EvalOptions o)
      : s_(s), n_(s.states()), full_(s.full().bits), o_(o) {
    detail::check_valuation_width(I, n_);
    for (const auto& [x, w] : I) env_.push(x, table_value(w.table()));
  }

  std::uint32_t at(const Flc* f, std::uint32_t a) {
    switch (f->kind) {
      case FlcKind::Id: return a;
      case FlcKind::True: return full_;
      case FlcKind::False: return 0;
      case FlcKind::Var: return env_.lookup(f->name).at(a);
      case FlcKind::Prop: return s_.prop(f->name).bits;
      case FlcKind::NegProp: return full_ & ~s_.prop(f->name).bits;
      case FlcKind::Or: return at(f->left.get(), a) | at(f->right.get(), a);
      case FlcKind::And: return at(f->left.get(), a) & at(f->right.get(), a);
      case FlcKind::Dia: return s_.apply(f->name, {at(f->left.get(), a)}).bits;
      case FlcKind::Box: return full_ & ~s_.apply(f->name, {full_ & ~at(f->left.get(), a)}).bits;
      case FlcKind::Chop: return at(f->left.get(), at(f->right.get(), a));
      case FlcKind::Mu:
      case FlcKind::Nu: return binder(f, a);
      case FlcKind::StarFix: return star(f, a);
    }
    return 0;
  }

 private:
  const FiniteStructure& s_;
  const int n_;
  const std::uint32_t full_;
  const EvalOptions o_;
  Env env_;
  std::uint64_t next_id_ = 1;
  std::unordered_map<const Flc*, std::vector<std::string>> fv_cache_;
  std::map<std::pair<const Flc*, std::string>, bool> pw_cache_;
  std::unordered_map<std::string, std::uint32_t> point_memo_;
  std::unordered_map<std::string, Value> table_memo_;

  std::uint32_t size() const { return 1u << n_; }

  Value table_value(std::vector<std::uint32_t> t) {
    Value v;
    v.table = std::make_shared<const std::vector<std::uint32_t>>(std::move(t));
    v.id = next_id_++;
    return v;
  }

  const std::vector<std::string>& fv(const Flc* f) {
    if (auto it = fv_cache_.find(f); it != fv_cache_.end()) return it->second;
    std::set<std::string> out;
    if (f->kind == FlcKind::Var) out.insert(f->name);
    if (f->left)
      for (const auto& x : fv(f->left.get())) out.insert(x);
    if (f->right)
      for (const auto& x : fv(f->right.get())) out.insert(x);
    if (f->kind == FlcKind::Mu || f->kind == FlcKind::Nu) out.erase(f->name);
    return fv_cache_[f] = std::vector<std::string>(out.begin(), out.end());
  }

  bool free_in(const std::string& x, const Flc* f) {
    const auto& v = fv(f);
    return std::binary_search(v.begin(), v.end(), x);
  }

  // x is evaluated only at the argument: never left of a chop or under a star,
  // and never inside a fixpoint computed over tables.
  bool pw(const std::string& x, const Flc* f) {
    if (!free_in(x, f)) return true;
    auto key = std::make_pair(f, x);
    if (auto it = pw_cache_.find(key); it != pw_cache_.end()) return it->second;
    bool ok = false;
    switch (f->kind) {
      case FlcKind::Var: ok = true; break;
      case FlcKind::Or:
      case FlcKind::And: ok = pw(x, f->left.get()) && pw(x, f->right.get()); break;
      case FlcKind::Dia:
      case FlcKind::Box: ok = pw(x, f->left.get()); break;
      case FlcKind::Chop: ok = !free_in(x, f->left.get()) && pw(x, f->right.get()); break;
      case FlcKind::Mu:
      case FlcKind::Nu: ok = pw(x, f->left.get()) && pointwise_binder(f); break;
      default: ok = false;
    }
    return pw_cache_[key] = ok;
  }

  bool pointwise_binder(const Flc* f) { return o_.pointwise && pw(f->name, f->left.get()); }

  Key base_key(const Flc* node) {
    Key k;
    k.add(static_cast<const void*>(node));
    for (const auto& x : fv(node)) k.add(env_.lookup(x).key());
    return k;
  }

  static void check_step(std::uint32_t before, std::uint32_t after, bool up) {
    bool ordered = up ? (before & ~after) == 0 : (after & ~before) == 0;
    if (!ordered) throw Error(ErrorKind::NonMonotone, up ? "lfp iteration shrank" : "gfp iteration grew");
  }

  std::uint32_t star(const Flc* f, std::uint32_t a) {
    const Flc* body = f->left.get();
    if (o_.pointwise) {
      std::uint32_t b = 0;
      for (;;) {
        std::uint32_t nb = a | at(body, b);
        check_step(b, nb, true);
        if (nb == b) return b;
        b = nb;
      }
    }
    std::string key = base_key(f).str();
    auto it = table_memo_.find(key);
    if (it == table_memo_.end()) {
      std::vector<std::uint32_t> u(size(), 0);
      for (;;) {
        std::vector<std::uint32_t> nu(size());
        for (std::uint32_t x = 0; x < size(); ++x) {
          nu[x] = x | at(body, u[x]);
          check_step(u[x], nu[x], true);
        }
        if (nu == u) break;
        u = std::move(nu);
      }
      it = table_memo_.emplace(std::move(key), table_value(std::move(u))).first;
    }
    return it->second.at(a);
  }

  std::uint32_t binder(const Flc* f, std::uint32_t a) {
    const bool up = f->kind == FlcKind::Mu;
    const Flc* body = f->left.get();
    if (pointwise_binder(f)) {
      std::string key = base_key(f).add(a).str();
      if (auto it = point_memo_.find(key); it != point_memo_.end()) return it->second;
      std::uint32_t b = up ? 0 : full_;
      for (;;) {
        Value v;
        v.bits = b;
        env_.push(f->name, v);
        std::uint32_t nb = at(body, a);
        env_.pop();
        check_step(b, nb, up);
        if (nb == b) break;
        b = nb;
      }
      point_memo_.emplace(std::move(key), b);
      return b;
    }
    std::string key = base_key(f).str();
    auto it = table_memo_.find(key);
    if (it == table_memo_.end()) {
      Value u = table_value(std::vector<std::uint32_t>(size(), up ? 0 : full_));
      for (;;) {
        std::vector<std::uint32_t> nu(size());
        env_.push(f->name, u);
        for (std::uint32_t x = 0; x < size(); ++x) nu[x] = at(body, x);
        env_.pop();
        for (std::uint32_t x = 0; x < size(); ++x) check_step((*u.table)[x], nu[x], up);
        if (nu == *u.table) break;
        u = table_value(std::move(nu));
      }
      it = table_memo_.emplace(std::move(key), u).first;
    }
    return it->second.at(a);
  }
};

}  // namespace

Effectivity eval_flc(const FlcPtr& f, const FiniteStructure& s, const Valuation& I, EvalOptions o) {
  FlcEval ev(s, I, o);
  std::vector<std::uint32_t> t(std::size_t{1} << s.states());
  for (std::uint32_t a = 0; a < t.size(); ++a) t[a] = ev.at(f.get(), a);
  return Effectivity(s.states(), std::move(t), s.cap());
}

StateSet eval_flc_at(const FlcPtr& f, const FiniteStructure& s, StateSet a, const Valuation& I, EvalOptions o) {
  FlcEval ev(s, I, o);
  return {ev.at(f.get(), a.bits)};
}

StateSet flc_truth(const FlcPtr& f, const FiniteStructure& s, const Valuation& I, EvalOptions o) {
  return eval_flc_at(f, s, StateSet{}, I, o);
}

}  // namespace glwb
