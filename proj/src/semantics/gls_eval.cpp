#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "glwb/error.hpp"
#include "glwb/semantics.hpp"
#include "glwb/syntax.hpp"

namespace glwb {

ContextSpace::ContextSpace(std::vector<std::string> alphabet) : alphabet_(std::move(alphabet)) {
  std::sort(alphabet_.begin(), alphabet_.end());
  alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()), alphabet_.end());
  if (alphabet_.size() > 12) throw Error(ErrorKind::BudgetExceeded, "context alphabet above 12 atoms");
  size_ = 1;
  for (std::size_t i = 0; i < alphabet_.size(); ++i) {
    pow3_.push_back(size_);
    size_ *= 3;
  }
  dual_.resize(size_);
  for (std::size_t c = 0; c < size_; ++c) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < alphabet_.size(); ++i) {
      auto o = owner(c, static_cast<int>(i));
      Owner flipped = o == Owner::Angel ? Owner::Demon : o == Owner::Demon ? Owner::Angel : Owner::Neither;
      d += static_cast<std::size_t>(flipped) * pow3_[i];
    }
    dual_[c] = d;
  }
}

int ContextSpace::index_of(const std::string& a) const {
  auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), a);
  if (it == alphabet_.end() || *it != a) return -1;
  return static_cast<int>(it - alphabet_.begin());
}

std::string ContextSpace::describe(std::size_t c) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < alphabet_.size(); ++i) {
    auto o = owner(c, static_cast<int>(i));
    if (o == Owner::Neither) continue;
    if (!first) out += ",";
    out += alphabet_[i] + (o == Owner::Angel ? ":A" : ":D");
    first = false;
  }
  return out + "}";
}

CSet sabotage_complement(const CSet& a, const ContextSpace& cs, int n) {
  const std::uint32_t full = StateSet::full(n).bits;
  CSet out(cs.size());
  for (std::size_t c = 0; c < cs.size(); ++c) out[c] = full & ~a[cs.dual(c)];
  return out;
}

GlsEvaluator::GlsEvaluator(const FiniteStructure& s, std::vector<std::string> alphabet, GlsOptions o)
    : s_(s), cs_(std::move(alphabet)), o_(o) {
  const std::uint64_t cost = (std::uint64_t{1} << s.states()) * cs_.size();
  if (cost > o_.budget)
    throw Error(ErrorKind::CapExceeded, "2^" + std::to_string(s.states()) + " * 3^" +
                                            std::to_string(cs_.alphabet().size()) + " exceeds the budget");
}

int GlsEvaluator::atom_index(const std::string& a) const { return cs_.index_of(a); }

CSet GlsEvaluator::formula(const FormPtr& f) {
  auto missing = sabotage_atoms(f);
  for (const auto& a : missing)
    if (cs_.index_of(a) < 0) throw Error(ErrorKind::AlphabetTooSmall, "trapped atom " + a + " not in the alphabet");
  if (!o_.normalize) return form_raw(f);
  FormPtr h = normal_form(f);
  keep_.push_back(h);
  return form_raw(h);
}

CSet GlsEvaluator::game(const GamePtr& g, const CSet& u) {
  for (const auto& a : sabotage_atoms(g))
    if (cs_.index_of(a) < 0) throw Error(ErrorKind::AlphabetTooSmall, "trapped atom " + a + " not in the alphabet");
  if (u.size() != cs_.size()) throw Error(ErrorKind::WidthMismatch, "context set width");
  if (!o_.normalize) return game_raw(g, u);
  GamePtr h = normal_form(g);
  return game_raw(h, u);
}

CSet GlsEvaluator::form_raw(const FormPtr& f) {
  if (auto it = cache_.find(f.get()); it != cache_.end()) return it->second;
  const int n = s_.states();
  const std::uint32_t full = StateSet::full(n).bits;
  CSet out(cs_.size(), 0);
  switch (f->kind) {
    case FormKind::True: std::fill(out.begin(), out.end(), full); break;
    case FormKind::False: break;
    case FormKind::Prop: std::fill(out.begin(), out.end(), s_.prop(f->name).bits); break;
    case FormKind::NegProp: std::fill(out.begin(), out.end(), full & ~s_.prop(f->name).bits); break;
    case FormKind::Neg: out = sabotage_complement(form_raw(f->left), cs_, n); break;
    case FormKind::Or:
    case FormKind::And: {
      CSet l = form_raw(f->left), r = form_raw(f->right);
      for (std::size_t c = 0; c < out.size(); ++c) out[c] = f->kind == FormKind::Or ? l[c] | r[c] : l[c] & r[c];
      break;
    }
    case FormKind::Diamond: out = game_raw(f->game, form_raw(f->left)); break;
  }
  keep_.push_back(f);
  cache_.emplace(f.get(), out);
  return out;
}

CSet GlsEvaluator::game_raw(const GamePtr& g, const CSet& u) {
  const int n = s_.states();
  const std::uint32_t full = StateSet::full(n).bits;
  const std::size_t m = cs_.size();
  CSet out(m, 0);
  switch (g->kind) {
    case GameKind::Atom:
    case GameKind::DualAtom: {
      const bool dual = g->kind == GameKind::DualAtom;
      const int i = atom_index(g->name);
      const GameInterp& w = s_.game(g->name);
      for (std::size_t c = 0; c < m; ++c) {
        Owner o = i < 0 ? Owner::Neither : cs_.owner(c, i);
        switch (o) {
          case Owner::Neither:
            out[c] = dual ? full & ~w.apply({full & ~u[c]}).bits : w.apply({u[c]}).bits;
            break;
          // The owner skips the trapped game; the opponent has already lost it.
          case Owner::Angel: out[c] = dual ? full : u[c]; break;
          case Owner::Demon: out[c] = dual ? u[c] : 0; break;
        }
      }
      return out;
    }
    case GameKind::TrapA:
    case GameKind::TrapD: {
      const int i = atom_index(g->name);
      const Owner o = g->kind == GameKind::TrapA ? Owner::Angel : Owner::Demon;
      for (std::size_t c = 0; c < m; ++c) out[c] = u[cs_.with(c, i, o)];
      return out;
    }
    case GameKind::Test: {
      CSet p = form_raw(g->form);
      for (std::size_t c = 0; c < m; ++c) out[c] = p[c] & u[c];
      return out;
    }
    case GameKind::DTest: {
      CSet p = sabotage_complement(form_raw(g->form), cs_, n);
      for (std::size_t c = 0; c < m; ++c) out[c] = p[c] | u[c];
      return out;
    }
    case GameKind::Choice:
    case GameKind::DChoice: {
      CSet l = game_raw(g->left, u), r = game_raw(g->right, u);
      for (std::size_t c = 0; c < m; ++c) out[c] = g->kind == GameKind::Choice ? l[c] | r[c] : l[c] & r[c];
      return out;
    }
    case GameKind::Seq: return game_raw(g->left, game_raw(g->right, u));
    case GameKind::Star:
    case GameKind::DStar: {
      const bool up = g->kind == GameKind::Star;
      CSet b(m, up ? 0 : full);
      for (;;) {
        CSet step = game_raw(g->left, b);
        CSet nb(m);
        for (std::size_t c = 0; c < m; ++c) {
          nb[c] = up ? u[c] | step[c] : u[c] & step[c];
          bool ordered = up ? (b[c] & ~nb[c]) == 0 : (nb[c] & ~b[c]) == 0;
          if (!ordered) throw Error(ErrorKind::NonMonotone, "sabotage loop iteration is not monotone");
        }
        if (nb == b) return b;
        b = std::move(nb);
      }
    }
    case GameKind::Dual:
      return sabotage_complement(game_raw(g->left, sabotage_complement(u, cs_, n)), cs_, n);
    default:
      throw Error(ErrorKind::Usage, "the sabotage evaluator has no clause for " + print(g));
  }
}

CSet eval_gls_formula(const FormPtr& f, const FiniteStructure& s, const std::vector<std::string>& alphabet,
                      GlsOptions o) {
  GlsEvaluator ev(s, alphabet, o);
  return ev.formula(f);
}

StateSet gls_truth(const FormPtr& f, const FiniteStructure& s, GlsOptions o) {
  auto atoms = sabotage_atoms(f);
  CSet v = eval_gls_formula(f, s, {atoms.begin(), atoms.end()}, o);
  return {v[0]};
}

}  // namespace glwb
