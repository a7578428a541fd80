#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "glwb/error.hpp"
#include "glwb/workbench.hpp"

namespace glwb {

FiniteStructure random_structure(const StructureConfig& c, Rng& rng) {
  FiniteStructure s(c.states, c.cap);
  for (const auto& p : c.props) {
    StateSet v;
    for (int i = 0; i < c.states; ++i)
      if (coin(rng, 0.5)) v = v | StateSet::single(i);
    s.set_prop(p, v);
  }
  for (const auto& a : c.atoms) {
    if (c.kind == StructureKind::Kripke) {
      std::vector<std::pair<int, int>> edges;
      for (int x = 0; x < c.states; ++x)
        for (int y = 0; y < c.states; ++y)
          if (coin(rng, c.density)) edges.emplace_back(x, y);
      s.set_relation(a, edges);
    } else {
      std::vector<std::vector<StateSet>> fam(c.states);
      for (int x = 0; x < c.states; ++x) {
        auto k = pick(rng, static_cast<std::uint64_t>(c.max_neighbourhoods) + 1);
        for (std::uint64_t j = 0; j < k; ++j) fam[x].push_back({static_cast<std::uint32_t>(pick(rng, 1ull << c.states))});
      }
      s.set_neighbourhoods(a, fam);
    }
  }
  return s;
}

FiniteStructure random_structure(int n, StructureKind kind, std::uint64_t seed) {
  StructureConfig c;
  c.states = n;
  c.kind = kind;
  if (n > c.cap) throw Error(ErrorKind::CapExceeded, std::to_string(n) + " states");
  Rng rng(seed);
  return random_structure(c, rng);
}

namespace {

class GameLogicGen {
 public:
  GameLogicGen(Fragment tag, const FormulaConfig& c, Rng& rng) : tag_(tag), c_(c), rng_(rng) {
    switch (tag) {
      case Fragment::GL:
      case Fragment::GLs:
      case Fragment::RGL:
      case Fragment::rlGL:
      case Fragment::PoorTest: break;
      default: throw Error(ErrorKind::Usage, std::string("no game-logic generator for ") + fragment_name(tag));
    }
  }

  FormPtr formula(int k) {
    if (k <= 1) return literal();
    enum { Or, And, Dia, Neg } options[4];
    int n = 0;
    if (k >= 3) options[n++] = Or, options[n++] = And, options[n++] = Dia, options[n++] = Dia;
    if (c_.raw) options[n++] = Neg;
    if (n == 0) return literal();
    switch (options[pick(rng_, n)]) {
      case Or:
      case And: {
        int l = 1 + static_cast<int>(pick(rng_, k - 2));
        FormPtr a = formula(l), b = formula(k - 1 - l);
        return coin(rng_, 0.5) ? gl::lor(a, b) : gl::land(a, b);
      }
      case Dia: {
        int g = 1 + static_cast<int>(pick(rng_, k - 2));
        GamePtr game = closed_game(g);
        return gl::dia(game, formula(k - 1 - g));
      }
      case Neg: return gl::neg(formula(k - 1));
    }
    return literal();
  }

  GamePtr closed_game(int k) {
    auto saved = std::move(scope_);
    scope_.clear();
    GamePtr g = game(k, true, false);
    scope_ = std::move(saved);
    return g;
  }

 private:
  Fragment tag_;
  const FormulaConfig& c_;
  Rng& rng_;
  std::vector<std::pair<std::string, bool>> scope_;  // bound variable, dual parity at its binder
  int fixpoints_ = 0;
  int counter_ = 0;

  bool recursive() const { return tag_ == Fragment::RGL || tag_ == Fragment::rlGL; }
  bool traps() const { return tag_ == Fragment::GLs; }

  const std::string& any(const std::vector<std::string>& v) { return v[pick(rng_, v.size())]; }

  FormPtr literal() {
    switch (pick(rng_, 6)) {
      case 0: return gl::tt();
      case 1: return gl::ff();
      case 2:
      case 3: return gl::prop(any(c_.props));
      default: return gl::neg_prop(any(c_.props));
    }
  }

  GamePtr leaf(bool vars_ok, bool parity) {
    std::vector<const std::pair<std::string, bool>*> usable;
    if (vars_ok)
      for (const auto& e : scope_)
        if (e.second == parity) usable.push_back(&e);
    for (;;) {
      switch (pick(rng_, 5)) {
        case 0:
        case 1: return gl::atom(any(c_.atoms));
        case 2: return gl::dual_atom(any(c_.atoms));
        case 3:
          if (traps() && !c_.sabotage.empty())
            return coin(rng_, 0.5) ? gl::trap_a(any(c_.sabotage)) : gl::trap_d(any(c_.sabotage));
          break;
        case 4:
          if (!usable.empty()) return gl::var(usable[pick(rng_, usable.size())]->first);
          break;
      }
    }
  }

  FormPtr test_body(int k) {
    if (tag_ == Fragment::PoorTest || k <= 1) return literal();
    auto saved = std::move(scope_);
    scope_.clear();
    FormPtr f = formula(k);
    scope_ = std::move(saved);
    return f;
  }

  GamePtr game(int k, bool vars_ok, bool parity) {
    if (k <= 1) return leaf(vars_ok, parity);
    enum Op { Choice, DChoice, Seq, Star, DStar, Test, DTest, Rec, CoRec, Dual };
    std::vector<Op> ops;
    if (k >= 3) ops.insert(ops.end(), {Choice, DChoice, Seq, Seq});
    ops.insert(ops.end(), {Star, DStar, Test, DTest});
    if (recursive() && fixpoints_ < c_.max_fixpoints) ops.insert(ops.end(), {Rec, CoRec, Rec, CoRec});
    if (c_.raw) ops.push_back(Dual);
    const bool rl_only = tag_ != Fragment::RGL;
    switch (ops[pick(rng_, ops.size())]) {
      case Choice:
      case DChoice: {
        int l = 1 + static_cast<int>(pick(rng_, k - 2));
        GamePtr a = game(l, vars_ok, parity), b = game(k - 1 - l, vars_ok, parity);
        return coin(rng_, 0.5) ? gl::choice(a, b) : gl::dchoice(a, b);
      }
      case Seq: {
        int l = 1 + static_cast<int>(pick(rng_, k - 2));
        GamePtr a = game(l, vars_ok && !rl_only, parity);
        return gl::seq(a, game(k - 1 - l, vars_ok, parity));
      }
      case Star: return gl::star(game(k - 1, vars_ok && !rl_only, parity));
      case DStar: return gl::dstar(game(k - 1, vars_ok && !rl_only, parity));
      case Test: return gl::test(test_body(k - 1));
      case DTest: return gl::dtest(test_body(k - 1));
      case Rec:
      case CoRec: {
        ++fixpoints_;
        std::string x = "x" + std::to_string(counter_++);
        // Where outer variables are banned, the body may still use its own.
        auto saved = scope_;
        if (!vars_ok) scope_.clear();
        scope_.emplace_back(x, parity);
        GamePtr body = game(k - 1, true, parity);
        scope_ = std::move(saved);
        return coin(rng_, 0.5) ? gl::rec(x, body) : gl::corec(x, body);
      }
      case Dual: return gl::dual(game(k - 1, vars_ok, !parity));
    }
    return leaf(vars_ok, parity);
  }
};

class FlcGen {
 public:
  FlcGen(Fragment tag, const FormulaConfig& c, Rng& rng, bool full) : tag_(tag), c_(c), rng_(rng), full_(full) {
    if (!full && tag != Fragment::Lmu && tag != Fragment::Lstar && tag != Fragment::Lsep)
      throw Error(ErrorKind::Usage, std::string("no FLC generator for ") + fragment_name(tag));
  }

  FlcPtr gen(int k) {
    if (k <= 1) return leaf();
    enum Op { Or, And, Dia, Box, Mu, Nu, Chop, Star };
    std::vector<Op> ops;
    if (k >= 3) ops.insert(ops.end(), {Or, And});
    ops.insert(ops.end(), {Dia, Box});
    const bool fix_ok = fixpoints_ < c_.max_fixpoints;
    if (fix_ok && (full_ || tag_ == Fragment::Lmu)) ops.insert(ops.end(), {Mu, Nu});
    if (fix_ok && !full_ && tag_ == Fragment::Lsep && k >= 4) ops.insert(ops.end(), {Mu, Nu, Mu, Nu});
    if (full_ || tag_ == Fragment::Lstar) {
      if (k >= 3) ops.push_back(Chop);
      ops.push_back(Star);
    }
    switch (ops[pick(rng_, ops.size())]) {
      case Or:
      case And: {
        int l = 1 + static_cast<int>(pick(rng_, k - 2));
        FlcPtr a = gen(l), b = gen(k - 1 - l);
        return coin(rng_, 0.5) ? flc::lor(a, b) : flc::land(a, b);
      }
      case Dia: return flc::dia(any(c_.atoms), gen(k - 1));
      case Box: return flc::box(any(c_.atoms), gen(k - 1));
      case Mu:
      case Nu: {
        ++fixpoints_;
        const bool mu = coin(rng_, 0.5);
        std::string x = "x" + std::to_string(counter_++);
        if (!full_ && tag_ == Fragment::Lsep) return separable(x, mu, k - 1);
        scope_.push_back(x);
        FlcPtr body = gen(k - 1);
        scope_.pop_back();
        return mu ? flc::mu(x, body) : flc::nu(x, body);
      }
      case Chop: {
        int l = 1 + static_cast<int>(pick(rng_, k - 2));
        FlcPtr a = gen(l);
        return flc::chop(a, gen(k - 1 - l));
      }
      case Star: return flc::star(gen(k - 1));
    }
    return leaf();
  }

 private:
  Fragment tag_;
  const FormulaConfig& c_;
  Rng& rng_;
  bool full_;
  std::vector<std::string> scope_;
  int fixpoints_ = 0;
  int counter_ = 0;

  const std::string& any(const std::vector<std::string>& v) { return v[pick(rng_, v.size())]; }

  FlcPtr leaf() {
    for (;;) {
      switch (pick(rng_, 7)) {
        case 0: return flc::tt();
        case 1: return flc::ff();
        case 2:
        case 3: return flc::prop(any(c_.props));
        case 4: return flc::neg_prop(any(c_.props));
        case 5:
          if (full_ || tag_ == Fragment::Lstar) return flc::id();
          break;
        case 6:
          if (!scope_.empty()) return flc::var(scope_[pick(rng_, scope_.size())]);
          break;
      }
    }
  }

  // mu x.(psi \/ rho): psi has only x free, rho does not mention x.
  FlcPtr separable(const std::string& x, bool mu, int k) {
    int kp = 1 + static_cast<int>(pick(rng_, k - 2));
    auto saved = scope_;
    scope_ = {x};
    FlcPtr psi = gen(kp);
    scope_ = saved;
    FlcPtr rho = gen(k - 1 - kp);
    FlcPtr body = mu ? (coin(rng_, 0.5) ? flc::lor(psi, rho) : flc::lor(rho, psi))
                     : (coin(rng_, 0.5) ? flc::land(psi, rho) : flc::land(rho, psi));
    return mu ? flc::mu(x, body) : flc::nu(x, body);
  }
};

int target_size(const FormulaConfig& c, Rng& rng) {
  const int lo = std::min(3, c.max_nodes);
  return lo + static_cast<int>(pick(rng, static_cast<std::uint64_t>(c.max_nodes - lo + 1)));
}

}  // namespace

FormPtr random_formula(Fragment tag, const FormulaConfig& c, Rng& rng) {
  GameLogicGen g(tag, c, rng);
  return g.formula(target_size(c, rng));
}

GamePtr random_game(Fragment tag, const FormulaConfig& c, Rng& rng) {
  GameLogicGen g(tag, c, rng);
  return g.closed_game(target_size(c, rng));
}

FlcPtr random_flc(Fragment tag, const FormulaConfig& c, Rng& rng, bool full) {
  FlcGen g(tag, c, rng, full);
  return g.gen(target_size(c, rng));
}

}  // namespace glwb
