#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "glwb/error.hpp"
#include "glwb/proof.hpp"
#include "glwb/syntax.hpp"
#include "schema_util.hpp"

namespace glwb {
namespace {

struct SchemaInfo {
  SchemaId id;
  const char* name;
  bool rule;
};

const SchemaInfo kSchemas[] = {
    {SchemaId::Taut, "Taut", false},        {SchemaId::fp, "fp", false},
    {SchemaId::alpha, "alpha", false},      {SchemaId::MP, "MP", true},
    {SchemaId::MuRule, "MuRule", true},     {SchemaId::Mon_a, "Mon_a", true},
    {SchemaId::BoxAnd, "BoxAnd", false},    {SchemaId::K, "K", false},
    {SchemaId::BoxTop, "BoxTop", false},    {SchemaId::GNot, "GNot", false},
    {SchemaId::GTest, "GTest", false},      {SchemaId::GChoice, "GChoice", false},
    {SchemaId::GComp, "GComp", false},      {SchemaId::GFp, "GFp", false},
    {SchemaId::GAlpha, "GAlpha", false},    {SchemaId::GMuRule, "GMuRule", true},
    {SchemaId::GMon, "GMon", true},         {SchemaId::GStarFp, "GStarFp", false},
    {SchemaId::GStarMu, "GStarMu", true},   {SchemaId::SAsab, "SAsab", false},
    {SchemaId::SDsab, "SDsab", false},      {SchemaId::SBranch, "SBranch", false},
    {SchemaId::SSabP, "SSabP", false},      {SchemaId::SSabRem, "SSabRem", false},
    {SchemaId::SSabNotYet, "SSabNotYet", false}, {SchemaId::AFrak, "AFrak", false},
};

const SchemaInfo& info(SchemaId id) {
  for (const auto& s : kSchemas)
    if (s.id == id) return s;
  return kSchemas[0];
}

}  // namespace

const char* schema_name(SchemaId id) { return info(id).name; }

bool parse_schema(std::string_view s, SchemaId& out) {
  for (const auto& k : kSchemas)
    if (s == k.name) {
      out = k.id;
      return true;
    }
  return false;
}

bool is_rule(SchemaId id) { return info(id).rule; }

const std::vector<SchemaId>& all_schemas() {
  static const std::vector<SchemaId> v = [] {
    std::vector<SchemaId> r;
    for (const auto& s : kSchemas) r.push_back(s.id);
    return r;
  }();
  return v;
}

std::string print(const Formula& f) {
  return std::visit([](const auto& p) { return print(p); }, f);
}

bool equal(const Formula& a, const Formula& b) {
  if (a.index() != b.index()) return false;
  if (auto* fa = std::get_if<FormPtr>(&a)) return equal(*fa, std::get<FormPtr>(b));
  return equal(std::get<FlcPtr>(a), std::get<FlcPtr>(b));
}

namespace meta {
MetaValue form(FormPtr f) {
  MetaValue v;
  v.sort = MetaSort::Form;
  v.form = std::move(f);
  return v;
}
MetaValue game(GamePtr g) {
  MetaValue v;
  v.sort = MetaSort::Game;
  v.game = std::move(g);
  return v;
}
MetaValue flc(FlcPtr f) {
  MetaValue v;
  v.sort = MetaSort::Flc;
  v.flc = std::move(f);
  return v;
}
MetaValue atom(std::string a) {
  MetaValue v;
  v.sort = MetaSort::Atom;
  v.name = std::move(a);
  return v;
}
MetaValue var(std::string x) {
  MetaValue v;
  v.sort = MetaSort::Var;
  v.name = std::move(x);
  return v;
}
MetaValue binder(bool greatest) {
  MetaValue v;
  v.sort = MetaSort::Binder;
  v.greatest = greatest;
  return v;
}
MetaValue index(std::size_t i) {
  MetaValue v;
  v.sort = MetaSort::Index;
  v.index = i;
  return v;
}
MetaValue games(std::vector<GamePtr> gs) {
  MetaValue v;
  v.sort = MetaSort::GameVec;
  v.games = std::move(gs);
  return v;
}
MetaValue atoms(std::vector<std::string> as) {
  MetaValue v;
  v.sort = MetaSort::AtomVec;
  v.names = std::move(as);
  return v;
}
MetaValue vars(std::vector<std::string> xs) {
  MetaValue v;
  v.sort = MetaSort::VarVec;
  v.names = std::move(xs);
  return v;
}
MetaValue schema(SchemaId id) {
  MetaValue v;
  v.sort = MetaSort::SchemaRef;
  v.schema = id;
  return v;
}
MetaValue atom_map(std::map<std::string, std::string> m) {
  MetaValue v;
  v.sort = MetaSort::AtomMap;
  v.pairs = std::move(m);
  return v;
}
}  // namespace meta

std::vector<Metavariable> schema_signature(SchemaId id, Universe u) {
  using S = MetaSort;
  const S f = u == Universe::Modal ? S::Flc : S::Form;
  switch (id) {
    case SchemaId::Taut: return {{"phi", f}};
    case SchemaId::MP: return {{"phi", f}, {"psi", f}};
    case SchemaId::fp: return {{"x", S::Var}, {"phi", S::Flc}};
    case SchemaId::alpha: return {{"sigma", S::Binder}, {"x", S::Var}, {"y", S::Var}, {"phi", S::Flc}};
    case SchemaId::MuRule: return {{"x", S::Var}, {"phi", S::Flc}, {"psi", S::Flc}};
    case SchemaId::Mon_a: return {{"a", S::Atom}, {"phi", S::Flc}, {"psi", S::Flc}};
    case SchemaId::BoxAnd:
    case SchemaId::K: return {{"a", S::Atom}, {"phi", f}, {"psi", f}};
    case SchemaId::BoxTop: return {{"a", S::Atom}};
    case SchemaId::GNot: return {{"alpha", S::Game}, {"phi", S::Form}};
    case SchemaId::GTest: return {{"phi", S::Form}, {"psi", S::Form}};
    case SchemaId::GChoice:
    case SchemaId::GComp: return {{"alpha", S::Game}, {"beta", S::Game}, {"phi", S::Form}};
    case SchemaId::GFp: return {{"x", S::Var}, {"alpha", S::Game}, {"phi", S::Form}};
    case SchemaId::GAlpha:
      return {{"sigma", S::Binder}, {"x", S::Var}, {"y", S::Var}, {"alpha", S::Game}, {"phi", S::Form}};
    case SchemaId::GMuRule:
      return {{"x", S::Var}, {"alpha", S::Game}, {"beta", S::Game}, {"phi", S::Form}, {"psi", S::Form}};
    case SchemaId::GMon: return {{"alpha", S::Game}, {"phi", S::Form}, {"psi", S::Form}};
    case SchemaId::GStarFp: return {{"alpha", S::Game}, {"phi", S::Form}};
    case SchemaId::GStarMu: return {{"alpha", S::Game}, {"rho", S::Form}, {"psi", S::Form}};
    case SchemaId::SAsab:
    case SchemaId::SDsab:
      return {{"a", S::Atom},
              {"x", S::VarVec, true},
              {"y", S::VarVec, true},
              {"z", S::VarVec, true},
              {"alpha", S::Game},
              {"beta", S::GameVec, true},
              {"gamma", S::GameVec, true},
              {"delta", S::GameVec, true},
              {"phi", S::Form}};
    case SchemaId::SBranch:
      return {{"atoms", S::AtomVec}, {"i", S::Index},   {"w", S::Var},   {"alpha", S::Game},
              {"betas", S::GameVec}, {"beta", S::Game}, {"phi", S::Form}};
    case SchemaId::SSabP: return {{"a", S::Atom}, {"x", S::Var}, {"alpha", S::Game}, {"phi", S::Form}};
    case SchemaId::SSabRem:
      return {{"a", S::Atom},
              {"x", S::VarVec, true},
              {"y", S::VarVec, true},
              {"alpha", S::Game},
              {"eta", S::GameVec, true},
              {"delta", S::GameVec, true},
              {"beta", S::Game, true},
              {"phi", S::Form}};
    case SchemaId::SSabNotYet:
      return {{"a", S::Atom},     {"b", S::Atom},   {"x", S::Var},  {"y", S::Var},
              {"alpha", S::Game}, {"beta", S::Game, true}, {"eta", S::Game}, {"phi", S::Form}};
    case SchemaId::AFrak: return {{"base", S::SchemaRef}, {"traps", S::AtomMap}};
  }
  return {};
}

namespace detail {

Universe universe_of(const Instantiation& inst, Universe u) {
  for (const auto& [k, v] : inst)
    if (v.sort == MetaSort::Flc) return Universe::Modal;
  return u;
}

std::vector<Metavariable> full_signature(SchemaId id, const Instantiation& inst, Universe u) {
  auto sig = schema_signature(id, u);
  if (id == SchemaId::AFrak) {
    auto it = inst.find("base");
    if (it != inst.end() && it->second.sort == MetaSort::SchemaRef && it->second.schema != SchemaId::AFrak) {
      auto more = schema_signature(it->second.schema, Universe::Game);
      sig.insert(sig.end(), more.begin(), more.end());
    }
  }
  return sig;
}

void validate(SchemaId id, const Instantiation& inst, Universe u) {
  auto sig = full_signature(id, inst, u);
  for (const auto& m : sig) {
    auto it = inst.find(m.name);
    if (it == inst.end()) {
      if (m.optional) continue;
      throw Error(ErrorKind::IncompleteInstantiation,
                  std::string(schema_name(id)) + ": missing metavariable '" + m.name + "'");
    }
    if (it->second.sort != m.sort)
      throw Error(ErrorKind::IncompleteInstantiation,
                  std::string(schema_name(id)) + ": metavariable '" + m.name + "' has the wrong sort");
    const MetaValue& v = it->second;
    bool missing = (m.sort == MetaSort::Form && !v.form) || (m.sort == MetaSort::Game && !v.game) ||
                   (m.sort == MetaSort::Flc && !v.flc) ||
                   ((m.sort == MetaSort::Atom || m.sort == MetaSort::Var) && v.name.empty());
    if (missing)
      throw Error(ErrorKind::IncompleteInstantiation,
                  std::string(schema_name(id)) + ": metavariable '" + m.name + "' is empty");
  }
  for (const auto& [k, v] : inst) {
    bool known = std::any_of(sig.begin(), sig.end(), [&](const Metavariable& m) { return m.name == k; });
    if (!known)
      throw Error(ErrorKind::IncompleteInstantiation, std::string(schema_name(id)) + ": unknown metavariable '" + k + "'");
  }
}

const MetaValue* find(const Instantiation& inst, const std::string& k) {
  auto it = inst.find(k);
  return it == inst.end() ? nullptr : &it->second;
}

const std::vector<std::string>& names_or_empty(const Instantiation& inst, const std::string& k) {
  static const std::vector<std::string> none;
  const MetaValue* v = find(inst, k);
  return v ? v->names : none;
}

const std::vector<GamePtr>& games_or_empty(const Instantiation& inst, const std::string& k) {
  static const std::vector<GamePtr> none;
  const MetaValue* v = find(inst, k);
  return v ? v->games : none;
}

}  // namespace detail

namespace {

using detail::find;
using detail::games_or_empty;
using detail::names_or_empty;

const FormPtr& F(const Instantiation& in, const std::string& k) { return in.at(k).form; }
const GamePtr& G(const Instantiation& in, const std::string& k) { return in.at(k).game; }
const FlcPtr& L(const Instantiation& in, const std::string& k) { return in.at(k).flc; }
const std::string& N(const Instantiation& in, const std::string& k) { return in.at(k).name; }
GamePtr G_opt(const Instantiation& in, const std::string& k) {
  const MetaValue* v = find(in, k);
  return v ? v->game : nullptr;
}

// head;tail, or head alone when tail is the empty game.
GamePtr then(GamePtr head, const GamePtr& tail) { return tail ? gl::seq(std::move(head), tail) : head; }

FlcPtr fimplies(const FlcPtr& a, const FlcPtr& b) { return flc::lor(flc_negate(a), b); }
FlcPtr fiff(const FlcPtr& a, const FlcPtr& b) { return flc::land(fimplies(a, b), fimplies(b, a)); }

// Simultaneous substitution built from (variable vector, replacement) pairs.
class Subst {
 public:
  void bind(const std::string& x, GamePtr g) {
    if (!s_.emplace(x, std::move(g)).second)
      throw Error(ErrorKind::IncompleteInstantiation, "variable '" + x + "' is substituted twice");
  }
  void bind_all(const std::vector<std::string>& xs, const std::vector<GamePtr>& vals, const std::string& xname,
                const std::string& vname, const std::function<GamePtr(const GamePtr&)>& make) {
    if (xs.size() != vals.size())
      throw Error(ErrorKind::WidthMismatch, xname + " has " + std::to_string(xs.size()) + " entries but " + vname +
                                                " has " + std::to_string(vals.size()));
    for (std::size_t i = 0; i < xs.size(); ++i) bind(xs[i], make(vals[i]));
  }
  void bind_all(const std::vector<std::string>& xs, const std::function<GamePtr()>& make) {
    for (const auto& x : xs) bind(x, make());
  }
  GamePtr operator()(const GamePtr& g) const { return substitute(g, s_); }

 private:
  GameSubst s_;
};

Formula game_formula(const FormPtr& f) { return normal_form(f); }

SchemaInstance axiom(FormPtr f) { return {{}, game_formula(f)}; }
SchemaInstance axiom(FlcPtr f) { return {{}, Formula(std::move(f))}; }

SchemaInstance sabotage_axiom(SchemaId id, const Instantiation& in) {
  const std::string& a = N(in, "a");
  const auto& xs = names_or_empty(in, "x");
  const auto& ys = names_or_empty(in, "y");
  const auto& zs = names_or_empty(in, "z");
  const auto& betas = games_or_empty(in, "beta");
  const auto& gammas = games_or_empty(in, "gamma");
  const auto& deltas = games_or_empty(in, "delta");
  for (const auto& d : deltas)
    if (!d) throw Error(ErrorKind::IncompleteInstantiation, "delta entries cannot be empty");
  const GamePtr& alpha = G(in, "alpha");
  const FormPtr& phi = F(in, "phi");
  Subst lhs, rhs;
  lhs.bind_all(xs, betas, "x", "beta", [&](const GamePtr& b) { return then(gl::atom(a), b); });
  lhs.bind_all(ys, gammas, "y", "gamma", [&](const GamePtr& c) { return then(gl::dual_atom(a), c); });
  lhs.bind_all(zs, deltas, "z", "delta", [&](const GamePtr& d) { return d; });
  const bool angel = id == SchemaId::SAsab;
  GamePtr trap = angel ? gl::trap_a(a) : gl::trap_d(a);
  if (angel) {
    rhs.bind_all(xs, betas, "x", "beta", [&](const GamePtr& b) { return then(gl::trap_a(a), b); });
    rhs.bind_all(ys, [] { return gl::dtest(gl::ff()); });
  } else {
    rhs.bind_all(xs, [] { return gl::test(gl::ff()); });
    rhs.bind_all(ys, gammas, "y", "gamma", [&](const GamePtr& c) { return then(gl::trap_d(a), c); });
  }
  rhs.bind_all(zs, deltas, "z", "delta", [&](const GamePtr& d) { return gl::seq(trap, d); });
  return axiom(gl::iff(gl::dia(trap, gl::dia(lhs(alpha), phi)), gl::dia(rhs(alpha), phi)));
}

SchemaInstance branch_axiom(const Instantiation& in) {
  const auto& as = names_or_empty(in, "atoms");
  const auto& bs = games_or_empty(in, "betas");
  if (as.empty()) throw Error(ErrorKind::IncompleteInstantiation, "SBranch needs at least one atom");
  if (as.size() != bs.size())
    throw Error(ErrorKind::WidthMismatch,
                "atoms has " + std::to_string(as.size()) + " entries but betas has " + std::to_string(bs.size()));
  std::size_t i = in.at("i").index;
  if (i < 1 || i > as.size())
    throw Error(ErrorKind::IncompleteInstantiation, "index i=" + std::to_string(i) + " outside 1.." + std::to_string(as.size()));
  std::vector<GamePtr> prefix, branches;
  for (const auto& a : as) prefix.push_back(gl::trap_d(a));
  prefix.push_back(gl::trap_a(as[i - 1]));
  GamePtr pre = then(gl::seq_all(prefix), bs[i - 1]);
  for (std::size_t k = 0; k < as.size(); ++k) branches.push_back(then(gl::atom(as[k]), bs[k]));
  const std::string& w = N(in, "w");
  const GamePtr& alpha = G(in, "alpha");
  const GamePtr& beta = G(in, "beta");
  const FormPtr& phi = F(in, "phi");
  GamePtr plain = substitute(alpha, GameSubst{{w, beta}});
  GamePtr branched = substitute(alpha, GameSubst{{w, gl::seq(gl::choice_all(branches), beta)}});
  // The prefix is applied to each side. Under it, negation would read the dual
  // context, so <pre>(A <-> B) compares A in one context with B in another.
  return axiom(gl::iff(gl::dia(pre, gl::dia(plain, phi)), gl::dia(pre, gl::dia(branched, phi))));
}

SchemaInstance removal_axiom(const Instantiation& in) {
  const auto& xs = names_or_empty(in, "x");
  const auto& ys = names_or_empty(in, "y");
  const auto& etas = games_or_empty(in, "eta");
  const auto& deltas = games_or_empty(in, "delta");
  for (const auto* v : {&etas, &deltas})
    for (const auto& g : *v)
      if (!g) throw Error(ErrorKind::IncompleteInstantiation, "eta and delta entries cannot be empty");
  GamePtr beta = G_opt(in, "beta");
  Subst lhs, rhs;
  lhs.bind_all(xs, etas, "x", "eta", [](const GamePtr& e) { return e; });
  rhs.bind_all(xs, [] { return gl::test(gl::tt()); });
  auto tail = [&](const GamePtr& d) { return then(d, beta); };
  lhs.bind_all(ys, deltas, "y", "delta", tail);
  rhs.bind_all(ys, deltas, "y", "delta", tail);
  const GamePtr& alpha = G(in, "alpha");
  const FormPtr& phi = F(in, "phi");
  return axiom(gl::iff(gl::dia(lhs(alpha), phi), gl::dia(rhs(alpha), phi)));
}

SchemaInstance not_yet_axiom(const Instantiation& in) {
  const std::string& a = N(in, "a");
  GamePtr first = then(gl::atom(a), G_opt(in, "beta"));
  Subst lhs, rhs;
  lhs.bind(N(in, "x"), first);
  rhs.bind(N(in, "x"), first);
  lhs.bind(N(in, "y"), gl::trap_d(a));
  rhs.bind(N(in, "y"), gl::seq(gl::trap_d(a), G(in, "eta")));
  const GamePtr& alpha = G(in, "alpha");
  const FormPtr& phi = F(in, "phi");
  return axiom(gl::iff(gl::dia(lhs(alpha), phi), gl::dia(rhs(alpha), phi)));
}

SchemaInstance modal_instance(SchemaId id, const Instantiation& in) {
  switch (id) {
    case SchemaId::Taut: return axiom(L(in, "phi"));
    case SchemaId::MP: {
      const FlcPtr &phi = L(in, "phi"), &psi = L(in, "psi");
      return {{phi, fimplies(phi, psi)}, psi};
    }
    case SchemaId::fp: {
      const std::string& x = N(in, "x");
      FlcPtr m = flc::mu(x, L(in, "phi"));
      return axiom(fimplies(substitute(L(in, "phi"), FlcSubst{{x, m}}), m));
    }
    case SchemaId::alpha: {
      const std::string &x = N(in, "x"), &y = N(in, "y");
      const FlcPtr& phi = L(in, "phi");
      auto bind = [&](const std::string& v, FlcPtr b) {
        return in.at("sigma").greatest ? flc::nu(v, std::move(b)) : flc::mu(v, std::move(b));
      };
      return axiom(fiff(bind(x, phi), bind(y, substitute(phi, FlcSubst{{x, flc::var(y)}}))));
    }
    case SchemaId::MuRule: {
      const std::string& x = N(in, "x");
      const FlcPtr &phi = L(in, "phi"), &psi = L(in, "psi");
      return {{fimplies(substitute(phi, FlcSubst{{x, psi}}), psi)}, fimplies(flc::mu(x, phi), psi)};
    }
    case SchemaId::Mon_a: {
      const std::string& a = N(in, "a");
      const FlcPtr &phi = L(in, "phi"), &psi = L(in, "psi");
      return {{fimplies(phi, psi)}, fimplies(flc::dia(a, phi), flc::dia(a, psi))};
    }
    case SchemaId::BoxAnd: {
      const std::string& a = N(in, "a");
      const FlcPtr &phi = L(in, "phi"), &psi = L(in, "psi");
      return axiom(fiff(flc::land(flc::box(a, phi), flc::box(a, psi)), flc::box(a, flc::land(phi, psi))));
    }
    case SchemaId::K: {
      const std::string& a = N(in, "a");
      const FlcPtr &phi = L(in, "phi"), &psi = L(in, "psi");
      return axiom(fimplies(flc::box(a, flc::lor(phi, psi)), flc::lor(flc::dia(a, phi), flc::box(a, psi))));
    }
    case SchemaId::BoxTop: return axiom(flc::box(N(in, "a"), flc::tt()));
    default: throw Error(ErrorKind::Usage, std::string(schema_name(id)) + " has no modal form");
  }
}

SchemaInstance game_instance(SchemaId id, const Instantiation& in) {
  auto dia = [](const GamePtr& g, const FormPtr& f) { return gl::dia(g, f); };
  switch (id) {
    case SchemaId::Taut: return axiom(F(in, "phi"));
    case SchemaId::MP: {
      const FormPtr &phi = F(in, "phi"), &psi = F(in, "psi");
      return {{game_formula(phi), game_formula(gl::implies(phi, psi))}, game_formula(psi)};
    }
    case SchemaId::BoxAnd: {
      GamePtr a = gl::atom(N(in, "a"));
      const FormPtr &phi = F(in, "phi"), &psi = F(in, "psi");
      return axiom(gl::iff(gl::land(gl::box(a, phi), gl::box(a, psi)), gl::box(a, gl::land(phi, psi))));
    }
    case SchemaId::K: {
      GamePtr a = gl::atom(N(in, "a"));
      const FormPtr &phi = F(in, "phi"), &psi = F(in, "psi");
      return axiom(gl::implies(gl::box(a, gl::lor(phi, psi)), gl::lor(dia(a, phi), gl::box(a, psi))));
    }
    case SchemaId::BoxTop: return axiom(gl::box(gl::atom(N(in, "a")), gl::tt()));
    case SchemaId::GNot: {
      const GamePtr& al = G(in, "alpha");
      const FormPtr& phi = F(in, "phi");
      return axiom(gl::iff(dia(gl::dual(al), phi), gl::neg(dia(al, gl::neg(phi)))));
    }
    case SchemaId::GTest: {
      const FormPtr &phi = F(in, "phi"), &psi = F(in, "psi");
      return axiom(gl::iff(dia(gl::test(phi), psi), gl::land(phi, psi)));
    }
    case SchemaId::GChoice: {
      const GamePtr &al = G(in, "alpha"), &be = G(in, "beta");
      const FormPtr& phi = F(in, "phi");
      return axiom(gl::iff(dia(gl::choice(al, be), phi), gl::lor(dia(al, phi), dia(be, phi))));
    }
    case SchemaId::GComp: {
      const GamePtr &al = G(in, "alpha"), &be = G(in, "beta");
      const FormPtr& phi = F(in, "phi");
      return axiom(gl::iff(dia(gl::seq(al, be), phi), dia(al, dia(be, phi))));
    }
    case SchemaId::GFp: {
      const std::string& x = N(in, "x");
      GamePtr r = gl::rec(x, G(in, "alpha"));
      const FormPtr& phi = F(in, "phi");
      return axiom(gl::implies(dia(substitute(G(in, "alpha"), GameSubst{{x, r}}), phi), dia(r, phi)));
    }
    case SchemaId::GAlpha: {
      const std::string &x = N(in, "x"), &y = N(in, "y");
      const GamePtr& al = G(in, "alpha");
      auto bind = [&](const std::string& v, GamePtr b) {
        return in.at("sigma").greatest ? gl::corec(v, std::move(b)) : gl::rec(v, std::move(b));
      };
      const FormPtr& phi = F(in, "phi");
      return axiom(gl::iff(dia(bind(x, al), phi), dia(bind(y, substitute(al, GameSubst{{x, gl::var(y)}})), phi)));
    }
    case SchemaId::GMuRule: {
      const std::string& x = N(in, "x");
      const GamePtr &al = G(in, "alpha"), &be = G(in, "beta");
      const FormPtr &phi = F(in, "phi"), &psi = F(in, "psi");
      GamePtr stop = gl::seq(be, gl::seq(gl::test(psi), gl::dtest(gl::ff())));
      FormPtr goal = dia(be, psi);
      return {{game_formula(gl::implies(dia(substitute(al, GameSubst{{x, stop}}), phi), goal))},
              game_formula(gl::implies(dia(gl::rec(x, al), phi), goal))};
    }
    case SchemaId::GMon: {
      const GamePtr& al = G(in, "alpha");
      const FormPtr &phi = F(in, "phi"), &psi = F(in, "psi");
      return {{game_formula(gl::implies(phi, psi))}, game_formula(gl::implies(dia(al, phi), dia(al, psi)))};
    }
    case SchemaId::GStarFp: {
      const GamePtr& al = G(in, "alpha");
      const FormPtr& phi = F(in, "phi");
      GamePtr st = gl::star(al);
      return axiom(gl::implies(gl::lor(phi, dia(al, dia(st, phi))), dia(st, phi)));
    }
    case SchemaId::GStarMu: {
      const GamePtr& al = G(in, "alpha");
      const FormPtr &rho = F(in, "rho"), &psi = F(in, "psi");
      return {{game_formula(gl::implies(gl::lor(rho, dia(al, psi)), psi))},
              game_formula(gl::implies(dia(gl::star(al), rho), psi))};
    }
    case SchemaId::SAsab:
    case SchemaId::SDsab: return sabotage_axiom(id, in);
    case SchemaId::SBranch: return branch_axiom(in);
    case SchemaId::SSabP: {
      const std::string& a = N(in, "a");
      const std::string& x = N(in, "x");
      const GamePtr& al = G(in, "alpha");
      const FormPtr& phi = F(in, "phi");
      GamePtr l = gl::seq(gl::trap_a(a), substitute(al, GameSubst{{x, gl::atom(a)}}));
      GamePtr r = gl::seq(gl::trap_a(a), substitute(al, GameSubst{{x, gl::seq(gl::atom(a), gl::trap_a(a))}}));
      return axiom(gl::iff(dia(l, phi), dia(r, phi)));
    }
    case SchemaId::SSabRem: return removal_axiom(in);
    case SchemaId::SSabNotYet: return not_yet_axiom(in);
    case SchemaId::AFrak: {
      SchemaId base = in.at("base").schema;
      Instantiation rest = in;
      rest.erase("base");
      rest.erase("traps");
      FormPtr f = std::get<FormPtr>(game_instance(base, rest).conclusion);
      return axiom(replace_traps(f, in.at("traps").pairs));
    }
    default: throw Error(ErrorKind::Usage, std::string(schema_name(id)) + " has no game-logic form");
  }
}

}  // namespace

SchemaInstance instantiate_schema(SchemaId id, const Instantiation& inst, Universe u) {
  u = detail::universe_of(inst, u);
  detail::validate(id, inst, u);
  if (id == SchemaId::AFrak) {
    SchemaId base = inst.at("base").schema;
    if (base < SchemaId::SAsab || base > SchemaId::SSabNotYet)
      throw Error(ErrorKind::IncompleteInstantiation, std::string("AFrak base must be a sabotage axiom, not ") + schema_name(base));
  }
  switch (id) {
    case SchemaId::fp:
    case SchemaId::alpha:
    case SchemaId::MuRule:
    case SchemaId::Mon_a: return modal_instance(id, inst);
    case SchemaId::Taut:
    case SchemaId::MP:
    case SchemaId::BoxAnd:
    case SchemaId::K:
    case SchemaId::BoxTop:
      if (u == Universe::Modal) return modal_instance(id, inst);
      return game_instance(id, inst);
    default: return game_instance(id, inst);
  }
}

}  // namespace glwb
