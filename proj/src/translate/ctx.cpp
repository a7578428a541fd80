#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "common.hpp"
#include "glwb/error.hpp"
#include "glwb/syntax.hpp"
#include "glwb/translate.hpp"

namespace glwb {

namespace {

const std::string kCtxPrefix = "y_ctx_";

class CtxTranslator {
 public:
  CtxTranslator(const ContextSpace& cs, const CtxOptions& o, detail::ReportScope& rep, std::set<std::string> avoid)
      : cs_(cs), o_(o), rep_(rep), supply_(std::move(avoid)) {}

  GamePtr form(const FormPtr& f, std::size_t c) {
    auto key = std::make_pair(f.get(), c);
    if (auto it = fmemo_.find(key); it != fmemo_.end()) return it->second;
    GamePtr out;
    switch (f->kind) {
      case FormKind::True: out = gl::dtest(gl::ff()); break;
      case FormKind::False: out = gl::test(gl::ff()); break;
      case FormKind::Prop:
      case FormKind::NegProp: out = gl::seq(gl::test(f), gl::dtest(gl::ff())); break;
      case FormKind::Or: out = gl::choice(form(f->left, c), form(f->right, c)); break;
      case FormKind::And: out = gl::dchoice(form(f->left, c), form(f->right, c)); break;
      case FormKind::Diamond: {
        const FormPtr& post = f->left;
        out = plug(game(f->game, c), [&](std::size_t e) { return gl::seq(form(post, e), gl::test(gl::ff())); });
        break;
      }
      case FormKind::Neg: throw Error(ErrorKind::NormalFormViolation, "ctx_translate expects a normal form");
    }
    fmemo_.emplace(key, out);
    return out;
  }

  GamePtr game(const GamePtr& g, std::size_t c) {
    auto key = std::make_pair(g.get(), c);
    if (auto it = gmemo_.find(key); it != gmemo_.end()) return it->second;
    GamePtr out;
    const GamePtr end = gl::var(ctx_var(c));
    switch (g->kind) {
      case GameKind::Atom:
      case GameKind::DualAtom: {
        const int i = cs_.index_of(g->name);
        const Owner o = i < 0 ? Owner::Neither : cs_.owner(c, i);
        const bool dual = g->kind == GameKind::DualAtom;
        if (o == Owner::Neither) out = gl::seq(g, end);
        else if ((o == Owner::Angel) != dual) out = end;  // the owner skips
        else out = dual ? gl::dtest(gl::ff()) : gl::test(gl::ff());
        break;
      }
      case GameKind::TrapA:
      case GameKind::TrapD: {
        const int i = cs_.index_of(g->name);
        if (i < 0) throw Error(ErrorKind::AlphabetTooSmall, "trapped atom " + g->name + " not in the alphabet");
        out = gl::var(ctx_var(cs_.with(c, i, g->kind == GameKind::TrapA ? Owner::Angel : Owner::Demon)));
        break;
      }
      case GameKind::Test: out = gl::dchoice(form(g->form, c), end); break;
      case GameKind::DTest: out = gl::choice(form(complement_of(g->form), c), end); break;
      case GameKind::Choice: out = gl::choice(game(g->left, c), game(g->right, c)); break;
      case GameKind::DChoice: out = gl::dchoice(game(g->left, c), game(g->right, c)); break;
      case GameKind::Seq: {
        const GamePtr& rest = g->right;
        out = plug(game(g->left, c), [&](std::size_t e) { return game(rest, e); });
        break;
      }
      case GameKind::Star:
      case GameKind::DStar: out = repetition(g, c); break;
      default: throw Error(ErrorKind::Usage, "ctx_translate has no clause for " + print(g));
    }
    gmemo_.emplace(key, out);
    return out;
  }

 private:
  const ContextSpace& cs_;
  const CtxOptions& o_;
  detail::ReportScope& rep_;
  NameSupply supply_;
  std::map<std::pair<const Form*, std::size_t>, GamePtr> fmemo_;
  std::map<std::pair<const Game*, std::size_t>, GamePtr> gmemo_;
  std::map<const Form*, FormPtr> complements_;
  struct Rep {
    SystemPtr sys;
    std::map<std::size_t, std::size_t> index;  // context -> component
  };
  std::map<std::pair<const Game*, std::vector<int>>, Rep> systems_;

  const FormPtr& complement_of(const FormPtr& f) {
    auto it = complements_.find(f.get());
    if (it == complements_.end()) it = complements_.emplace(f.get(), complement(f)).first;
    return it->second;
  }

  // Replace each end marker y_e of g by next(e).
  template <class Next>
  GamePtr plug(const GamePtr& g, Next next) {
    detail::DagSubst sub([&](const std::string& name) -> GamePtr {
      std::size_t e;
      if (!parse_ctx_var(name, e)) return nullptr;
      return next(e);
    });
    return sub.game(g);
  }

  GamePtr repetition(const GamePtr& g, std::size_t c) {
    const bool angel = g->kind == GameKind::Star;
    const GamePtr& body = g->left;
    std::vector<int> relevant;
    std::set<std::string> trapped = sabotage_atoms(body);
    for (int i = 0; i < static_cast<int>(cs_.alphabet().size()); ++i)
      if (cs_.owner(c, i) != Owner::Neither || trapped.count(cs_.alphabet()[i])) relevant.push_back(i);
    auto key = std::make_pair(g.get(), relevant);
    auto it = systems_.find(key);
    if (it == systems_.end()) {
      std::vector<std::size_t> contexts{0};
      for (int i : relevant) {
        std::vector<std::size_t> next;
        for (std::size_t d : contexts)
          for (Owner o : {Owner::Neither, Owner::Angel, Owner::Demon}) next.push_back(cs_.with(d, i, o));
        contexts = std::move(next);
        if (contexts.size() > o_.max_contexts)
          throw Error(ErrorKind::BudgetExceeded, "star over " + std::to_string(relevant.size()) + " relevant atoms");
      }
      std::sort(contexts.begin(), contexts.end());
      Rep r;
      std::vector<std::string> z;
      for (std::size_t j = 0; j < contexts.size(); ++j) {
        r.index[contexts[j]] = j;
        z.push_back(supply_.fresh("z_fix"));
      }
      auto sys = std::make_shared<RecSystem>();
      sys->kind = angel ? FixKind::Mu : FixKind::Nu;
      for (std::size_t j = 0; j < contexts.size(); ++j) {
        GamePtr step = plug(game(body, contexts[j]), [&](std::size_t e) -> GamePtr {
          auto at = r.index.find(e);
          if (at == r.index.end()) throw Error(ErrorKind::Usage, "star body left its relevant contexts");
          return gl::var(z[at->second]);
        });
        GamePtr stop = gl::var(ctx_var(contexts[j]));
        sys->bindings.emplace_back(z[j], angel ? gl::choice(stop, step) : gl::dchoice(stop, step));
      }
      r.sys = sys;
      it = systems_.emplace(key, std::move(r)).first;
    }
    GamePtr out = gl::component(it->second.sys, it->second.index.at(c));
    const std::uint64_t size = expr_size(out);
    if (size > o_.max_output_size) throw Error(ErrorKind::BudgetExceeded, "translated star has " + std::to_string(size) + " nodes");
    rep_.fixpoint(expr_size(g), size);
    return out;
  }
};

int star_depth(const GamePtr& g);
int star_depth(const FormPtr& f) {
  int d = 0;
  if (f->left) d = std::max(d, star_depth(f->left));
  if (f->right) d = std::max(d, star_depth(f->right));
  if (f->game) d = std::max(d, star_depth(f->game));
  return d;
}
int star_depth(const GamePtr& g) {
  int d = 0;
  if (g->form) d = std::max(d, star_depth(g->form));
  if (g->left) d = std::max(d, star_depth(g->left));
  if (g->right) d = std::max(d, star_depth(g->right));
  return d + (g->kind == GameKind::Star || g->kind == GameKind::DStar ? 1 : 0);
}

// log2 of (C*size)^(b^^k) with b = 3^atoms.
double ceiling_log2(std::uint64_t size, int atoms, int depth) {
  const double b = std::pow(3.0, atoms);
  double tower = 1;
  for (int i = 0; i < depth; ++i) tower = std::pow(b, tower);
  return tower * std::log2(kCeilingConstant * static_cast<double>(size));
}

template <class T>
GamePtr translate(const T& in, const ContextSpace& cs, std::size_t c, const CtxOptions& o, TranslationReport* r) {
  detail::ReportScope rep(r, "ctx", expr_size(in));
  if (c >= cs.size()) throw Error(ErrorKind::Usage, "context index out of range");
  detail::reject_names(all_names(in), {}, {kCtxPrefix, "z_fix_"}, "ctx_translate");
  for (const auto& a : sabotage_atoms(in))
    if (cs.index_of(a) < 0) throw Error(ErrorKind::AlphabetTooSmall, "trapped atom " + a + " not in the alphabet");
  T x = normal_form(in);
  CtxTranslator tr(cs, o, rep, all_names(x));
  GamePtr out;
  if constexpr (std::is_same_v<T, FormPtr>) out = tr.form(x, c);
  else out = tr.game(x, c);
  const std::uint64_t size = expr_size(out);
  if (size > o.max_output_size) throw Error(ErrorKind::BudgetExceeded, "output has " + std::to_string(size) + " nodes");
  rep.finish(size);
  if (r) {
    auto atoms = played_atoms(x);
    auto trapped = sabotage_atoms(x);
    atoms.insert(trapped.begin(), trapped.end());
    r->atoms = static_cast<int>(atoms.size());
    r->depth = star_depth(x);
    r->ceiling_log2 = ceiling_log2(r->input_size, r->atoms, r->depth);
    r->within_ceiling = std::log2(static_cast<double>(size)) <= r->ceiling_log2;
  }
  return out;
}

}  // namespace

std::string ctx_var(std::size_t c) { return kCtxPrefix + std::to_string(c); }

bool parse_ctx_var(const std::string& name, std::size_t& c) {
  if (name.compare(0, kCtxPrefix.size(), kCtxPrefix) != 0 || name.size() == kCtxPrefix.size()) return false;
  std::size_t v = 0;
  for (std::size_t i = kCtxPrefix.size(); i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9') return false;
    v = v * 10 + static_cast<std::size_t>(name[i] - '0');
  }
  c = v;
  return true;
}

GamePtr ctx_translate(const FormPtr& f, const ContextSpace& cs, std::size_t c, const CtxOptions& o,
                      TranslationReport* r) {
  return translate(f, cs, c, o, r);
}

GamePtr ctx_translate(const GamePtr& g, const ContextSpace& cs, std::size_t c, const CtxOptions& o,
                      TranslationReport* r) {
  return translate(g, cs, c, o, r);
}

FormPtr ctx_formula(const FormPtr& f, const CtxOptions& o, TranslationReport* r) {
  std::vector<std::string> alphabet = o.alphabet;
  if (alphabet.empty()) {
    auto s = sabotage_atoms(f);
    alphabet.assign(s.begin(), s.end());
  }
  ContextSpace cs(alphabet);
  return gl::dia(ctx_translate(f, cs, 0, o, r), gl::ff());
}

}  // namespace glwb
