#include <string>
#include <type_traits>

#include "common.hpp"
#include "glwb/error.hpp"
#include "glwb/syntax.hpp"
#include "glwb/translate.hpp"

namespace glwb {

namespace {

// One walker for both translations; `quasi` selects qflat, which keeps
// variables bare, substitutes only u at compositions, and binds fixpoints
// without the trailing chop.
struct Flattener {
  bool quasi;
  detail::ReportScope& rep;

  FlcPtr plug(const FlcPtr& f, const FlcPtr& r) {
    if (quasi) return substitute(f, FlcSubst{{kMarkU, r}});
    return substitute(f, FlcSubst{{kMarkU, r}, {kMarkV, r}});
  }

  FlcPtr form(const FormPtr& f) {
    switch (f->kind) {
      case FormKind::True: return flc::tt();
      case FormKind::False: return flc::ff();
      case FormKind::Prop: return flc::prop(f->name);
      case FormKind::NegProp: return flc::neg_prop(f->name);
      case FormKind::Or: return flc::lor(form(f->left), form(f->right));
      case FormKind::And: return flc::land(form(f->left), form(f->right));
      case FormKind::Diamond: return plug(game(f->game), form(f->left));
      case FormKind::Neg: break;
    }
    throw Error(ErrorKind::NormalFormViolation, "flat expects a normal form");
  }

  FlcPtr game(const GamePtr& g) {
    const FlcPtr u = flc::var(kMarkU);
    switch (g->kind) {
      case GameKind::Atom: return flc::dia(g->name, u);
      case GameKind::DualAtom: return flc::box(g->name, u);
      case GameKind::Var: return quasi ? flc::var(g->name) : flc::chop(flc::var(g->name), flc::var(kMarkV));
      case GameKind::Test: return flc::land(form(g->form), u);
      // FLC negation is unavailable on chop formulas; use the normal-form complement.
      case GameKind::DTest: return flc::lor(form(complement(g->form)), u);
      case GameKind::Choice: return flc::lor(game(g->left), game(g->right));
      case GameKind::DChoice: return flc::land(game(g->left), game(g->right));
      case GameKind::Seq: return plug(game(g->left), game(g->right));
      case GameKind::Rec:
      case GameKind::CoRec: {
        const bool mu = g->kind == GameKind::Rec;
        FlcPtr body = game(g->left);
        FlcPtr out;
        if (quasi) {
          out = mu ? flc::mu(g->name, body) : flc::nu(g->name, body);
        } else {
          body = substitute(body, FlcSubst{{kMarkU, flc::id()}, {kMarkV, flc::id()}});
          out = flc::chop(mu ? flc::mu(g->name, body) : flc::nu(g->name, body), u);
        }
        rep.fixpoint(expr_size(g), expr_size(out));
        return out;
      }
      default: break;
    }
    throw Error(ErrorKind::Usage, std::string(quasi ? "qflat" : "flat") + " has no clause for " + print(g));
  }
};

template <class T>
T prepare(const T& in, bool quasi) {
  const char* who = quasi ? "qflat" : "flat";
  detail::reject_names(all_names(in), {kMarkU, kMarkV}, {"u_", "v_"}, who);
  T x = normal_form(desugar_star(eliminate_systems(in)));
  if (quasi) {
    if (!right_linear(x)) throw Error(ErrorKind::NotRightLinear, "qflat input is not right-linear");
  }
  if (!well_named(x)) x = rename_bound(x);
  return x;
}

template <class T>
FlcPtr run(const T& in, bool quasi, TranslationReport* r) {
  detail::ReportScope rep(r, quasi ? "qflat" : "flat", expr_size(in));
  T x = prepare(in, quasi);
  Flattener fl{quasi, rep};
  FlcPtr out;
  if constexpr (std::is_same_v<T, FormPtr>) out = fl.form(x);
  else out = fl.game(x);
  rep.finish(expr_size(out));
  return out;
}

}  // namespace

FlcPtr flat(const FormPtr& f, TranslationReport* r) { return run(f, false, r); }
FlcPtr flat(const GamePtr& g, TranslationReport* r) { return run(g, false, r); }
FlcPtr qflat(const FormPtr& f, TranslationReport* r) { return run(f, true, r); }
FlcPtr qflat(const GamePtr& g, TranslationReport* r) { return run(g, true, r); }

}  // namespace glwb
