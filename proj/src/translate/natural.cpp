#include <string>
#include <type_traits>

#include "common.hpp"
#include "glwb/error.hpp"
#include "glwb/syntax.hpp"
#include "glwb/translate.hpp"

namespace glwb {

namespace {

struct Natural {
  detail::ReportScope& rep;
  int counter = 0;

  FormPtr form(const FormPtr& f) {
    switch (f->kind) {
      case FormKind::Or: return gl::lor(form(f->left), form(f->right));
      case FormKind::And: return gl::land(form(f->left), form(f->right));
      case FormKind::Diamond: return gl::dia(game(f->game), form(f->left));
      case FormKind::Neg: throw Error(ErrorKind::NormalFormViolation, "natural expects a normal form");
      default: return f;
    }
  }

  GamePtr game(const GamePtr& g) {
    switch (g->kind) {
      case GameKind::Atom:
      case GameKind::DualAtom:
      case GameKind::Var: return g;
      case GameKind::Test: return gl::test(form(g->form));
      case GameKind::DTest: return gl::dtest(form(g->form));
      case GameKind::Choice: return gl::choice(game(g->left), game(g->right));
      case GameKind::DChoice: return gl::dchoice(game(g->left), game(g->right));
      case GameKind::Seq: return gl::seq(game(g->left), game(g->right));
      // Right-linearity makes a repetition's operand closed, so its own
      // fixpoints reset their traps on every round.
      case GameKind::Star: return gl::star(game(g->left));
      case GameKind::DStar: return gl::dstar(game(g->left));
      case GameKind::Rec:
      case GameKind::CoRec: {
        const std::string k = std::to_string(++counter);
        const std::string b = "b_" + k, c = "c_" + k;
        // delta: Demon owns b, Angel owns c.
        const GamePtr delta = gl::seq(gl::trap_d(b), gl::trap_a(c));
        const GamePtr delta_d = game_dual(delta);
        GamePtr out;
        if (g->kind == GameKind::Rec) {
          GamePtr body = substitute(game(g->left), GameSubst{{g->name, delta}});
          out = gl::seq_all({delta, gl::star(gl::seq_all({gl::atom(c), delta_d, body})), gl::atom(b)});
        } else {
          GamePtr body = substitute(game(g->left), GameSubst{{g->name, delta_d}});
          out = gl::seq_all({delta_d, gl::dstar(gl::seq_all({gl::dual_atom(c), delta, body})), gl::dual_atom(b)});
        }
        rep.fixpoint(expr_size(g), expr_size(out));
        return out;
      }
      default: break;
    }
    throw Error(ErrorKind::Usage, "natural has no clause for " + print(g));
  }
};

template <class T>
T run(const T& in, TranslationReport* r) {
  detail::ReportScope rep(r, "natural", expr_size(in));
  detail::reject_names(all_names(in), {}, {"b_", "c_"}, "natural");
  T x = normal_form(eliminate_systems(in));
  if (!check_fragment(x, Fragment::rlGL)) throw Error(ErrorKind::NotRightLinear, "natural expects rlGL input");
  if (!well_named(x)) x = rename_bound(x);
  Natural nat{rep};
  T out;
  if constexpr (std::is_same_v<T, FormPtr>) out = nat.form(x);
  else out = nat.game(x);
  rep.finish(expr_size(out));
  return out;
}

}  // namespace

FormPtr natural(const FormPtr& f, TranslationReport* r) { return run(f, r); }
GamePtr natural(const GamePtr& g, TranslationReport* r) { return run(g, r); }

}  // namespace glwb
