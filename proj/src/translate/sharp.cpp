#include <string>

#include "common.hpp"
#include "glwb/error.hpp"
#include "glwb/syntax.hpp"
#include "glwb/translate.hpp"

namespace glwb {

namespace {

// mu x.(id \/ (f ; x)) or nu x.(id /\ (f ; x)) with x not free in f.
bool is_iteration(const Flc& f) {
  if (f.kind != FlcKind::Mu && f.kind != FlcKind::Nu) return false;
  const FlcKind want = f.kind == FlcKind::Mu ? FlcKind::Or : FlcKind::And;
  const FlcPtr& b = f.left;
  if (b->kind != want || b->left->kind != FlcKind::Id || b->right->kind != FlcKind::Chop) return false;
  const FlcPtr& tail = b->right->right;
  if (tail->kind != FlcKind::Var || tail->name != f.name || occurs_free(f.name, b->right->left)) return false;
  return true;
}

struct Sharp {
  detail::ReportScope& rep;

  GamePtr run(const FlcPtr& f) {
    switch (f->kind) {
      case FlcKind::Id: return gl::test(gl::tt());
      case FlcKind::True: return gl::seq(gl::test(gl::tt()), gl::dtest(gl::ff()));
      case FlcKind::False: return gl::test(gl::ff());
      case FlcKind::Var: return gl::var(f->name);
      case FlcKind::Prop: return gl::seq(gl::test(gl::prop(f->name)), gl::dtest(gl::ff()));
      case FlcKind::NegProp: return gl::seq(gl::test(gl::neg_prop(f->name)), gl::dtest(gl::ff()));
      case FlcKind::Or: return gl::choice(run(f->left), run(f->right));
      case FlcKind::And: return gl::dchoice(run(f->left), run(f->right));
      case FlcKind::Dia: return gl::seq(gl::atom(f->name), run(f->left));
      case FlcKind::Box: return gl::seq(gl::dual_atom(f->name), run(f->left));
      case FlcKind::Chop: return gl::seq(run(f->left), run(f->right));
      case FlcKind::StarFix: return fix(f, gl::star(run(f->left)));
      case FlcKind::Mu:
      case FlcKind::Nu: {
        if (is_iteration(*f)) {
          FlcPtr operand = f->left->right->left;
          return fix(f, f->kind == FlcKind::Mu ? gl::star(run(operand)) : gl::dstar(run(operand)));
        }
        GamePtr body = run(f->left);
        return fix(f, f->kind == FlcKind::Mu ? gl::rec(f->name, body) : gl::corec(f->name, body));
      }
    }
    throw Error(ErrorKind::Usage, "sharp: unknown FLC node");
  }

  GamePtr fix(const FlcPtr& in, GamePtr out) {
    rep.fixpoint(expr_size(in), expr_size(out));
    return out;
  }
};

}  // namespace

GamePtr sharp(const FlcPtr& f, TranslationReport* r) {
  detail::ReportScope rep(r, "sharp", expr_size(f));
  GamePtr out = Sharp{rep}.run(f);
  rep.finish(expr_size(out));
  return out;
}

FormPtr sharp_formula(const FlcPtr& f, TranslationReport* r) {
  detail::ReportScope rep(r, "sharp", expr_size(f));
  FormPtr out = gl::dia(Sharp{rep}.run(f), gl::ff());
  rep.finish(expr_size(out));
  return out;
}

}  // namespace glwb
