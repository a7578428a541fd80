#include <string>

#include "common.hpp"
#include "glwb/error.hpp"
#include "glwb/syntax.hpp"
#include "glwb/translate.hpp"

namespace glwb {

namespace {

struct SepToStar {
  detail::ReportScope& rep;
  NameSupply supply;

  FlcPtr run(const FlcPtr& f) {
    switch (f->kind) {
      case FlcKind::Or: return flc::lor(run(f->left), run(f->right));
      case FlcKind::And: return flc::land(run(f->left), run(f->right));
      case FlcKind::Dia: return flc::dia(f->name, run(f->left));
      case FlcKind::Box: return flc::box(f->name, run(f->left));
      case FlcKind::Mu:
      case FlcKind::Nu: {
        const FlcPtr& body = f->left;
        // psi has only x free, rho is x-free; when both sides qualify, psi is the one mentioning x.
        auto fits = [&](const FlcPtr& psi, const FlcPtr& rho) {
          auto fv = free_vars(psi);
          fv.erase(f->name);
          return fv.empty() && !occurs_free(f->name, rho);
        };
        const bool l = fits(body->left, body->right), r = fits(body->right, body->left);
        const bool left_is_psi = l && (!r || occurs_free(f->name, body->left));
        const FlcPtr& psi = left_is_psi ? body->left : body->right;
        const FlcPtr& rho = left_is_psi ? body->right : body->left;
        FlcPtr step = substitute(run(psi), FlcSubst{{f->name, flc::id()}});
        FlcPtr iter;
        if (f->kind == FlcKind::Mu) {
          iter = flc::star(step);
        } else {
          const std::string z = supply.fresh("z_fix");
          iter = flc::nu(z, flc::land(flc::id(), flc::chop(step, flc::var(z))));
        }
        FlcPtr out = flc::chop(iter, run(rho));
        rep.fixpoint(expr_size(f), expr_size(out));
        return out;
      }
      default: return f;
    }
  }
};

}  // namespace

FlcPtr sep_to_star(const FlcPtr& f, TranslationReport* r) {
  detail::ReportScope rep(r, "sep_to_star", expr_size(f));
  if (!check_fragment(f, Fragment::Lsep)) throw Error(ErrorKind::NotSeparable, print(f));
  detail::reject_names(all_names(f), {}, {"z_fix_"}, "sep_to_star");
  SepToStar t{rep, NameSupply(all_names(f))};
  FlcPtr out = t.run(f);
  rep.finish(expr_size(out));
  return out;
}

}  // namespace glwb
