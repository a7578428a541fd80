#include <string>

#include "glwb/syntax.hpp"

namespace glwb {
namespace {

std::string pf(const FormPtr& f);
std::string pg(const GamePtr& g);

bool is_binder(GameKind k) { return k == GameKind::Rec || k == GameKind::CoRec; }
bool is_binder(FlcKind k) { return k == FlcKind::Mu || k == FlcKind::Nu; }

std::string paren(const std::string& s) { return "(" + s + ")"; }

// Operand of a prefix operator (-, <g>, ?, !).
std::string unary_operand(const FormPtr& f) { return is_binary(f->kind) ? paren(pf(f)) : pf(f); }

std::string pf(const FormPtr& f) {
  switch (f->kind) {
    case FormKind::True: return "true";
    case FormKind::False: return "false";
    case FormKind::Prop: return f->name;
    case FormKind::NegProp: return "-" + f->name;
    case FormKind::Neg:
      // -P is NegProp, so Neg(Prop P) needs the parentheses.
      if (f->left->kind == FormKind::Prop) return "-(" + f->left->name + ")";
      return "-" + unary_operand(f->left);
    case FormKind::Or: return unary_operand(f->left) + " \\/ " + unary_operand(f->right);
    case FormKind::And: return unary_operand(f->left) + " /\\ " + unary_operand(f->right);
    case FormKind::Diamond: return "<" + pg(f->game) + "> " + unary_operand(f->left);
  }
  return "?";
}

std::string child(const GamePtr& g) {
  return is_binary(g->kind) || is_binder(g->kind) ? paren(pg(g)) : pg(g);
}

std::string postfix_operand(const GamePtr& g) {
  switch (g->kind) {
    case GameKind::Atom:
    case GameKind::DualAtom:
    case GameKind::Var:
    case GameKind::DualVar:
    case GameKind::TrapA:
    case GameKind::TrapD:
    case GameKind::Star:
    case GameKind::DStar:
    case GameKind::Dual:
      return pg(g);
    default:
      return paren(pg(g));
  }
}

std::string pg(const GamePtr& g) {
  switch (g->kind) {
    case GameKind::Atom: return g->name;
    case GameKind::DualAtom: return g->name + "^d";
    case GameKind::Var: return g->name;
    case GameKind::DualVar: return g->name + "^d";
    case GameKind::TrapA: return "~" + g->name;
    case GameKind::TrapD: return "~'" + g->name;
    case GameKind::Test: return "?" + unary_operand(g->form);
    case GameKind::DTest: return "!" + unary_operand(g->form);
    case GameKind::Choice: return child(g->left) + " \xE2\x88\xAA " + child(g->right);
    case GameKind::DChoice: return child(g->left) + " \xE2\x88\xA9 " + child(g->right);
    case GameKind::Seq: return child(g->left) + "; " + child(g->right);
    case GameKind::Star: return postfix_operand(g->left) + "^*";
    case GameKind::DStar: return postfix_operand(g->left) + "^x";
    case GameKind::Dual: return paren(pg(g->left)) + "^d";
    case GameKind::Rec:
    case GameKind::CoRec: {
      std::string body = is_binary(g->left->kind) ? paren(pg(g->left)) : pg(g->left);
      return std::string(g->kind == GameKind::Rec ? "rec " : "corec ") + g->name + ". " + body;
    }
    case GameKind::System: {
      // Internal node; printed for diagnostics only.
      std::string s = g->system->kind == FixKind::Mu ? "mu{" : "nu{";
      for (std::size_t i = 0; i < g->system->bindings.size(); ++i) {
        if (i) s += ", ";
        s += g->system->bindings[i].first + " = " + pg(g->system->bindings[i].second);
      }
      return s + "}." + g->system->bindings[g->index].first;
    }
  }
  return "?";
}

std::string pl(const FlcPtr& f);

std::string flc_side(const FlcPtr& f) { return is_binary(f->kind) || is_binder(f->kind) ? paren(pl(f)) : pl(f); }

std::string pl(const FlcPtr& f) {
  switch (f->kind) {
    case FlcKind::Id: return "id";
    case FlcKind::True: return "true";
    case FlcKind::False: return "false";
    case FlcKind::Var: return f->name;
    case FlcKind::Prop: return f->name;
    case FlcKind::NegProp: return "-" + f->name;
    case FlcKind::Or: return flc_side(f->left) + " \\/ " + flc_side(f->right);
    case FlcKind::And: return flc_side(f->left) + " /\\ " + flc_side(f->right);
    case FlcKind::Chop: return flc_side(f->left) + " ; " + flc_side(f->right);
    case FlcKind::Dia: return "<" + f->name + "> " + flc_side(f->left);
    case FlcKind::Box: return "[" + f->name + "] " + flc_side(f->left);
    case FlcKind::Mu:
    case FlcKind::Nu: {
      std::string body = is_binary(f->left->kind) ? paren(pl(f->left)) : pl(f->left);
      return std::string(f->kind == FlcKind::Mu ? "mu " : "nu ") + f->name + ". " + body;
    }
    case FlcKind::StarFix: {
      switch (f->left->kind) {
        case FlcKind::Id:
        case FlcKind::True:
        case FlcKind::False:
        case FlcKind::Var:
        case FlcKind::Prop:
        case FlcKind::NegProp:
        case FlcKind::StarFix:
          return pl(f->left) + "^*";
        default:
          return paren(pl(f->left)) + "^*";
      }
    }
  }
  return "?";
}

}  // namespace

std::string print(const FormPtr& f) { return pf(f); }
std::string print(const GamePtr& g) { return pg(g); }
std::string print(const FlcPtr& f) { return pl(f); }

}  // namespace glwb
