#include <map>
#include <set>
#include <string>
#include <vector>

#include "glwb/error.hpp"
#include "glwb/proof.hpp"
#include "glwb/syntax.hpp"

namespace glwb {
namespace {

struct TrapReplacer {
  const std::map<std::string, std::string>& m;

  FormPtr form(const FormPtr& f) {
    switch (f->kind) {
      case FormKind::Neg: return gl::neg(form(f->left));
      case FormKind::Or: return gl::lor(form(f->left), form(f->right));
      case FormKind::And: return gl::land(form(f->left), form(f->right));
      case FormKind::Diamond: return gl::dia(game(f->game), form(f->left));
      default: return f;
    }
  }
  GamePtr game(const GamePtr& g) {
    switch (g->kind) {
      case GameKind::TrapA:
      case GameKind::TrapD: {
        auto it = m.find(g->name);
        if (it == m.end()) return g;
        return g->kind == GameKind::TrapA ? gl::atom(it->second) : gl::dual_atom(it->second);
      }
      case GameKind::Test: return gl::test(form(g->form));
      case GameKind::DTest: return gl::dtest(form(g->form));
      case GameKind::Choice: return gl::choice(game(g->left), game(g->right));
      case GameKind::DChoice: return gl::dchoice(game(g->left), game(g->right));
      case GameKind::Seq: return gl::seq(game(g->left), game(g->right));
      case GameKind::Star: return gl::star(game(g->left));
      case GameKind::DStar: return gl::dstar(game(g->left));
      case GameKind::Dual: return gl::dual(game(g->left));
      case GameKind::Rec: return gl::rec(g->name, game(g->left));
      case GameKind::CoRec: return gl::corec(g->name, game(g->left));
      case GameKind::System: {
        auto sys = std::make_shared<RecSystem>(*g->system);
        for (auto& b : sys->bindings) b.second = game(b.second);
        return gl::component(sys, g->index);
      }
      default: return g;
    }
  }
};

}  // namespace

FormPtr replace_traps(const FormPtr& f, const std::map<std::string, std::string>& trap_names) {
  TrapReplacer r{trap_names};
  return normal_form(r.form(f));
}

void check_partition(const AFrakParams& p) {
  auto fail = [](const std::string& m) { throw Error(ErrorKind::PartitionViolation, m); };
  for (const auto& a : p.g1) {
    if (p.g2.count(a)) fail(a + " is in both G1 and G2");
    if (p.g3.count(a)) fail(a + " is in both G1 and G3");
  }
  for (const auto& a : p.g2)
    if (p.g3.count(a)) fail(a + " is in both G2 and G3");
  std::set<std::string> used;
  for (const auto& [b, s] : p.trap_names) {
    if (!p.g2.count(b)) fail("trap name given for " + b + ", which is not in G2");
    if (!p.g3.count(s)) fail("trap name " + s + " for " + b + " is not in G3");
    if (!used.insert(s).second) fail("trap name " + s + " is used twice");
  }
  for (const auto& b : p.g2)
    if (!p.trap_names.count(b)) fail(b + " in G2 has no trap name");
}

std::vector<FormPtr> afrak_instances(const AFrakParams& p, const std::vector<std::pair<SchemaId, Instantiation>>& insts) {
  check_partition(p);
  std::vector<FormPtr> out;
  for (const auto& [base, inst] : insts) {
    Instantiation full = inst;
    full["base"] = meta::schema(base);
    full["traps"] = meta::atom_map(p.trap_names);
    FormPtr base_f = std::get<FormPtr>(instantiate_schema(base, inst).conclusion);
    for (const auto& b : sabotage_atoms(base_f))
      if (!p.g2.count(b)) throw Error(ErrorKind::PartitionViolation, "sabotaged atom " + b + " is not in G2");
    for (const auto& a : played_atoms(base_f))
      if (p.g3.count(a)) throw Error(ErrorKind::PartitionViolation, "atom " + a + " of G3 is played in the instance");
    if (auto v = check_side_condition(SchemaId::AFrak, full))
      throw Error(ErrorKind::IncompleteInstantiation, "side condition: " + *v);
    out.push_back(std::get<FormPtr>(instantiate_schema(SchemaId::AFrak, full).conclusion));
  }
  return out;
}

}  // namespace glwb
