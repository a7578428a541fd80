// glwb: command-line front end. Exit codes: 0 ok, 1 property failure, 2 usage
// or input error.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "glwb/ast_json.hpp"
#include "glwb/error.hpp"
#include "glwb/proof.hpp"
#include "glwb/semantics.hpp"
#include "glwb/syntax.hpp"
#include "glwb/translate.hpp"
#include "glwb/workbench.hpp"

using namespace glwb;

namespace {

constexpr int kOk = 0;
constexpr int kPropertyFailure = 1;
constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Usage, "cannot read " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

// "-" reads standard input.
std::string read_input(const std::string& arg) {
  if (arg != "-") return arg;
  return {std::istreambuf_iterator<char>(std::cin), {}};
}

std::string read_path(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  return read_file(path);
}

// Logics accepted by --logic. The game-formula ones share one parser; the
// FLC ones share another.
enum class Sort { GameFormula, FlcFormula };

struct LogicInfo {
  Sort sort;
  Fragment fragment;
  bool sabotage;  // evaluated in the sabotage semantics
};

LogicInfo logic_info(const std::string& name) {
  if (name == "gls") return {Sort::GameFormula, Fragment::GLs, true};
  if (name == "gl") return {Sort::GameFormula, Fragment::GL, false};
  if (name == "rgl") return {Sort::GameFormula, Fragment::RGL, false};
  if (name == "rlgl") return {Sort::GameFormula, Fragment::rlGL, false};
  if (name == "flc") return {Sort::FlcFormula, Fragment::Lmu, false};
  if (name == "lmu") return {Sort::FlcFormula, Fragment::Lmu, false};
  if (name == "lstar") return {Sort::FlcFormula, Fragment::Lstar, false};
  if (name == "lsep") return {Sort::FlcFormula, Fragment::Lsep, false};
  throw Error(ErrorKind::Usage, "unknown logic " + name + " (gls, gl, rgl, rlgl, flc, lmu, lstar, lsep)");
}

struct Parsed {
  Sort sort;
  FormPtr form;
  FlcPtr flc;

  std::string text() const { return sort == Sort::GameFormula ? print(form) : print(flc); }
};

Parsed parse_as(const std::string& logic, const std::string& text) {
  const LogicInfo li = logic_info(logic);
  if (li.sort == Sort::GameFormula) return {li.sort, parse_game_formula(text), nullptr};
  return {li.sort, nullptr, parse_flc(text)};
}

struct Globals {
  std::string logic = "gls";
  std::vector<std::string> structures;
  std::uint64_t seed = 1;
  std::string out;
};

// Writes to --out when given, else to stdout.
void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw Error(ErrorKind::Usage, "cannot write " + g.out);
  f << text;
}

FiniteStructure load_structure(const std::string& path) { return parse_structure(read_path(path)); }

FiniteStructure the_structure(const Globals& g) {
  if (g.structures.size() != 1) throw Error(ErrorKind::Usage, "give exactly one --structure FILE");
  return load_structure(g.structures[0]);
}

Logic semantics_of(const LogicInfo& li) { return li.sabotage ? Logic::GLs : li.sort == Sort::FlcFormula ? Logic::FLC : Logic::RGL; }

StateSet truth(const Parsed& p, const LogicInfo& li, const FiniteStructure& s) {
  if (p.sort == Sort::FlcFormula) return truth_set(p.flc, s);
  return truth_set(p.form, semantics_of(li), s);
}

std::string fragment_table(const Parsed& p) {
  std::ostringstream o;
  if (p.sort == Sort::GameFormula) {
    for (Fragment f : {Fragment::GL, Fragment::GLs, Fragment::RGL, Fragment::rlGL, Fragment::PoorTest})
      o << fragment_name(f) << "=" << (check_fragment(p.form, f) ? 1 : 0) << "\n";
  } else {
    for (Fragment f : {Fragment::Lmu, Fragment::Lstar, Fragment::Lsep})
      o << fragment_name(f) << "=" << (check_fragment(p.flc, f) ? 1 : 0) << "\n";
  }
  return o.str();
}

int run(int argc, char** argv) {
  CLI::App app{"Game logic workbench"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--logic", g.logic, "gls, gl, rgl, rlgl, flc, lmu, lstar, lsep")->capture_default_str();
  app.add_option("--structure", g.structures, "structure file (repeatable for equiv)");
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--out", g.out, "write the main output here");

  std::string input;
  auto with_input = [&](CLI::App* sc) { sc->add_option("input", input, "expression text, or - for stdin")->required(); };

  auto* parse = app.add_subcommand("parse", "parse and emit the JSON syntax tree");
  with_input(parse);
  auto* pr = app.add_subcommand("print", "print a JSON syntax tree in concrete syntax");
  with_input(pr);
  auto* norm = app.add_subcommand("normalize", "normal form (negation on literals, duals on atoms)");
  with_input(norm);
  auto* frag = app.add_subcommand("fragment", "fragment membership");
  with_input(frag);
  std::string want_fragment;
  frag->add_option("--fragment", want_fragment, "exit 1 unless the input is in this fragment");
  auto* rnk = app.add_subcommand("rank", "rank of a game formula");
  with_input(rnk);
  auto* ev = app.add_subcommand("eval", "truth set on --structure");
  with_input(ev);
  bool all_contexts = false;
  ev->add_flag("--contexts", all_contexts, "gls: print the truth set in every context");

  auto* tr = app.add_subcommand("translate", "translate between logics");
  with_input(tr);
  std::string from, to;
  bool eliminate = false, report = false;
  tr->add_option("--from", from, "gls, rgl, rlgl, flc, lsep")->required();
  tr->add_option("--to", to, "rlgl, flc, lmu, rgl, gls, lstar")->required();
  tr->add_flag("--eliminate-bekic", eliminate, "replace simultaneous fixpoints by nested ones");
  tr->add_flag("--report", report, "print the translation report to stderr");

  auto* eq = app.add_subcommand("equiv", "compare truth sets of two formulas");
  std::string lhs, rhs, logic_b;
  int equiv_count = 20, equiv_states = 4;
  eq->add_option("lhs", lhs)->required();
  eq->add_option("rhs", rhs)->required();
  eq->add_option("--logic-b", logic_b, "logic of the right-hand side (default: --logic)");
  eq->add_option("--count", equiv_count, "random structures when no --structure is given")->capture_default_str();
  eq->add_option("--states", equiv_states, "maximum states of random structures")->capture_default_str();

  auto* pc = app.add_subcommand("proof-check", "check a proof script");
  std::string proof_file;
  pc->add_option("file", proof_file)->required();

  auto* po = app.add_subcommand("poison", "build and solve the poison game of a graph file");
  std::string graph_file;
  po->add_option("file", graph_file)->required();

  auto* ca = app.add_subcommand("campaign", "run a property campaign (or `list`)");
  CampaignConfig cc;
  ca->add_option("property", cc.property)->required();
  ca->add_option("--formulas", cc.formulas)->capture_default_str();
  ca->add_option("--structures", cc.structures)->capture_default_str();
  ca->add_option("--max-nodes", cc.max_nodes)->capture_default_str();
  ca->add_option("--max-states", cc.max_states)->capture_default_str();
  ca->add_option("--sabotage-atoms", cc.sabotage_atoms)->capture_default_str();
  ca->add_option("--budget", cc.budget)->capture_default_str();
  ca->add_option("--workers", cc.workers)->capture_default_str();

  auto* gen = app.add_subcommand("gen", "random formulas, structures or graphs");
  std::string what;
  int count = 1, states = 4, max_nodes = 12;
  std::string kind = "kripke";
  gen->add_option("what", what, "formula, structure or graph")->required();
  gen->add_option("--count", count)->capture_default_str();
  gen->add_option("--states", states, "states or vertices")->capture_default_str();
  gen->add_option("--kind", kind, "kripke or nbhd")->capture_default_str();
  gen->add_option("--max-nodes", max_nodes)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (parse->parsed()) {
    const Parsed p = parse_as(g.logic, read_input(input));
    nlohmann::json j{{"sort", p.sort == Sort::GameFormula ? "game-formula" : "flc"},
                     {"ast", p.sort == Sort::GameFormula ? to_json(p.form) : to_json(p.flc)}};
    emit(g, j.dump() + "\n");
    return kOk;
  }
  if (pr->parsed()) {
    const auto j = nlohmann::json::parse(read_input(input));
    const std::string sort = j.at("sort");
    if (sort == "game-formula") emit(g, print(form_from_json(j.at("ast"))) + "\n");
    else if (sort == "flc") emit(g, print(flc_from_json(j.at("ast"))) + "\n");
    else throw Error(ErrorKind::Format, "sort must be game-formula or flc");
    return kOk;
  }
  if (norm->parsed()) {
    const Parsed p = parse_as(g.logic, read_input(input));
    emit(g, (p.sort == Sort::GameFormula ? print(normal_form(p.form)) : print(p.flc)) + "\n");
    return kOk;
  }
  if (frag->parsed()) {
    const Parsed p = parse_as(g.logic, read_input(input));
    emit(g, fragment_table(p));
    if (want_fragment.empty()) return kOk;
    Fragment f;
    if (!parse_fragment(want_fragment, f)) throw Error(ErrorKind::Usage, "unknown fragment " + want_fragment);
    const bool in = p.sort == Sort::GameFormula ? check_fragment(p.form, f) : check_fragment(p.flc, f);
    return in ? kOk : kPropertyFailure;
  }
  if (rnk->parsed()) {
    const Parsed p = parse_as(g.logic, read_input(input));
    if (p.sort != Sort::GameFormula) throw Error(ErrorKind::Usage, "rank is defined for game formulas");
    emit(g, std::to_string(rank(p.form)) + "\n");
    return kOk;
  }
  if (ev->parsed()) {
    const LogicInfo li = logic_info(g.logic);
    const Parsed p = parse_as(g.logic, read_input(input));
    const FiniteStructure s = the_structure(g);
    if (all_contexts) {
      if (!li.sabotage) throw Error(ErrorKind::Usage, "--contexts needs --logic gls");
      const auto atoms = sabotage_atoms(p.form);
      const std::vector<std::string> alphabet(atoms.begin(), atoms.end());
      const CSet cs = eval_gls_formula(p.form, s, alphabet);
      ContextSpace space(alphabet);
      std::ostringstream o;
      for (std::size_t c = 0; c < cs.size(); ++c) o << space.describe(c) << " " << to_string({cs[c]}, s.states()) << "\n";
      emit(g, o.str());
    } else {
      emit(g, to_string(truth(p, li, s), s.states()) + "\n");
    }
    return kOk;
  }
  if (tr->parsed()) {
    const std::string text = read_input(input);
    TranslationReport r;
    std::string out;
    if (from == "gls" && to == "rlgl") {
      FormPtr t = ctx_formula(parse_game_formula(text), {}, &r);
      if (eliminate) t = eliminate_systems(t);
      out = print(t);
    } else if ((from == "rgl" || from == "rlgl") && to == "flc") {
      out = print(flat(parse_game_formula(text), &r));
    } else if (from == "rlgl" && to == "lmu") {
      out = print(qflat(parse_game_formula(text), &r));
    } else if (from == "flc" && to == "rgl") {
      out = print(sharp_formula(parse_flc(text), &r));
    } else if (from == "rlgl" && to == "gls") {
      out = print(natural(parse_game_formula(text), &r));
    } else if (from == "lsep" && to == "lstar") {
      out = print(sep_to_star(parse_flc(text), &r));
    } else {
      throw Error(ErrorKind::Usage, "no translation from " + from + " to " + to +
                                        " (gls->rlgl, rgl->flc, rlgl->lmu, flc->rgl, rlgl->gls, lsep->lstar)");
    }
    emit(g, out + "\n");
    if (report) std::cerr << r.key_values();
    return kOk;
  }
  if (eq->parsed()) {
    const std::string lb = logic_b.empty() ? g.logic : logic_b;
    const LogicInfo la_info = logic_info(g.logic), lb_info = logic_info(lb);
    const Parsed a = parse_as(g.logic, read_input(lhs)), b = parse_as(lb, rhs);
    std::vector<FiniteStructure> ss;
    for (const auto& path : g.structures) ss.push_back(load_structure(path));
    if (ss.empty()) {
      Rng rng(g.seed);
      for (int i = 0; i < equiv_count; ++i) {
        StructureConfig c;
        c.states = 1 + static_cast<int>(pick(rng, equiv_states));
        c.kind = i % 2 ? StructureKind::Neighbourhood : StructureKind::Kripke;
        std::set<std::string> atoms, props;
        for (const Parsed* p : {&a, &b}) {
          auto as = p->sort == Sort::GameFormula ? played_atoms(p->form) : atoms_of(p->flc);
          atoms.insert(as.begin(), as.end());
          if (p->sort == Sort::GameFormula) {
            auto ts = sabotage_atoms(p->form);
            atoms.insert(ts.begin(), ts.end());
          }
          auto ps = p->sort == Sort::GameFormula ? props_of(p->form) : props_of(p->flc);
          props.insert(ps.begin(), ps.end());
        }
        c.atoms.assign(atoms.begin(), atoms.end());
        c.props.assign(props.begin(), props.end());
        ss.push_back(random_structure(c, rng));
      }
    }
    const EquivReport rep = equiv_check([&](const FiniteStructure& s) { return truth(a, la_info, s); },
                                        [&](const FiniteStructure& s) { return truth(b, lb_info, s); }, ss);
    std::ostringstream o;
    o << "equivalent=" << (rep.equivalent ? 1 : 0) << "\nstructures_checked=" << rep.structures_checked << "\n";
    if (!rep.equivalent) o << "counterexample: " << rep.detail << "\n" << write_structure(ss[rep.counterexample_structure]);
    emit(g, o.str());
    return rep.equivalent ? kOk : kPropertyFailure;
  }
  if (pc->parsed()) {
    const Verdict v = check_proof(parse_proof(read_path(proof_file)));
    std::ostringstream o;
    if (v.accepted) o << "accepted\n";
    else o << "rejected at line " << v.source_line << " (label " << v.label << "): " << v.reason << "\n";
    emit(g, o.str());
    return v.accepted ? kOk : kPropertyFailure;
  }
  if (po->parsed()) {
    const Digraph d = parse_graph(read_path(graph_file));
    const PoisonInstance p = poison_build(d);
    const StateSet got = gls_truth(p.formula, p.structure), want = poison_oracle(d);
    std::ostringstream o;
    o << "formula=" << print(p.formula) << "\n"
      << "truth=" << to_string(got, d.n) << "\n"
      << "oracle=" << to_string(want, d.n) << "\n"
      << "classical=" << to_string(classical_poison_oracle(d), d.n) << "\n"
      << "agree=" << (got == want ? 1 : 0) << "\n";
    std::cout << o.str();
    if (!g.out.empty()) emit(g, write_structure(p.structure));
    return got == want ? kOk : kPropertyFailure;
  }
  if (ca->parsed()) {
    if (cc.property == "list") {
      std::ostringstream o;
      for (const auto& id : campaign_ids()) o << id << "\n";
      emit(g, o.str());
      return kOk;
    }
    cc.seed = g.seed;
    const CampaignReport r = run_campaign(cc);
    emit(g, r.key_values());
    if (!r.passed() && !r.first_failure.empty()) std::cerr << r.first_failure << "\n";
    return r.passed() ? kOk : kPropertyFailure;
  }
  if (gen->parsed()) {
    Rng rng(g.seed);
    std::ostringstream o;
    if (what == "formula") {
      const LogicInfo li = logic_info(g.logic);
      FormulaConfig fc;
      fc.max_nodes = max_nodes;
      for (int i = 0; i < count; ++i)
        o << (li.sort == Sort::GameFormula ? print(random_formula(li.fragment, fc, rng))
                                           : print(random_flc(li.fragment, fc, rng, g.logic == "flc")))
          << "\n";
    } else if (what == "structure") {
      if (kind != "kripke" && kind != "nbhd") throw Error(ErrorKind::Usage, "--kind is kripke or nbhd");
      for (int i = 0; i < count; ++i) {
        StructureConfig c;
        c.states = states;
        c.kind = kind == "kripke" ? StructureKind::Kripke : StructureKind::Neighbourhood;
        if (i) o << "\n";
        o << write_structure(random_structure(c, rng));
      }
    } else if (what == "graph") {
      for (int i = 0; i < count; ++i) {
        Digraph d;
        d.n = states;
        for (int x = 0; x < states; ++x)
          for (int y = 0; y < states; ++y)
            if (coin(rng, 0.4)) d.edges.emplace_back(x, y);
        if (i) o << "\n";
        o << write_graph(d);
      }
    } else {
      throw Error(ErrorKind::Usage, "gen takes formula, structure or graph");
    }
    emit(g, o.str());
    return kOk;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "glwb: " << e.what() << "\n";
    return kUsage;
  }
}
