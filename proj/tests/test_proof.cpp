#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "glwb/error.hpp"
#include "glwb/proof.hpp"
#include "glwb/syntax.hpp"
#include "proof_mutation.hpp"
#include "support.hpp"

using namespace glwb;
using namespace glwb::testing;

namespace {

Formula conclusion(SchemaId id, const Instantiation& in, Universe u = Universe::Game) {
  return instantiate_schema(id, in, u).conclusion;
}

bool same(const Formula& a, const FormPtr& b) { return equal(a, Formula{normal_form(b)}); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Usage;
}

// Truth of a propositional formula under every valuation, evaluated as the
// truth set of a one-state structure.
bool valid_by_valuations(const FormPtr& f) {
  auto ps = props_of(f);
  std::vector<std::string> names(ps.begin(), ps.end());
  for (std::uint32_t v = 0; v < (1u << names.size()); ++v) {
    FiniteStructure s(1);
    for (std::size_t i = 0; i < names.size(); ++i) s.set_prop(names[i], (v >> i) & 1u ? s.full() : StateSet{});
    if (!eval_rgl_formula(f, s).contains(0)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("fixpoint unfolding of the identity body") {
  auto c = conclusion(SchemaId::fp, {{"x", meta::var("x")}, {"phi", meta::flc(L("x", {"x"}))}}, Universe::Modal);
  CHECK(equal(c, Formula{L("(mu x. x) -> mu x. x")}));
}

TEST_CASE("test axiom") {
  auto c = conclusion(SchemaId::GTest, {{"phi", meta::form(F("P"))}, {"psi", meta::form(F("Q"))}});
  CHECK(same(c, F("<?P>Q <-> P /\\ Q")));
}

TEST_CASE("Angel sabotage with an empty tail cancels a following move") {
  Instantiation in{{"a", meta::atom("a")},
                   {"x", meta::vars({"x"})},
                   {"beta", meta::games({nullptr})},
                   {"alpha", meta::game(G("x", {"x"}))},
                   {"phi", meta::form(F("phi"))}};
  CHECK(same(conclusion(SchemaId::SAsab, in), F("<~a><a>phi <-> <~a>phi")));
  CHECK_FALSE(check_side_condition(SchemaId::SAsab, in));
}

TEST_CASE("dagger condition rejects the sabotaged atom inside the context") {
  Instantiation in{{"a", meta::atom("a")},
                   {"x", meta::vars({"x"})},
                   {"beta", meta::games({nullptr})},
                   {"alpha", meta::game(G("a;x", {"x"}))},
                   {"phi", meta::form(F("P"))}};
  auto v = check_side_condition(SchemaId::SAsab, in);
  REQUIRE(v);
  CHECK(*v == "†: a appears in α");
  for (const char* bad : {"a^d;x", "~a;x", "~'a;x", "x ∪ ?<a>P"}) {
    in["alpha"] = meta::game(G(bad, {"x"}));
    CHECK_MESSAGE(check_side_condition(SchemaId::SAsab, in), bad);
  }
  in["alpha"] = meta::game(G("x", {"x"}));
  in["phi"] = meta::form(F("<a^d>P"));
  CHECK(check_side_condition(SchemaId::SAsab, in));
  in["phi"] = meta::form(F("<~a>P"));  // traps are allowed in the postcondition
  CHECK_FALSE(check_side_condition(SchemaId::SAsab, in));
}

TEST_CASE("right-linearity of the substituted variables") {
  Instantiation in{{"a", meta::atom("a")},
                   {"x", meta::vars({"x"})},
                   {"beta", meta::games({nullptr})},
                   {"phi", meta::form(F("P"))}};
  for (const char* ok : {"x", "b;x", "x ∪ b", "c ∩ (b;x)"}) {
    in["alpha"] = meta::game(G(ok, {"x"}));
    CHECK_MESSAGE(!check_side_condition(SchemaId::SAsab, in), ok);
  }
  for (const char* bad : {"x;b", "(b;x)^*", "rec z.(x ∪ b;z)", "x^d"}) {
    in["alpha"] = meta::game(G(bad, {"x"}));
    auto v = check_side_condition(SchemaId::SAsab, in);
    REQUIRE_MESSAGE(v, bad);
    CHECK(v->rfind("right-linearity: x occurs", 0) == 0);
  }
}

TEST_CASE("double-dagger condition on the branch axiom") {
  Instantiation in{{"atoms", meta::atoms({"a1"})},
                   {"i", meta::index(1)},
                   {"w", meta::var("w")},
                   {"alpha", meta::game(G("w", {"w"}))},
                   {"betas", meta::games({G("~b1;~'b2")})},
                   {"beta", meta::game(G("c"))},
                   {"phi", meta::form(F("P"))}};
  CHECK_FALSE(check_side_condition(SchemaId::SBranch, in));
  in["betas"] = meta::games({G("~'b2;~b1")});
  CHECK(check_side_condition(SchemaId::SBranch, in));
  in["betas"] = meta::games({G("~b1;~'b2")});
  in["alpha"] = meta::game(G("~b1;w", {"w"}));  // a trap of b1 outside a block
  CHECK(check_side_condition(SchemaId::SBranch, in));
}

TEST_CASE("renaming requires a fresh variable") {
  Instantiation in{{"sigma", meta::binder(false)},
                   {"x", meta::var("x")},
                   {"y", meta::var("y")},
                   {"alpha", meta::game(G("a;x ∪ y", {"x", "y"}))},
                   {"phi", meta::form(F("P"))}};
  auto v = check_side_condition(SchemaId::GAlpha, in);
  REQUIRE(v);
  CHECK(*v == "freshness: y occurs in α");
  in["alpha"] = meta::game(G("a;x ∪ b", {"x"}));
  CHECK_FALSE(check_side_condition(SchemaId::GAlpha, in));
}

TEST_CASE("removal and not-yet side conditions") {
  Instantiation rem{{"a", meta::atom("a")},
                    {"x", meta::vars({"x"})},
                    {"eta", meta::games({G("~a")})},
                    {"alpha", meta::game(G("x;b", {"x"}))},
                    {"phi", meta::form(F("P"))}};
  CHECK_FALSE(check_side_condition(SchemaId::SSabRem, rem));
  rem["eta"] = meta::games({G("~b")});
  CHECK(check_side_condition(SchemaId::SSabRem, rem));
  rem["eta"] = meta::games({G("~a")});
  rem["alpha"] = meta::game(G("x;a", {"x"}));
  CHECK(check_side_condition(SchemaId::SSabRem, rem));

  Instantiation ny{{"a", meta::atom("a")}, {"b", meta::atom("b")},  {"x", meta::var("x")},
                   {"y", meta::var("y")},  {"eta", meta::game(G("~b"))}, {"alpha", meta::game(G("x ∪ y", {"x", "y"}))},
                   {"phi", meta::form(F("P"))}};
  CHECK_FALSE(check_side_condition(SchemaId::SSabNotYet, ny));
  ny["b"] = meta::atom("a");
  ny["eta"] = meta::game(G("~a"));
  CHECK(*check_side_condition(SchemaId::SSabNotYet, ny) == "SSabNotYet: a and b must differ");
}

TEST_CASE("propositional tautologies") {
  CHECK(taut_check(F("phi \\/ -phi")));
  CHECK(taut_check(F("<a>P -> <a>P")));
  CHECK(taut_check(F("P /\\ Q -> P \\/ R")));
  CHECK_FALSE(taut_check(F("P \\/ Q -> P /\\ R")));
  CHECK_FALSE(taut_check(F("<a>P -> <b>P")));
  // An opaque atom and its complement are one atom.
  CHECK(taut_check(F("<a>P \\/ [a]-P")));
  CHECK(taut_check(L("<a> P \\/ [a] -P")));
  std::string big = "P0";
  for (int i = 1; i <= 20; ++i) big += " \\/ P" + std::to_string(i);
  CHECK(kind_of([&] { taut_check(F(big)); }) == ErrorKind::TooManyAtoms);
}

TEST_CASE("tautology check agrees with truth tables on random propositional formulas") {
  Rng rng(11);
  std::vector<std::string> ps = {"P", "Q", "R"};
  std::function<FormPtr(int)> gen = [&](int d) -> FormPtr {
    if (d == 0 || coin(rng, 0.25)) return coin(rng, 0.5) ? gl::prop(ps[pick(rng, 3)]) : gl::neg_prop(ps[pick(rng, 3)]);
    switch (pick(rng, 3)) {
      case 0: return gl::neg(gen(d - 1));
      case 1: return gl::lor(gen(d - 1), gen(d - 1));
      default: return gl::land(gen(d - 1), gen(d - 1));
    }
  };
  int valid = 0;
  for (int n = 0; n < 2000; ++n) {
    auto f = gl::lor(gen(4), gen(3));
    bool expect = valid_by_valuations(f);
    valid += expect;
    REQUIRE_MESSAGE(taut_check(f) == expect, print(f));
  }
  CHECK(valid > 50);
}

TEST_CASE("incomplete and ill-sized instantiations") {
  CHECK(kind_of([] { instantiate_schema(SchemaId::GTest, {{"phi", meta::form(F("P"))}}); }) ==
        ErrorKind::IncompleteInstantiation);
  Instantiation in{{"a", meta::atom("a")},
                   {"x", meta::vars({"x", "z"})},
                   {"beta", meta::games({nullptr})},
                   {"alpha", meta::game(G("x", {"x", "z"}))},
                   {"phi", meta::form(F("P"))}};
  CHECK(kind_of([&] { instantiate_schema(SchemaId::SAsab, in); }) == ErrorKind::WidthMismatch);
  in["phi"] = meta::game(G("a"));
  CHECK(kind_of([&] { instantiate_schema(SchemaId::SAsab, in); }) == ErrorKind::IncompleteInstantiation);
}

TEST_CASE("calculi admit their own schemas") {
  CHECK(admits(Calculus::GLs, SchemaId::SAsab));
  CHECK_FALSE(admits(Calculus::GL, SchemaId::SAsab));
  CHECK_FALSE(admits(Calculus::GLs, SchemaId::GAlpha));
  CalculusOptions o;
  o.gls_alpha = true;
  CHECK(admits(Calculus::GLs, SchemaId::GAlpha, o));
  CHECK(admits(Calculus::rlGLG, SchemaId::K));
  CHECK_FALSE(admits(Calculus::rlGL, SchemaId::K));
  CHECK(admits(Calculus::GLA, SchemaId::AFrak));
  CHECK_FALSE(admits(Calculus::mLmu, SchemaId::GTest));
}

TEST_CASE("the Angel wins after trapping the Demon's move") {
  auto s = parse_proof(slurp(GLWB_DATA_DIR "/proofs/angel_wins.proof"));
  CHECK(check_proof(s).accepted);
}

TEST_CASE("sabotage axioms are refused outside the sabotage calculus") {
  auto s = parse_proof("calculus GL\n1. <a>P -> <a>P BY axiom:Taut\n"
                       "2. <~a><a>P <-> <~a>P BY axiom:SAsab {a=a, x=[x], beta=[_], alpha=x, phi=P}\n");
  auto v = check_proof(s);
  CHECK_FALSE(v.accepted);
  CHECK(v.label == 2);
  CHECK(v.source_line == 3);
  s.calculus = Calculus::GLs;
  CHECK(check_proof(s).accepted);
}

TEST_CASE("a dagger violation is reported at its line") {
  auto v = check_proof(parse_proof("1. P -> P BY axiom:Taut\n"
                                   "2. <~a><a;a>P <-> <~a;a>P BY axiom:SAsab {a=a, x=[x], beta=[_], alpha=a;x, phi=P}\n"
                                   "3. P \\/ -P BY axiom:Taut\n"));
  CHECK_FALSE(v.accepted);
  CHECK(v.label == 2);
  CHECK(v.reason.find("†: a appears in α") != std::string::npos);
}

TEST_CASE("regression scripts are accepted") {
  auto all = regression_scripts();
  CHECK(all.size() >= 13);
  for (const auto& [name, text] : all) {
    auto v = check_proof(parse_proof(text));
    CHECK_MESSAGE(v.accepted, name << " rejected at " << v.label << ": " << v.reason);
  }
}

TEST_CASE("checker verdicts are deterministic") {
  for (const auto& [name, text] : regression_scripts()) {
    auto s = parse_proof(text);
    auto a = check_proof(s), b = check_proof(parse_proof(text));
    CHECK(a.accepted == b.accepted);
    CHECK(a.reason == b.reason);
  }
}

TEST_CASE("write_proof round-trips") {
  for (const auto& [name, text] : regression_scripts()) {
    auto s = parse_proof(text);
    std::string w = write_proof(s);
    ProofScript back;
    REQUIRE_NOTHROW_MESSAGE(back = parse_proof(w), name << "\n" << w);
    CHECK_MESSAGE(check_proof(back).accepted, name);
    CHECK(write_proof(back) == w);
    REQUIRE(back.lines.size() == s.lines.size());
    for (std::size_t i = 0; i < s.lines.size(); ++i) CHECK(equal(s.lines[i].formula, back.lines[i].formula));
  }
}

TEST_CASE("syntax errors carry file positions") {
  struct Case {
    std::string text;
    std::size_t line, column;
  };
  for (const Case& c : {Case{"1. P BY axiom:Taut\n2. <a P BY axiom:Taut\n", 2, 7},
                        Case{"calculus Nope\n", 1, 10},
                        Case{"# header\n\n1. P BY axiom:Frob\n", 3, 15},
                        Case{"1. P -> P BY rule:MP from 1,x\n", 1, 29},
                        Case{"1. P\n", 1, 3}}) {
    try {
      parse_proof(c.text);
      FAIL("expected a syntax error for " << c.text);
    } catch (const SyntaxError& e) {
      CHECK_MESSAGE(e.line() == c.line, c.text << " -> " << e.what());
      CHECK_MESSAGE(e.column() == c.column, c.text << " -> " << e.what());
    }
  }
}

TEST_CASE("structural checks on lines") {
  CHECK(check_proof(parse_proof("1. P \\/ -P BY axiom:Taut\n1. Q \\/ -Q BY axiom:Taut\n")).reason ==
        "label 1 is used twice");
  CHECK(check_proof(parse_proof("1. P \\/ -P BY rule:MP from 2,3\n")).reason ==
        "premise 2 does not refer to an earlier line");
  CHECK_THROWS_AS(parse_proof("1. P \\/ -P BY axiom:Taut\n2. <?P>Q <-> P /\\ Q BY rule:GTest from 1 {phi=P, psi=Q}\n"),
                  SyntaxError);
  auto s = parse_proof("1. P \\/ -P BY axiom:Taut\n2. <?P>Q <-> P /\\ Q BY axiom:GTest {phi=P, psi=Q}\n");
  s.lines[1].premises = {1};
  auto v = check_proof(s);
  CHECK(v.label == 2);
  CHECK(v.reason == "axiom GTest takes no premises");
  // Modal calculi read lines as modal formulas, where tests do not exist.
  CHECK_THROWS_AS(parse_proof("calculus mLmu\n1. <?P>Q <-> P /\\ Q BY axiom:GTest {phi=P, psi=Q}\n"), SyntaxError);
  v = check_proof(parse_proof("calculus mLmu\n1. <a>P \\/ -<a>P BY axiom:GTest {phi=P, psi=Q}\n"));
  CHECK(v.reason == "GTest is not part of the mLmu calculus");
}


TEST_CASE("mutated scripts are rejected at the mutated line") {
  auto all = regression_scripts();
  Rng rng(2024);
  int made = 0, per_kind[std::size(kMutations)] = {};
  for (int attempt = 0; attempt < 4000 && made < 120; ++attempt) {
    const auto& [name, text] = all[pick(rng, all.size())];
    ProofScript s = parse_proof(text);
    std::size_t k = pick(rng, s.lines.size());
    int kind = static_cast<int>(pick(rng, std::size(kMutations)));
    if (!mutate(s, k, kMutations[kind], rng)) continue;
    ++made;
    ++per_kind[kind];
    auto v = check_proof(s);
    CHECK_MESSAGE(!v.accepted, name << " line " << k << " mutation " << kind);
    CHECK_MESSAGE(v.source_line == s.lines[k].source_line, name << " line " << k << " mutation " << kind << ": " << v.reason);
  }
  CHECK(made >= 50);
  for (int c : per_kind) CHECK(c > 0);
}

TEST_CASE("consistent renaming of bound variables preserves acceptance") {
  // Rename x wherever it is not an instantiation key.
  std::regex x_use(R"(\bx\b(?!=))");
  int renamed = 0;
  for (const auto& [name, text] : regression_scripts()) {
    std::string r = std::regex_replace(text, x_use, "w7");
    if (r == text) continue;
    ++renamed;
    auto v = check_proof(parse_proof(r));
    CHECK_MESSAGE(v.accepted, name << " rejected at " << v.label << ": " << v.reason);
  }
  CHECK(renamed >= 5);
}

TEST_CASE("trap replacement turns sabotage instances into game-logic formulas") {
  AFrakParams p;
  p.g1 = {"a"};
  p.g2 = {"b"};
  p.g3 = {"s_b"};
  p.trap_names = {{"b", "s_b"}};
  Instantiation in{{"a", meta::atom("b")},
                   {"x", meta::vars({"x"})},
                   {"beta", meta::games({nullptr})},
                   {"alpha", meta::game(G("x", {"x"}))},
                   {"phi", meta::form(F("phi"))}};
  auto out = afrak_instances(p, {{SchemaId::SAsab, in}});
  REQUIRE(out.size() == 1);
  CHECK(equal(out[0], normal_form(F("<s_b><b>phi <-> <s_b>phi"))));
  CHECK(afrak_instances(p, {}).empty());

  in["alpha"] = meta::game(G("a;x", {"x"}));
  in["phi"] = meta::form(F("<~b>P"));
  Instantiation dual = in;
  dual.erase("x");
  dual.erase("beta");
  dual["y"] = meta::vars({"x"});
  dual["gamma"] = meta::games({G("c")});
  Instantiation rem{{"a", meta::atom("b")},
                    {"x", meta::vars({"x"})},
                    {"eta", meta::games({G("~'b")})},
                    {"alpha", meta::game(G("x;a", {"x"}))},
                    {"phi", meta::form(F("P"))}};
  out = afrak_instances(p, {{SchemaId::SAsab, in}, {SchemaId::SDsab, dual}, {SchemaId::SSabRem, rem}});
  CHECK(out.size() == 3);
  for (const auto& f : out) {
    CHECK_MESSAGE(check_fragment(f, Fragment::GL), print(f));
    CHECK(sabotage_atoms(f).empty());
  }
}

TEST_CASE("trap partitions must be disjoint and injective") {
  auto bad = [](AFrakParams p) { return kind_of([&] { check_partition(p); }) == ErrorKind::PartitionViolation; };
  CHECK(bad({{"a"}, {"a"}, {"s"}, {{"a", "s"}}}));
  CHECK(bad({{}, {"b", "c"}, {"s"}, {{"b", "s"}, {"c", "s"}}}));
  CHECK(bad({{}, {"b"}, {"s"}, {}}));
  CHECK(bad({{}, {"b"}, {"s"}, {{"b", "t"}}}));
  CHECK_NOTHROW(check_partition({{"a"}, {"b", "c"}, {"s", "t"}, {{"b", "s"}, {"c", "t"}}}));

  AFrakParams p{{"a"}, {"b"}, {"s"}, {{"b", "s"}}};
  Instantiation plays_trap_name{{"a", meta::atom("b")},
                                {"x", meta::vars({"x"})},
                                {"beta", meta::games({nullptr})},
                                {"alpha", meta::game(G("s;x", {"x"}))},
                                {"phi", meta::form(F("P"))}};
  CHECK(kind_of([&] { afrak_instances(p, {{SchemaId::SAsab, plays_trap_name}}); }) == ErrorKind::PartitionViolation);
}

TEST_CASE("AFrak lines need a configured base and trap names") {
  const char* body = "1. <sb><b>P <-> <sb>P BY axiom:AFrak {base=SAsab, a=b, x=[x], beta=[_], alpha=x, phi=P}\n";
  CHECK(check_proof(parse_proof(std::string("calculus GL+A\nafrak b:sb\n") + body)).accepted);
  CHECK_FALSE(check_proof(parse_proof(std::string("calculus GL+A\n") + body)).accepted);
  CHECK_FALSE(check_proof(parse_proof(std::string("calculus GL+A\nafrak b:sb\nafrak_bases SSabRem\n") + body)).accepted);
  CHECK_FALSE(check_proof(parse_proof(std::string("calculus GL\nafrak b:sb\n") + body)).accepted);
}
