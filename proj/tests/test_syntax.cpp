#include <string>

#include "doctest.h"
#include "glwb/error.hpp"
#include "glwb/syntax.hpp"

using namespace glwb;

namespace {

FormPtr F(const std::string& s, const ParseOptions& o = {}) { return parse_game_formula(s, o); }
GamePtr G(const std::string& s, const ParseOptions& o = {}) { return parse_game(s, o); }
FlcPtr L(const std::string& s, const ParseOptions& o = {}) { return parse_flc(s, o); }

ParseOptions free_xy() {
  ParseOptions o;
  o.free_vars = {"x", "y"};
  return o;
}

}  // namespace

TEST_CASE("parse: trap example") {
  auto f = F("<(~a ∩ ~'a); a> true");
  auto want = gl::dia(gl::seq(gl::dchoice(gl::trap_a("a"), gl::trap_d("a")), gl::atom("a")), gl::tt());
  CHECK(equal(f, want));
}

TEST_CASE("parse: proposition") { CHECK(equal(F("P"), gl::prop("P"))); }

TEST_CASE("parse: recursive game with right-nested sequence") {
  auto f = F("<rec x.(?true ∪ a;x;b)> P");
  auto body = gl::choice(gl::test(gl::tt()), gl::seq(gl::atom("a"), gl::seq(gl::var("x"), gl::atom("b"))));
  CHECK(equal(f, gl::dia(gl::rec("x", body), gl::prop("P"))));
}

TEST_CASE("parse: ascii fallbacks and precedence") {
  CHECK(equal(G("a |u| b |n| c"), G("a ∪ (b ∩ c)")));
  // postfix binds tighter than ;, which binds tighter than ∪
  CHECK(equal(G("a;b^* ∪ c"), gl::choice(gl::seq(gl::atom("a"), gl::star(gl::atom("b"))), gl::atom("c"))));
  CHECK(equal(G("a^d"), gl::dual_atom("a")));
  CHECK(equal(G("(a;b)^d"), gl::dual(gl::seq(gl::atom("a"), gl::atom("b")))));
  CHECK(equal(G("a^x"), gl::dstar(gl::atom("a"))));
  CHECK(equal(F("-P"), gl::neg_prop("P")));
  CHECK(equal(F("-(P)"), gl::neg(gl::prop("P"))));
  CHECK(equal(F("P \\/ Q /\\ R"), gl::lor(gl::prop("P"), gl::land(gl::prop("Q"), gl::prop("R")))));
}

TEST_CASE("parse: errors carry positions") {
  try {
    F("<a> (P \\/");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() >= 10);
  }
  CHECK_THROWS_AS(F("<a;;b> P"), SyntaxError);
  CHECK_THROWS_AS(L("mu x. (x"), SyntaxError);
}

TEST_CASE("parse: kind clash between game and variable") {
  // x is bound as a variable and also used as an atomic game elsewhere.
  try {
    F("<x; rec x. x> P");
    FAIL("expected a kind clash");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::KindClash);
  }
  // P used as proposition and as game
  try {
    F("<P> P");
    FAIL("expected a kind clash");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::KindClash);
  }
}

TEST_CASE("parse_flc: examples") {
  auto f = L("mu x. (id \\/ (phi ; x))");
  CHECK(equal(f, flc::mu("x", flc::lor(flc::id(), flc::chop(flc::prop("phi"), flc::var("x"))))));
  CHECK(equal(L("id"), flc::id()));
  CHECK(equal(L("(phi^*) ; psi"), flc::chop(flc::star(flc::prop("phi")), flc::prop("psi"))));
  CHECK(equal(L("<a> P /\\ [b] -Q"), flc::land(flc::dia("a", flc::prop("P")), flc::box("b", flc::neg_prop("Q")))));
}

TEST_CASE("print: examples") {
  CHECK(print(gl::prop("P")) == "P");
  CHECK(print(gl::trap_a("a")) == "~a");
  CHECK(print(gl::trap_d("a")) == "~'a");
  CHECK(print(gl::rec("x", gl::choice(gl::test(gl::tt()), gl::seq(gl::atom("a"), gl::var("x"))))) ==
        "rec x. (?true ∪ (a; x))");
}

TEST_CASE("print then parse is the identity on the examples") {
  for (const char* s : {"<(~a ∩ ~'a); a> true", "<rec x.(?true ∪ a;x;b)> P", "<(a;b)^d> -(P)",
                        "<corec y. (a ∩ (b; y))^*; ?(<c> Q)> (P /\\ -Q)", "<!(P \\/ Q); a^x> false"}) {
    auto f = F(s);
    CHECK(equal(F(print(f)), f));
  }
  for (const char* s : {"mu x. (id \\/ (phi ; x))", "(phi^*) ; psi", "nu y. ([a] y /\\ <b> true)", "-P ; id"}) {
    auto f = L(s);
    CHECK(equal(L(print(f)), f));
  }
}

TEST_CASE("normal_form: examples") {
  CHECK(equal(normal_form(gl::neg(gl::prop("P"))), gl::neg_prop("P")));
  auto a = G("a;b"), b = G("c^*");
  auto nf = normal_form(gl::dual(gl::choice(a, b)));
  CHECK(equal(nf, gl::dchoice(game_dual(a), game_dual(b))));
  CHECK(equal(nf, G("(a^d; b^d) ∩ (c^d)^x")));
  CHECK(equal(normal_form(gl::dual(gl::trap_a("a"))), gl::trap_d("a")));
  CHECK(equal(normal_form(gl::dual(gl::trap_d("a"))), gl::trap_a("a")));
}

TEST_CASE("normal_form: full dual table") {
  CHECK(equal(game_dual(G("?P")), G("!P")));
  CHECK(equal(game_dual(G("!P")), G("?P")));
  CHECK(equal(game_dual(G("a ∩ b")), G("a^d ∪ b^d")));
  CHECK(equal(game_dual(G("a^x")), G("(a^d)^*")));
  CHECK(equal(game_dual(G("a^d")), G("a")));
  CHECK(equal(game_dual(G("rec x. (a ∪ b; x)")), G("corec x. (a^d ∩ (b^d; x))")));
  CHECK(equal(complement(F("<a> P")), F("<a^d> -P")));
  CHECK(equal(complement(F("P /\\ -Q")), F("-P \\/ Q")));
  CHECK(equal(complement(F("true")), F("false")));
}

TEST_CASE("normal_form: odd duals over a bound variable are rejected") {
  auto g = gl::rec("x", gl::choice(gl::atom("a"), gl::dual(gl::var("x"))));
  try {
    normal_form(g);
    FAIL("expected a violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NormalFormViolation);
  }
  // an even number is fine
  auto ok = gl::rec("x", gl::choice(gl::atom("a"), gl::dual(gl::seq(gl::atom("b"), gl::dual(gl::var("x"))))));
  CHECK(equal(normal_form(ok), G("rec x. (a ∪ (b^d; x))")));
}

TEST_CASE("normal_form: idempotent and involutive through complement") {
  for (const char* s : {"<(~a ∩ ~'a); a> true", "<rec x.(?true ∪ a;x;b)> P", "<(a;b)^d> -(P)",
                        "<corec y. (a ∩ (b; y))^*; ?(<c> Q)> (P /\\ -Q)", "-<!(P \\/ Q); a^x> false"}) {
    auto nf = normal_form(F(s));
    CHECK(equal(normal_form(nf), nf));
    CHECK(equal(complement(complement(nf)), nf));
  }
}

TEST_CASE("flc_negate: examples") {
  auto phi = L("<a> x \\/ P", [] {
    ParseOptions o;
    o.free_vars = {"x"};
    return o;
  }());
  CHECK(equal(flc_negate(flc::mu("x", phi)), flc::nu("x", flc_negate(phi))));
  CHECK(equal(flc_negate(flc::prop("P")), flc::neg_prop("P")));
  CHECK(equal(flc_negate(flc::dia("a", flc::prop("P"))), flc::box("a", flc::neg_prop("P"))));
  try {
    flc_negate(L("P ; Q"));
    FAIL("expected unsupported negation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedNegation);
  }
  CHECK_THROWS_AS(flc_negate(flc::id()), Error);
}

TEST_CASE("substitute: examples") {
  CHECK(equal(substitute(G("x;b", free_xy()), {{"x", G("a")}}), G("a;b")));
  CHECK(equal(substitute(G("rec x. x ∪ y", free_xy()), {{"y", G("a")}}), G("rec x. x ∪ a")));
  // bound x untouched
  CHECK(equal(substitute(G("rec x. x ∪ y", free_xy()), {{"x", G("a")}}), G("rec x. x ∪ y", free_xy())));
  // simultaneous, not sequential
  CHECK(equal(substitute(G("x;y", free_xy()), {{"x", G("y", free_xy())}, {"y", G("a")}}), G("y;a", free_xy())));
  // markers replaced in one pass
  auto marked = L("(<a> u) \\/ (x ; v)", [] {
    ParseOptions o;
    o.free_vars = {"u", "v", "x"};
    return o;
  }());
  auto out = substitute(marked, FlcSubst{{"u", flc::prop("P")}, {"v", flc::var("u")}});
  CHECK(print(out) == "<a> P \\/ (x ; u)");
}

TEST_CASE("substitute: capture is an error") {
  try {
    substitute(G("rec x. (x ∪ y)", free_xy()), {{"y", G("x", free_xy())}});
    FAIL("expected capture");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Capture);
    CHECK(std::string(e.what()).find("x") != std::string::npos);
  }
}

TEST_CASE("rename_bound: examples") {
  auto g = G("rec x. (a; rec x. x)");
  auto r = rename_bound(g);
  CHECK(well_named(r));
  CHECK(equal(r, G("rec x. (a; rec x_1. x_1)")));
  auto closed = G("rec x. (a; x) ∪ rec y. (b; y)");
  CHECK(well_named(closed));
  CHECK(equal(rename_bound(closed), closed));
  // free and bound at once
  auto fb = G("x; rec x. (a; x)", free_xy());
  CHECK_FALSE(well_named(fb));
  auto fr = rename_bound(fb);
  CHECK(well_named(fr));
  CHECK(free_vars(fr) == std::set<std::string>{"x"});
}

TEST_CASE("check_fragment: examples") {
  auto nonrl = gl::dia(G("rec x.(a;(x ∪ c);b)"), gl::prop("P"));
  CHECK(check_fragment(nonrl, Fragment::RGL));
  CHECK_FALSE(check_fragment(nonrl, Fragment::rlGL));
  auto gl_f = F("<(a ∪ b^d)^*; ?P> <c^x> -Q");
  CHECK(check_fragment(gl_f, Fragment::GL));
  CHECK(check_fragment(gl_f, Fragment::rlGL));
  CHECK(check_fragment(gl_f, Fragment::RGL));
  auto gls = F("<(~a ∪ ~'a); a; !false> true");
  CHECK(check_fragment(gls, Fragment::GLs));
  CHECK_FALSE(check_fragment(gls, Fragment::GL));
  CHECK_FALSE(check_fragment(gls, Fragment::RGL));
  CHECK(check_fragment(F("<?P; a; !-Q> true"), Fragment::PoorTest));
  CHECK_FALSE(check_fragment(F("<?(<a> P)> true"), Fragment::PoorTest));
}

TEST_CASE("check_fragment: flc fragments") {
  CHECK(check_fragment(L("mu x. (P \\/ <a> x)"), Fragment::Lmu));
  CHECK(check_fragment(L("mu x. (P \\/ <a> x)"), Fragment::Lsep));
  CHECK_FALSE(check_fragment(L("mu x. (P /\\ <a> x)"), Fragment::Lsep));
  CHECK_FALSE(check_fragment(L("mu x. (<b> x \\/ <a> x)"), Fragment::Lsep));
  CHECK(check_fragment(L("(<a> id)^* ; P"), Fragment::Lstar));
  CHECK_FALSE(check_fragment(L("(<a> id)^* ; P"), Fragment::Lmu));
  CHECK(check_fragment(L("mu x. (id \\/ (<a> id ; x))"), Fragment::Lstar));
  CHECK_FALSE(check_fragment(L("mu x. (P \\/ <a> x)"), Fragment::Lstar));
}

TEST_CASE("rank: examples and clauses") {
  CHECK(rank(F("P")) == 0);
  CHECK(rank(G("?P")) == 2);
  CHECK(rank(F("<a> P")) == 1);
  CHECK(rank(G("!P")) == 3);
  CHECK(rank(G("a ∪ b")) == 2);
  CHECK(rank(G("a; b")) == 2);
  CHECK(rank(G("rec x. (a; x)")) == 3);
  CHECK(rank(F("P \\/ <a;b> Q")) == 4);
  // star agrees with its desugaring
  for (const char* s : {"a^*", "(a;b)^*", "(?P)^*", "a^x", "(a ∪ ?P)^x"}) {
    auto g = G(s);
    CHECK(rank(g) == rank(desugar_star(g)));
  }
  // dual and negation are ranked through the normal form
  CHECK(rank(F("-<a> P")) == rank(F("<a^d> -P")));
}

TEST_CASE("desugar_star: examples") {
  auto d = desugar_star(G("a^*"));
  REQUIRE(d->kind == GameKind::Rec);
  const std::string z = d->name;
  CHECK(has_reserved_prefix(z));
  CHECK(equal(d, gl::rec(z, gl::choice(gl::seq(gl::atom("a"), gl::var(z)), gl::test(gl::tt())))));
  auto e = desugar_star(G("a^x"));
  REQUIRE(e->kind == GameKind::CoRec);
  CHECK(equal(e, gl::corec(e->name, gl::dchoice(gl::seq(gl::atom("a"), gl::var(e->name)), gl::dtest(gl::tt())))));
}

TEST_CASE("free_vars and sabotage_atoms: examples") {
  CHECK(free_vars(G("rec x. x ∪ y", free_xy())) == std::set<std::string>{"y"});
  CHECK(sabotage_atoms(F("<(~a ∪ ~'a);a> true")) == std::set<std::string>{"a"});
  CHECK(sabotage_atoms(F("<(a ∪ b^d)^*> P")).empty());
}
