#include <queue>
#include <string>
#include <vector>

#include "doctest.h"
#include "glwb/error.hpp"
#include "glwb/semantics.hpp"
#include "glwb/syntax.hpp"
#include "glwb/workbench.hpp"

using namespace glwb;

namespace {

FormPtr F(const std::string& s) { return parse_game_formula(s); }
GamePtr G(const std::string& s) { return parse_game(s); }
FlcPtr L(const std::string& s) { return parse_flc(s); }

StateSet S(std::initializer_list<int> xs) {
  StateSet s;
  for (int x : xs) s = s | StateSet::single(x);
  return s;
}

// Upward closure of a random table: an arbitrary monotone map.
Effectivity random_monotone(int n, Rng& rng) {
  std::vector<std::uint32_t> raw(1u << n), t(1u << n, 0);
  for (auto& v : raw) v = static_cast<std::uint32_t>(pick(rng, 1u << n)) & static_cast<std::uint32_t>(pick(rng, 1u << n));
  for (std::uint32_t a = 0; a < t.size(); ++a)
    for (std::uint32_t b = a;; b = (b - 1) & a) {
      t[a] |= raw[b];
      if (b == 0) break;
    }
  return Effectivity(n, t);
}

std::vector<FiniteStructure> structures(std::size_t count, std::uint64_t seed, int max_states = 4) {
  Rng rng(seed);
  std::vector<FiniteStructure> out;
  for (std::size_t i = 0; i < count; ++i) {
    StructureConfig c;
    c.states = 1 + static_cast<int>(pick(rng, max_states));
    c.kind = i % 2 ? StructureKind::Neighbourhood : StructureKind::Kripke;
    out.push_back(random_structure(c, rng));
  }
  return out;
}

// Predecessors reaching target along a, by breadth-first search backwards.
StateSet bfs_reach(const FiniteStructure& s, const std::string& a, StateSet target) {
  const int n = s.states();
  StateSet seen = target;
  std::queue<int> q;
  for (int i = 0; i < n; ++i)
    if (target.contains(i)) q.push(i);
  while (!q.empty()) {
    int t = q.front();
    q.pop();
    for (int x = 0; x < n; ++x)
      if (!seen.contains(x) && ((s.game(a).succ[x] >> t) & 1u)) {
        seen = seen | StateSet::single(x);
        q.push(x);
      }
  }
  return seen;
}

}  // namespace

TEST_CASE("lift_game: examples") {
  FiniteStructure s(2);
  s.set_relation("a", {{0, 1}});
  auto w = lift_game(s, "a");
  CHECK(w(S({1})) == S({0}));
  CHECK(w(S({0})) == S({}));
  FiniteStructure t(2);
  t.set_neighbourhoods("b", {{S({0, 1})}});
  auto u = lift_game(t, "b");
  CHECK(u(S({0, 1})) == S({0}));
  CHECK(u(S({0})) == S({}));
  // unlisted games are the empty relation
  CHECK(lift_game(s, "zz") == Effectivity::bottom(2));
}

TEST_CASE("lift_game: relational image matches a naive double loop") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    auto s = random_structure({}, rng);
    auto w = lift_game(s, "a");
    for (std::uint32_t a = 0; a < 16; ++a) {
      StateSet want;
      for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
          if (((a >> y) & 1u) && ((s.game("a").succ[x] >> y) & 1u)) want = want | StateSet::single(x);
      CHECK(w({a}) == want);
    }
  }
}

TEST_CASE("lift_game: cap is enforced") {
  CHECK_THROWS_AS(FiniteStructure(11), Error);
  CHECK_THROWS_AS(FiniteStructure(21, 21), Error);
  FiniteStructure big(12, 12);
  CHECK(lift_game(big, "a").states() == 12);
}

TEST_CASE("effectivity algebra: examples") {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    auto w = random_monotone(1 + static_cast<int>(pick(rng, 4)), rng);
    CHECK(eff_dual(eff_dual(w)) == w);
  }
  // dual of a relational lifting is the universal image
  for (int trial = 0; trial < 20; ++trial) {
    auto s = random_structure({}, rng);
    auto d = eff_dual(lift_game(s, "a"));
    for (std::uint32_t a = 0; a < 16; ++a) {
      StateSet want;
      for (int x = 0; x < 4; ++x)
        if ((s.game("a").succ[x] & ~a) == 0) want = want | StateSet::single(x);
      CHECK(d({a}) == want);
    }
  }
  auto c = eff_compose(eff_test(3, S({0, 1})), eff_const(3, S({1, 2})));
  for (std::uint32_t a = 0; a < 8; ++a) CHECK(c({a}) == S({1}));
  CHECK_THROWS_AS(eff_compose(Effectivity::identity(2), Effectivity::identity(3)), Error);
}

TEST_CASE("effectivity: non-monotone tables are rejected") {
  std::vector<std::uint32_t> t = {1, 0};
  CHECK_THROWS_AS(Effectivity(1, t), Error);
  CHECK(Effectivity(1, {0, 1}) == Effectivity::identity(1));
}

TEST_CASE("lfp_set and gfp_set: examples") {
  CHECK(lfp_set(3, [](StateSet a) { return a | S({0}); }) == S({0}));
  CHECK(gfp_set(3, [](StateSet a) { return a; }) == StateSet::full(3));
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    auto s = random_structure({}, rng);
    StateSet target = s.prop("P");
    auto step = [&](StateSet b) { return target | s.apply("a", b); };
    CHECK(lfp_set(4, step) == bfs_reach(s, "a", target));
  }
  try {
    lfp_set(2, [](StateSet a) { return StateSet::full(2).minus(a); });
    FAIL("expected a monotonicity failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonMonotone);
  }
}

TEST_CASE("lfp_eff and gfp_eff: examples") {
  auto id = [](const Effectivity& u) { return u; };
  CHECK(lfp_eff(3, id) == Effectivity::bottom(3));
  CHECK(gfp_eff(3, id) == Effectivity::top(3));
  // the function-lattice star of a equals the pointwise reachability closure
  FiniteStructure s(3);
  s.set_relation("a", {{0, 1}, {1, 2}});
  auto w = lift_game(s, "a");
  auto star = lfp_eff(3, [&](const Effectivity& u) { return eff_union(eff_compose(w, u), Effectivity::identity(3)); });
  CHECK(star(S({2})) == S({0, 1, 2}));
}

TEST_CASE("eval_rgl: examples") {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    auto s = random_structure({}, rng);
    auto phi = F("<a> P \\/ -Q");
    StateSet p = eval_rgl_formula(phi, s);
    auto t = eval_rgl_game(gl::test(phi), s);
    for (std::uint32_t a = 0; a < 16; ++a) CHECK(t({a}) == (p & StateSet{a}));
    CHECK(eval_rgl_formula(F("<a^*> P"), s) == bfs_reach(s, "a", s.prop("P")));
    CHECK(eval_rgl_formula(F("<rec x. (?P ∪ a; x)> true"), s) == bfs_reach(s, "a", s.prop("P")));
  }
  FiniteStructure s(3);
  CHECK(eval_rgl_game(G("rec x. x"), s) == Effectivity::bottom(3));
  CHECK(eval_rgl_game(G("corec x. x"), s) == Effectivity::top(3));
}

TEST_CASE("eval_rgl: unbound variables and traps are errors") {
  ParseOptions o;
  o.free_vars = {"y"};
  FiniteStructure s(2);
  try {
    eval_rgl_game(parse_game("a; y", o), s);
    FAIL("expected unbound");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnboundVariable);
  }
  Valuation I{{"y", Effectivity::identity(2)}};
  CHECK(eval_rgl_game(parse_game("y", o), s, I) == Effectivity::identity(2));
  CHECK(eval_rgl_game(parse_game("y^d", o), s, I) == Effectivity::identity(2));
  CHECK_THROWS_AS(eval_rgl_game(G("~a"), s), Error);
}

TEST_CASE("eval_flc: examples") {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = random_structure({}, rng);
    CHECK(eval_flc(L("id"), s) == Effectivity::identity(4));
    CHECK(eval_flc(L("mu x. x"), s) == Effectivity::bottom(4));
    auto w = lift_game(s, "a");
    auto d = eval_flc(L("<a> id"), s);
    CHECK(d == w);
    CHECK(eval_flc(L("[a] id"), s) == eff_dual(w));
    // flc truth of a star formula is reachability
    CHECK(flc_truth(L("(<a> id)^* ; P"), s) == bfs_reach(s, "a", s.prop("P")));
  }
}

TEST_CASE("eval_gls: worked trap examples") {
  auto first = F("<(~a ∩ ~'a); a> true");
  auto second = F("<(~a ∪ ~'a); a; !false> true");
  for (const auto& s : structures(100, 21)) {
    CHECK(gls_truth(first, s).empty());
    CHECK(gls_truth(second, s) == s.full());
  }
}

TEST_CASE("eval_gls: trap clauses at nonempty contexts") {
  FiniteStructure s(2);
  s.set_relation("a", {{0, 1}, {1, 1}});
  s.set_prop("P", S({1}));
  GlsEvaluator ev(s, {"a"});
  const auto& cs = ev.contexts();
  std::size_t angel = cs.with(0, 0, Owner::Angel), demon = cs.with(0, 0, Owner::Demon);
  auto v = ev.formula(F("<a> P"));
  CHECK(StateSet{v[0]} == S({0, 1}));
  CHECK(StateSet{v[angel]} == S({1}));  // Angel skips a
  CHECK(StateSet{v[demon]} == S({}));   // Angel has lost a
  auto d = ev.formula(F("<a^d> P"));
  CHECK(StateSet{d[angel]} == S({0, 1}));  // Demon has lost a^d
  CHECK(StateSet{d[demon]} == S({1}));     // Demon skips a^d
  CHECK_THROWS_AS(GlsEvaluator(s, {}).formula(F("<~a> P")), Error);
}

TEST_CASE("eval_gls: budget") {
  FiniteStructure s(10);
  GlsOptions o;
  o.budget = 1000;
  CHECK_THROWS_AS(GlsEvaluator(s, {"a"}, o), Error);
}

TEST_CASE("eval_vectorial: examples") {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = random_structure({}, rng);
    ParseOptions o;
    o.free_vars = {"x", "y"};
    RecSystem one{FixKind::Mu, {{"x", parse_game("?P ∪ a; x", o)}}};
    CHECK(eval_vectorial(one, s, {}, 0) == eval_rgl_game(G("rec x. (?P ∪ a; x)"), s));
    RecSystem id{FixKind::Mu, {{"x", parse_game("x", o)}, {"y", parse_game("y", o)}}};
    CHECK(eval_vectorial(id, s, {}, 0) == Effectivity::bottom(4));
    CHECK(eval_vectorial(id, s, {}, 1) == Effectivity::bottom(4));
    RecSystem nu{FixKind::Nu, {{"x", parse_game("x", o)}, {"y", parse_game("y", o)}}};
    CHECK(eval_vectorial(nu, s, {}, 1) == Effectivity::top(4));
  }
}

TEST_CASE("structure files round-trip") {
  const std::string text =
      "states 3\n"
      "prop P: 0 2\n"
      "prop Q:\n"
      "game a rel: 0->1 1->1 2->0\n"
      "game b nbhd: 0:{0,1}{2} 1:{}\n";
  auto s = parse_structure(text);
  CHECK(write_structure(s) == text);
  CHECK(parse_structure("# comment\nstates 2  # two\n\nprop P: 1\n") == [] {
    FiniteStructure t(2);
    t.set_prop("P", S({1}));
    return t;
  }());
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    StructureConfig c;
    c.kind = i % 2 ? StructureKind::Neighbourhood : StructureKind::Kripke;
    auto r = random_structure(c, rng);
    auto w = write_structure(r);
    CHECK(parse_structure(w) == r);
    CHECK(write_structure(parse_structure(w)) == w);
  }
  CHECK_THROWS_AS(parse_structure("prop P: 0\n"), SyntaxError);
  CHECK_THROWS_AS(parse_structure("states 2\nprop P: 5\n"), SyntaxError);
  CHECK_THROWS_AS(parse_structure("states 2\ngame a rel: 0-1\n"), SyntaxError);
  CHECK_THROWS_AS(parse_structure("states 2\nprop P: 0\ngame P rel:\n"), SyntaxError);
}

// ---- invariants ----

TEST_CASE("property: evaluator outputs are monotone") {
  Rng rng(31);
  FormulaConfig fc;
  auto ss = structures(6, 32);
  for (int i = 0; i < 100; ++i) {
    auto g = random_game(Fragment::RGL, fc, rng);
    for (const auto& s : ss) CHECK_NOTHROW(eval_rgl_game(g, s));
    auto f = random_flc(Fragment::Lmu, fc, rng, true);
    for (const auto& s : ss) CHECK_NOTHROW(eval_flc(f, s));
  }
}

TEST_CASE("property: negation is the context-dual complement over random GLs formulas") {
  Rng rng(41);
  FormulaConfig fc;
  fc.raw = true;
  auto ss = structures(4, 42);
  for (int i = 0; i < 150; ++i) {
    auto f = random_formula(Fragment::GLs, fc, rng);
    for (const auto& s : ss) {
      GlsEvaluator ev(s, fc.sabotage);
      CSet v = ev.formula(f);
      CHECK(ev.formula(complement(f)) == sabotage_complement(v, ev.contexts(), s.states()));
      // the raw evaluator interprets Neg and Dual directly and agrees with nf
      GlsOptions raw;
      raw.normalize = false;
      GlsEvaluator rv(s, fc.sabotage, raw);
      CHECK(rv.formula(f) == v);
    }
  }
}

TEST_CASE("property: flc negation complements truth sets") {
  Rng rng(43);
  FormulaConfig fc;
  auto ss = structures(6, 44);
  for (int i = 0; i < 200; ++i) {
    auto f = random_flc(Fragment::Lmu, fc, rng);
    auto nf = flc_negate(f);
    for (const auto& s : ss) CHECK(flc_truth(nf, s) == s.full().minus(flc_truth(f, s)));
  }
}

TEST_CASE("property: GL agreement between sabotage and recursive semantics") {
  Rng rng(45);
  FormulaConfig fc;
  auto ss = structures(8, 46);
  for (int i = 0; i < 200; ++i) {
    auto f = random_formula(Fragment::GL, fc, rng);
    for (const auto& s : ss) CHECK(gls_truth(f, s) == eval_rgl_formula(f, s));
  }
}

TEST_CASE("property: fixpoint unrolling") {
  Rng rng(47);
  FormulaConfig fc;
  auto ss = structures(4, 48);
  int checked = 0;
  for (int i = 0; i < 400 && checked < 100; ++i) {
    auto g = random_game(Fragment::RGL, fc, rng);
    if (g->kind != GameKind::Rec && g->kind != GameKind::CoRec) continue;
    ++checked;
    auto unrolled = substitute(g->left, GameSubst{{g->name, g}});
    for (const auto& s : ss) CHECK(eval_rgl_game(g, s) == eval_rgl_game(unrolled, s));
  }
  CHECK(checked > 20);
}

TEST_CASE("property: alphabet irrelevance") {
  Rng rng(49);
  FormulaConfig fc;
  fc.sabotage = {"a"};
  auto ss = structures(4, 50);
  for (int i = 0; i < 100; ++i) {
    auto f = random_formula(Fragment::GLs, fc, rng);
    for (const auto& s : ss) {
      StateSet base = gls_truth(f, s);
      auto atoms = sabotage_atoms(f);
      std::vector<std::string> bigger(atoms.begin(), atoms.end());
      bigger.push_back("b");
      bigger.push_back("zz");
      CHECK(StateSet{eval_gls_formula(f, s, bigger)[0]} == base);
    }
  }
}

TEST_CASE("property: pointwise and function-lattice engines agree") {
  Rng rng(51);
  FormulaConfig fc;
  auto ss = structures(4, 52);
  EvalOptions table;
  table.pointwise = false;
  for (int i = 0; i < 100; ++i) {
    auto g = random_game(Fragment::rlGL, fc, rng);
    auto h = random_game(Fragment::RGL, fc, rng);
    auto f = random_flc(Fragment::Lmu, fc, rng);
    auto k = random_flc(Fragment::Lmu, fc, rng, true);
    for (const auto& s : ss) {
      CHECK(eval_rgl_game(g, s) == eval_rgl_game(g, s, {}, table));
      CHECK(eval_rgl_game(h, s) == eval_rgl_game(h, s, {}, table));
      CHECK(eval_flc(f, s) == eval_flc(f, s, {}, table));
      CHECK(eval_flc(k, s) == eval_flc(k, s, {}, table));
    }
  }
}

TEST_CASE("property: Kozen box axioms hold on Kripke structures") {
  Rng rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    auto s = random_structure({}, rng);
    CHECK(eval_rgl_formula(F("[a] P /\\ [a] Q"), s) == eval_rgl_formula(F("[a] (P /\\ Q)"), s));
    CHECK(eval_rgl_formula(F("[a] true"), s) == s.full());
  }
}

TEST_CASE("property: star agrees with its desugaring") {
  Rng rng(55);
  FormulaConfig fc;
  auto ss = structures(6, 56);
  for (int i = 0; i < 200; ++i) {
    auto g = random_game(Fragment::GL, fc, rng);
    auto d = desugar_star(g);
    for (const auto& s : ss) CHECK(eval_rgl_game(g, s) == eval_rgl_game(d, s));
  }
}

TEST_CASE("property: bound renaming preserves semantics") {
  Rng rng(57);
  FormulaConfig fc;
  auto ss = structures(200, 58);
  auto phi = parse_game_formula("<rec x. (?P ∪ a; rec x. (b; x ∪ ?Q))> P");
  auto renamed = rename_bound(phi);
  CHECK(well_named(renamed));
  for (const auto& s : ss) CHECK(eval_rgl_formula(phi, s) == eval_rgl_formula(renamed, s));
  for (int i = 0; i < 100; ++i) {
    auto f = random_formula(Fragment::RGL, fc, rng);
    auto r = rename_bound(f);
    for (std::size_t j = 0; j < 4; ++j) CHECK(eval_rgl_formula(f, ss[j]) == eval_rgl_formula(r, ss[j]));
  }
}
