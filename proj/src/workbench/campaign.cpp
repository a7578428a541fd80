#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "glwb/error.hpp"
#include "glwb/soundness.hpp"
#include "glwb/syntax.hpp"
#include "glwb/translate.hpp"
#include "glwb/workbench.hpp"

namespace glwb {
namespace {

// ---- task fan-out ----

// Stats whose key starts with "max_" or "min_" are reduced by max/min, others summed.
struct Outcome {
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::uint64_t skipped = 0;
  std::string witness;
  std::map<std::string, double> stats;

  void check(bool ok, const std::function<std::string()>& why) {
    ++checks;
    if (ok) return;
    ++failures;
    if (witness.empty()) witness = why();
  }
};

using Task = std::function<Outcome()>;

Outcome guarded(const Task& t) {
  try {
    return t();
  } catch (const Error& e) {
    Outcome o;
    if (e.kind() == ErrorKind::BudgetExceeded || e.kind() == ErrorKind::CapExceeded) {
      o.skipped = 1;
    } else {
      o.failures = 1;
      o.witness = e.what();
    }
    return o;
  }
}

// Tasks own their inputs; each result lands in its own slot, so the reduction
// order, and hence the report, does not depend on the worker count.
std::vector<Outcome> run_tasks(const std::vector<Task>& tasks, int workers) {
  std::vector<Outcome> out(tasks.size());
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(tasks.size())));
  if (n == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) out[i] = guarded(tasks[i]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < n; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) out[i] = guarded(tasks[i]);
    });
  for (auto& t : pool) t.join();
  return out;
}

void reduce(CampaignReport& r, const std::vector<Outcome>& outs) {
  for (const auto& o : outs) {
    ++r.inputs;
    r.checks += o.checks;
    r.failures += o.failures;
    r.skipped += o.skipped;
    if (r.first_failure.empty() && !o.witness.empty()) r.first_failure = o.witness;
    for (const auto& [k, v] : o.stats) {
      auto it = r.stats.find(k);
      if (it == r.stats.end()) r.stats.emplace(k, v);
      else if (k.rfind("max_", 0) == 0) it->second = std::max(it->second, v);
      else if (k.rfind("min_", 0) == 0) it->second = std::min(it->second, v);
      else it->second += v;
    }
  }
}

// ---- shared generation ----

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) h = (h ^ ch) * 1099511628211ull;
  return h;
}

const std::vector<std::string> kAtoms = {"a", "b"};

struct Ctx {
  const CampaignConfig& c;
  Rng rng;

  FormulaConfig formula_config() const {
    FormulaConfig f;
    f.max_nodes = c.max_nodes;
    f.atoms = kAtoms;
    f.sabotage = sabotage();
    return f;
  }
  std::vector<std::string> sabotage() const {
    std::vector<std::string> s;
    for (int i = 0; i < c.sabotage_atoms && i < static_cast<int>(kAtoms.size()); ++i) s.push_back(kAtoms[i]);
    if (c.sabotage_atoms > static_cast<int>(kAtoms.size()))
      for (int i = static_cast<int>(kAtoms.size()); i < c.sabotage_atoms; ++i) s.push_back("t" + std::to_string(i));
    return s;
  }
  std::vector<FiniteStructure> structures(bool kripke_only = false) {
    std::vector<FiniteStructure> out;
    for (int i = 0; i < c.structures; ++i) {
      StructureConfig sc;
      sc.states = 1 + static_cast<int>(pick(rng, c.max_states));
      sc.kind = (i % 2 && !kripke_only) ? StructureKind::Neighbourhood : StructureKind::Kripke;
      sc.atoms = kAtoms;
      for (const auto& t : sabotage())
        if (std::find(kAtoms.begin(), kAtoms.end(), t) == kAtoms.end()) sc.atoms.push_back(t);
      out.push_back(random_structure(sc, rng));
    }
    return out;
  }
  GlsOptions gls() const {
    GlsOptions o;
    o.budget = c.budget;
    return o;
  }
};

std::string witness(const std::string& input, const FiniteStructure& s, const std::string& what) {
  return what + ": " + input + "\n" + write_structure(s);
}

using Structs = std::shared_ptr<const std::vector<FiniteStructure>>;

Structs share(std::vector<FiniteStructure> v) { return std::make_shared<const std::vector<FiniteStructure>>(std::move(v)); }

// One task per input: `body` runs the input against every structure.
template <class T, class Body>
std::vector<Task> per_input(const std::vector<T>& inputs, Structs ss, Body body) {
  std::vector<Task> tasks;
  for (const auto& in : inputs)
    tasks.push_back([in, ss, body] {
      Outcome o;
      for (const auto& s : *ss) body(in, s, o);
      return o;
    });
  return tasks;
}

std::vector<FormPtr> formulas(Ctx& x, Fragment tag, const FormulaConfig& fc) {
  std::vector<FormPtr> v;
  for (int i = 0; i < x.c.formulas; ++i) v.push_back(random_formula(tag, fc, x.rng));
  return v;
}

// ---- campaigns ----

std::vector<Task> gl_agreement(Ctx& x) {
  auto fs = formulas(x, Fragment::GL, x.formula_config());
  GlsOptions go = x.gls();
  return per_input(fs, share(x.structures()), [go](const FormPtr& f, const FiniteStructure& s, Outcome& o) {
    o.check(gls_truth(f, s, go) == eval_rgl_formula(f, s), [&] { return witness(print(f), s, "sabotage vs recursive"); });
  });
}

std::vector<Task> duality(Ctx& x) {
  FormulaConfig fc = x.formula_config();
  std::vector<FormPtr> fs;
  for (int i = 0; i < x.c.formulas; ++i) {
    fc.raw = i % 2 == 1;
    fs.push_back(random_formula(Fragment::GLs, fc, x.rng));
  }
  auto alphabet = x.sabotage();
  GlsOptions go = x.gls();
  return per_input(fs, share(x.structures()), [alphabet, go](const FormPtr& f, const FiniteStructure& s, Outcome& o) {
    ContextSpace cs(alphabet);
    CSet pos = eval_gls_formula(f, s, alphabet, go);
    CSet neg = eval_gls_formula(normal_form(gl::neg(f)), s, alphabet, go);
    o.check(neg == sabotage_complement(pos, cs, s.states()), [&] { return witness(print(f), s, "negation vs dual complement"); });
  });
}

std::vector<Task> correct_sharp(Ctx& x) {
  std::vector<FlcPtr> fs;
  for (int i = 0; i < x.c.formulas; ++i) fs.push_back(random_flc(Fragment::Lmu, x.formula_config(), x.rng, true));
  return per_input(fs, share(x.structures()), [](const FlcPtr& f, const FiniteStructure& s, Outcome& o) {
    o.check(eval_flc(f, s) == eval_rgl_game(sharp(f), s), [&] { return witness(print(f), s, "sharp effectivity"); });
    o.check(flc_truth(f, s) == eval_rgl_formula(sharp_formula(f), s), [&] { return witness(print(f), s, "sharp truth"); });
  });
}

Valuation markers(int n) { return {{kMarkU, Effectivity::identity(n)}, {kMarkV, Effectivity::identity(n)}}; }

std::vector<Task> correct_flat(Ctx& x) {
  std::vector<std::pair<FormPtr, GamePtr>> in;
  for (int i = 0; i < x.c.formulas; ++i) {
    FormPtr f = random_formula(Fragment::RGL, x.formula_config(), x.rng);
    in.emplace_back(f, random_game(Fragment::RGL, x.formula_config(), x.rng));
  }
  return per_input(in, share(x.structures()), [](const std::pair<FormPtr, GamePtr>& p, const FiniteStructure& s, Outcome& o) {
    const auto& [f, g] = p;
    const FlcPtr t = flat(f);
    const StateSet want = eval_rgl_formula(f, s);
    for (std::uint32_t a = 0; a < (1u << s.states()); ++a)
      o.check(eval_flc_at(t, s, {a}) == want, [&] { return witness(print(f), s, "flat formula at " + std::to_string(a)); });
    o.check(eval_flc(flat(g), s, markers(s.states())) == eval_rgl_game(g, s),
            [&] { return witness(print(g), s, "flat game"); });
  });
}

std::vector<Task> correct_qflat(Ctx& x) {
  auto fs = formulas(x, Fragment::rlGL, x.formula_config());
  return per_input(fs, share(x.structures()), [](const FormPtr& f, const FiniteStructure& s, Outcome& o) {
    const FlcPtr t = qflat(f);
    o.check(check_fragment(t, Fragment::Lmu), [&] { return "qflat output outside Lmu: " + print(f); });
    o.check(flc_truth(t, s) == eval_rgl_formula(f, s), [&] { return witness(print(f), s, "qflat truth"); });
  });
}

std::vector<Task> correct_ctx(Ctx& x) {
  auto fs = formulas(x, Fragment::GLs, x.formula_config());
  auto alphabet = x.sabotage();
  GlsOptions go = x.gls();
  auto ss = share(x.structures());
  std::vector<Task> tasks;
  for (const auto& f : fs)
    tasks.push_back([f, ss, alphabet, go] {
      Outcome o;
      ContextSpace cs(alphabet);
      CtxOptions co;
      co.alphabet = alphabet;
      std::vector<GamePtr> per_ctx;
      for (std::size_t c = 0; c < cs.size(); ++c) per_ctx.push_back(ctx_translate(f, cs, c, co));
      const FormPtr nested = eliminate_systems(ctx_formula(f, co));
      o.check(check_fragment(nested, Fragment::rlGL), [&] { return "Bekic output outside rlGL: " + print(f); });
      for (const auto& s : *ss) {
        const CSet want = eval_gls_formula(f, s, alphabet, go);
        for (std::size_t c = 0; c < cs.size(); ++c)
          o.check(eval_rgl_game_at(per_ctx[c], s, {}) == StateSet{want[c]},
                  [&] { return witness(print(f), s, "ctx_translate at " + cs.describe(c)); });
        o.check(eval_rgl_formula(nested, s) == StateSet{want[0]}, [&] { return witness(print(f), s, "ctx + Bekic"); });
      }
      return o;
    });
  return tasks;
}

std::vector<Task> correct_natural(Ctx& x) {
  FormulaConfig fc = x.formula_config();
  fc.max_fixpoints = 2;
  auto fs = formulas(x, Fragment::rlGL, fc);
  GlsOptions go = x.gls();
  return per_input(fs, share(x.structures()), [go](const FormPtr& f, const FiniteStructure& s, Outcome& o) {
    const FormPtr t = natural(f);
    o.check(check_fragment(t, Fragment::GLs), [&] { return "natural output outside GLs: " + print(f); });
    o.check(gls_truth(t, s, go) == eval_rgl_formula(f, s), [&] { return witness(print(f), s, "natural truth"); });
  });
}

std::vector<Task> correct_sep(Ctx& x) {
  std::vector<FlcPtr> fs;
  for (int i = 0; i < x.c.formulas; ++i) fs.push_back(random_flc(Fragment::Lsep, x.formula_config(), x.rng));
  return per_input(fs, share(x.structures()), [](const FlcPtr& f, const FiniteStructure& s, Outcome& o) {
    const FlcPtr t = sep_to_star(f);
    o.check(check_fragment(t, Fragment::Lstar), [&] { return "sep_to_star output outside L*: " + print(f); });
    o.check(eval_flc(t, s) == eval_flc(f, s), [&] { return witness(print(f), s, "sep_to_star effectivity"); });
  });
}

std::vector<Task> roundtrip(Ctx& x) {
  std::vector<std::pair<FlcPtr, FormPtr>> in;
  for (int i = 0; i < x.c.formulas; ++i) {
    FlcPtr phi = random_flc(Fragment::Lmu, x.formula_config(), x.rng, true);
    in.emplace_back(phi, random_formula(Fragment::RGL, x.formula_config(), x.rng));
  }
  return per_input(in, share(x.structures()), [](const std::pair<FlcPtr, FormPtr>& p, const FiniteStructure& s, Outcome& o) {
    const auto& [phi, psi] = p;
    o.check(flc_truth(flat(sharp_formula(phi)), s) == flc_truth(phi, s), [&] { return witness(print(phi), s, "flat(sharp)"); });
    o.check(eval_rgl_formula(sharp_formula(flat(psi)), s) == eval_rgl_formula(psi, s),
            [&] { return witness(print(psi), s, "sharp(flat)"); });
  });
}

// Component bodies over variables xs, all right-linear. Two components get
// every pattern with every choice of variables; three components get a
// smaller pool so the grid stays near 10^3 systems.
std::vector<GamePtr> bekic_pool(const std::vector<std::string>& xs) {
  const GamePtr p = gl::test(gl::prop("P"));
  auto step = [](const std::string& x) { return gl::seq(gl::atom("a"), gl::var(x)); };
  auto dstep = [](const std::string& x) { return gl::seq(gl::dual_atom("a"), gl::var(x)); };
  std::vector<GamePtr> pool = {p};
  for (const auto& j : xs) {
    pool.push_back(gl::choice(p, step(j)));
    pool.push_back(gl::dchoice(p, dstep(j)));
  }
  if (xs.size() == 2) {
    for (const auto& j : xs)
      for (const auto& l : xs) {
        pool.push_back(gl::dchoice(step(j), step(l)));
        pool.push_back(gl::choice(step(j), dstep(l)));
      }
  } else {
    pool.push_back(gl::dchoice(step(xs[1]), step(xs[2])));
  }
  return pool;
}

std::vector<RecSystem> bekic_grid() {
  std::vector<RecSystem> out;
  for (std::size_t k : {2u, 3u}) {
    std::vector<std::string> xs;
    for (std::size_t i = 1; i <= k; ++i) xs.push_back("x" + std::to_string(i));
    const auto pool = bekic_pool(xs);
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= pool.size();
    for (FixKind kind : {FixKind::Mu, FixKind::Nu})
      for (std::size_t code = 0; code < total; ++code) {
        RecSystem sys;
        sys.kind = kind;
        for (std::size_t i = 0, r = code; i < k; ++i, r /= pool.size()) sys.bindings.emplace_back(xs[i], pool[r % pool.size()]);
        out.push_back(std::move(sys));
      }
  }
  return out;
}

// All 3-state structures with one relation a and one proposition P, sampled
// without replacement.
std::vector<FiniteStructure> three_state_sample(Ctx& x, int count) {
  std::vector<std::uint32_t> codes(1u << 12);
  for (std::uint32_t i = 0; i < codes.size(); ++i) codes[i] = i;
  for (std::size_t i = codes.size() - 1; i > 0; --i) std::swap(codes[i], codes[pick(x.rng, i + 1)]);
  std::vector<FiniteStructure> out;
  for (int i = 0; i < count && i < static_cast<int>(codes.size()); ++i) {
    FiniteStructure s(3);
    std::vector<std::pair<int, int>> edges;
    for (int e = 0; e < 9; ++e)
      if ((codes[i] >> e) & 1) edges.emplace_back(e / 3, e % 3);
    s.set_relation("a", edges);
    s.set_prop("P", {codes[i] >> 9});
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Task> bekic(Ctx& x) {
  auto grid = bekic_grid();
  auto ss = share(three_state_sample(x, x.c.structures));
  // Systems are grouped so each task amortizes its eliminations.
  constexpr std::size_t kChunk = 64;
  std::vector<Task> tasks;
  auto shared_grid = std::make_shared<const std::vector<RecSystem>>(std::move(grid));
  for (std::size_t lo = 0; lo < shared_grid->size(); lo += kChunk)
    tasks.push_back([lo, shared_grid, ss] {
      Outcome o;
      const std::size_t hi = std::min(lo + kChunk, shared_grid->size());
      for (std::size_t k = lo; k < hi; ++k) {
        const RecSystem& sys = (*shared_grid)[k];
        for (std::size_t i = 0; i < sys.bindings.size(); ++i) {
          const GamePtr e = bekic_eliminate(sys, i);
          for (const auto& s : *ss)
            o.check(eval_rgl_game(e, s) == eval_vectorial(sys, s, {}, i), [&] {
              return witness(print(gl::component(std::make_shared<RecSystem>(sys), i)), s, "Bekic component");
            });
        }
      }
      o.stats["systems"] = static_cast<double>(hi - lo);
      return o;
    });
  return tasks;
}

// Right-linear fixpoint games: rec/corec x over closed rlGL pieces with x at
// right-linear positions only.
GamePtr rl_hole_game(Ctx& x, int k, const FormulaConfig& pieces) {
  if (k <= 1 || coin(x.rng, 0.25)) return coin(x.rng, 0.5) ? gl::var("x") : random_game(Fragment::rlGL, pieces, x.rng);
  switch (pick(x.rng, 3)) {
    case 0: return gl::choice(rl_hole_game(x, k / 2, pieces), rl_hole_game(x, k / 2, pieces));
    case 1: return gl::dchoice(rl_hole_game(x, k / 2, pieces), rl_hole_game(x, k / 2, pieces));
    default: return gl::seq(random_game(Fragment::rlGL, pieces, x.rng), rl_hole_game(x, k - 1, pieces));
  }
}

// Composition-free FLC bodies with x free, positively.
FlcPtr flc_hole(Ctx& x, int k, const FormulaConfig& pieces) {
  if (k <= 1 || coin(x.rng, 0.2)) return coin(x.rng, 0.5) ? flc::var("x") : random_flc(Fragment::Lmu, pieces, x.rng);
  const std::string a = kAtoms[pick(x.rng, kAtoms.size())];
  switch (pick(x.rng, 4)) {
    case 0: return flc::lor(flc_hole(x, k / 2, pieces), flc_hole(x, k / 2, pieces));
    case 1: return flc::land(flc_hole(x, k / 2, pieces), flc_hole(x, k / 2, pieces));
    case 2: return flc::dia(a, flc_hole(x, k - 1, pieces));
    default: return flc::box(a, flc_hole(x, k - 1, pieces));
  }
}

std::vector<Task> pointwise(Ctx& x) {
  FormulaConfig pieces = x.formula_config();
  pieces.max_nodes = std::max(2, x.c.max_nodes / 3);
  pieces.sabotage.clear();
  std::vector<GamePtr> games;
  std::vector<FlcPtr> flcs;
  for (int i = 0; i < x.c.formulas; ++i) {
    GamePtr body = rl_hole_game(x, x.c.max_nodes / 2, pieces);
    games.push_back(coin(x.rng, 0.5) ? gl::rec("x", body) : gl::corec("x", body));
    FlcPtr fb = flc_hole(x, x.c.max_nodes / 2, pieces);
    flcs.push_back(coin(x.rng, 0.5) ? flc::mu("x", fb) : flc::nu("x", fb));
  }
  auto ss = share(x.structures());
  EvalOptions table{false, true}, point{true, true};
  auto tasks = per_input(games, ss, [=](const GamePtr& g, const FiniteStructure& s, Outcome& o) {
    const Effectivity t = eval_rgl_game(g, s, {}, table);
    for (std::uint32_t a = 0; a < (1u << s.states()); ++a)
      o.check(eval_rgl_game_at(g, s, {a}, {}, point) == t({a}), [&] { return witness(print(g), s, "pointwise game"); });
  });
  auto more = per_input(flcs, ss, [=](const FlcPtr& f, const FiniteStructure& s, Outcome& o) {
    const Effectivity t = eval_flc(f, s, {}, table);
    for (std::uint32_t a = 0; a < (1u << s.states()); ++a)
      o.check(eval_flc_at(f, s, {a}, {}, point) == t({a}), [&] { return witness(print(f), s, "pointwise FLC"); });
  });
  tasks.insert(tasks.end(), more.begin(), more.end());
  return tasks;
}

std::vector<Task> axiom_soundness(Ctx& x) {
  SoundnessConfig sc;
  sc.instances = x.c.formulas;
  sc.structures = x.c.structures;
  sc.seed = x.c.seed;
  std::vector<Task> tasks;
  const auto cases = soundness_cases();
  for (std::size_t i = 0; i < cases.size(); ++i)
    tasks.push_back([i, sc] {
      const SoundnessTally t = run_soundness_case(i, sc);
      Outcome o;
      o.check(t.passed(), [&] {
        return t.name + ": " + std::to_string(t.failures) + " failures in " + std::to_string(t.instances) + " instances\n" +
               t.witness;
      });
      o.stats["instances"] = t.instances;
      o.stats["invalid_instances"] = t.expect == SoundnessExpect::Sound ? t.failures : 0;
      o.stats["control_refutations"] = t.expect == SoundnessExpect::Refuted ? t.failures : 0;
      o.stats["schema." + std::string(schema_name(t.id))] = t.expect == SoundnessExpect::Sound ? t.instances : 0;
      return o;
    });
  // Coverage: every schema sampled by some sound case.
  tasks.push_back([cases, sc] {
    Outcome o;
    std::set<SchemaId> seen;
    for (const auto& c : cases)
      if (c.expect == SoundnessExpect::Sound) seen.insert(c.id);
    for (SchemaId id : all_schemas())
      o.check(seen.count(id) > 0, [&] { return std::string("no soundness case samples ") + schema_name(id); });
    o.stats["schemas_sampled"] = static_cast<double>(seen.size());
    o.stats["schemas_total"] = static_cast<double>(all_schemas().size());
    return o;
  });
  return tasks;
}

// States reachable from w by n a-steps followed by n b-steps, for some n.
StateSet chain_oracle(const FiniteStructure& s, int w) {
  StateSet out;
  auto post = [&](const std::string& a, StateSet from) {
    std::uint32_t to = 0;
    for (int v = 0; v < s.states(); ++v)
      if (from.contains(v)) to |= s.game(a).succ[v];
    return StateSet{to};
  };
  StateSet front = StateSet::single(w);
  // a only moves forward along the chain, so a^n is empty beyond n = states.
  for (int n = 0; n <= s.states(); ++n) {
    StateSet back = front;
    for (int k = 0; k < n; ++k) back = post("b", back);
    out = out | back;
    front = post("a", front);
  }
  return out;
}

std::vector<Task> worked_examples(Ctx& x) {
  std::vector<Task> tasks;
  auto ss = share(x.structures());
  const FormPtr first = parse_game_formula("<(~a ∩ ~'a); a> true");
  const FormPtr second = parse_game_formula("<(~a ∪ ~'a); a; !false> true");
  GlsOptions go = x.gls();
  tasks.push_back([=] {
    Outcome o;
    for (const auto& s : *ss) {
      o.check(gls_truth(first, s, go).empty(), [&] { return witness(print(first), s, "first trap game is not false"); });
      o.check(gls_truth(second, s, go) == s.full(), [&] { return witness(print(second), s, "second trap game is not true"); });
    }
    return o;
  });
  // Every chain 0 -> 1 -> ... -> L with L <= 4: a on a subset of the forward
  // edges, b on a subset of forward and backward edges, every valuation of P.
  const GamePtr g = parse_game("rec x. (?true ∪ a; x; b)");
  for (int len = 0; len <= 4; ++len)
    tasks.push_back([g, len] {
      Outcome o;
      const int n = len + 1;
      for (std::uint32_t am = 0; am < (1u << len); ++am)
        for (std::uint32_t bm = 0; bm < (1u << (2 * len)); ++bm) {
          FiniteStructure s(n);
          std::vector<std::pair<int, int>> ae, be;
          for (int i = 0; i < len; ++i) {
            if ((am >> i) & 1) ae.emplace_back(i, i + 1);
            if ((bm >> i) & 1) be.emplace_back(i, i + 1);
            if ((bm >> (len + i)) & 1) be.emplace_back(i + 1, i);
          }
          s.set_relation("a", ae);
          s.set_relation("b", be);
          for (std::uint32_t p = 0; p < (1u << n); ++p) {
            const StateSet got = eval_rgl_game_at(g, s, {p});
            StateSet want;
            for (int w = 0; w < n; ++w)
              if (!(chain_oracle(s, w) & StateSet{p}).empty()) want = want | StateSet::single(w);
            o.check(got == want, [&] { return witness(print(g) + " at goal " + to_string({p}, n), s, "chain oracle"); });
          }
        }
      return o;
    });
  return tasks;
}

Digraph graph_from_mask(int n, std::uint32_t mask) {
  Digraph g;
  g.n = n;
  for (int k = 0; k < n * n; ++k)
    if ((mask >> k) & 1) g.edges.emplace_back(k / n, k % n);
  return g;
}

std::vector<Task> poison_agreement(Ctx& x) {
  std::vector<Digraph> graphs;
  for (int n = 1; n <= 3; ++n)
    for (std::uint32_t m = 0; m < (1u << (n * n)); ++m) graphs.push_back(graph_from_mask(n, m));
  for (int i = 0; i < x.c.formulas; ++i) graphs.push_back(graph_from_mask(4, static_cast<std::uint32_t>(pick(x.rng, 1u << 16))));
  GlsOptions go = x.gls();
  std::vector<Task> tasks;
  for (const auto& g : graphs)
    tasks.push_back([g, go] {
      Outcome o;
      const PoisonInstance p = poison_build(g);
      const StateSet oracle = poison_oracle(g);
      o.check(gls_truth(p.formula, p.structure, go) == oracle, [&] { return "poison game disagrees on\n" + write_graph(g); });
      o.stats["classical_rule_differences"] = classical_poison_oracle(g) == oracle ? 0 : 1;
      o.stats[std::string("graphs_") + std::to_string(g.n) + "_vertices"] = 1;
      return o;
    });
  return tasks;
}

std::vector<Task> ctx_ceiling(Ctx& x) {
  FormulaConfig fc = x.formula_config();
  fc.atoms = {"a"};
  fc.sabotage = {"a"};
  std::vector<FormPtr> fs;
  for (int tries = 0; static_cast<int>(fs.size()) < x.c.formulas && tries < 1000 * x.c.formulas; ++tries) {
    FormPtr f = random_formula(Fragment::GLs, fc, x.rng);
    TranslationReport r;
    try {
      ctx_translate(f, ContextSpace({"a"}), 0, {}, &r);
    } catch (const Error&) {
      continue;
    }
    if (r.atoms == 1 && r.depth == 1) fs.push_back(f);
  }
  if (static_cast<int>(fs.size()) < x.c.formulas)
    throw Error(ErrorKind::Usage, "could not draw enough inputs with one atom and one star");
  std::vector<Task> tasks;
  for (const auto& f : fs)
    tasks.push_back([f] {
      Outcome o;
      TranslationReport r;
      ctx_translate(f, ContextSpace({"a"}), 0, {}, &r);
      o.check(r.within_ceiling, [&] {
        return "ceiling exceeded by " + print(f) + "\n" + r.key_values();
      });
      const double out_log2 = std::log2(static_cast<double>(r.output_size));
      o.stats["max_output_log2_over_ceiling_log2"] = out_log2 / r.ceiling_log2;
      o.stats["max_output_size"] = static_cast<double>(r.output_size);
      o.stats["max_input_size"] = static_cast<double>(r.input_size);
      double worst = 0;
      for (double e : r.expansion) worst = std::max(worst, e);
      o.stats["max_expansion"] = worst;
      o.stats["min_ceiling_headroom_log2"] = r.ceiling_log2 - out_log2;
      return o;
    });
  return tasks;
}

using Builder = std::vector<Task> (*)(Ctx&);

const std::vector<std::pair<std::string, Builder>>& registry() {
  static const std::vector<std::pair<std::string, Builder>> r = {
      {"prop36-agreement", gl_agreement},
      {"duality", duality},
      {"correct-sharp", correct_sharp},
      {"correct-flat", correct_flat},
      {"correct-qflat", correct_qflat},
      {"correct-ctx", correct_ctx},
      {"correct-natural", correct_natural},
      {"correct-sep", correct_sep},
      {"roundtrip-sharp-flat", roundtrip},
      {"bekic", bekic},
      {"pointwise", pointwise},
      {"axiom-soundness", axiom_soundness},
      {"worked-examples", worked_examples},
      {"poison-agreement", poison_agreement},
      {"ctx-ceiling", ctx_ceiling},
  };
  return r;
}

}  // namespace

std::string CampaignReport::key_values(bool with_timing) const {
  std::ostringstream o;
  o << "property=" << property << "\n"
    << "seed=" << seed << "\n"
    << "inputs=" << inputs << "\n"
    << "checks=" << checks << "\n"
    << "failures=" << failures << "\n"
    << "skipped=" << skipped << "\n";
  for (const auto& [k, v] : stats) o << k << "=" << v << "\n";
  if (with_timing) o << "elapsed_ms=" << elapsed_ms << "\n";
  o << "passed=" << (passed() ? 1 : 0) << "\n";
  return o.str();
}

std::vector<std::string> campaign_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, b] : registry()) ids.push_back(id);
  return ids;
}

CampaignReport run_campaign(const CampaignConfig& c) {
  Builder build = nullptr;
  for (const auto& [id, b] : registry())
    if (id == c.property) build = b;
  if (!build) throw Error(ErrorKind::Usage, "unknown campaign " + c.property);
  if (c.formulas <= 0 || c.structures <= 0 || c.max_nodes <= 0 || c.max_states <= 0 || c.sabotage_atoms <= 0 ||
      c.budget == 0 || c.workers <= 0)
    throw Error(ErrorKind::Usage, "campaign bounds must be positive");
  if (c.max_states > kDefaultStateCap) throw Error(ErrorKind::CapExceeded, "max_states exceeds the state cap");
  const auto start = std::chrono::steady_clock::now();
  Ctx x{c, Rng(c.seed ^ fnv1a(c.property))};
  const std::vector<Task> tasks = build(x);
  CampaignReport r;
  r.property = c.property;
  r.seed = c.seed;
  reduce(r, run_tasks(tasks, c.workers));
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace glwb
