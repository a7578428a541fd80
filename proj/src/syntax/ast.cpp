#include "glwb/ast.hpp"

#include <cctype>
#include <functional>
#include <limits>
#include <unordered_map>

#include "glwb/error.hpp"

namespace glwb {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::KindClash: return "KindClash";
    case ErrorKind::NormalFormViolation: return "NormalFormViolation";
    case ErrorKind::Capture: return "CaptureError";
    case ErrorKind::UnsupportedNegation: return "UnsupportedNegation";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NonMonotone: return "NonMonotoneDetected";
    case ErrorKind::AlphabetTooSmall: return "AlphabetTooSmall";
    case ErrorKind::ReservedNameClash: return "ReservedNameClash";
    case ErrorKind::NotRightLinear: return "NotRightLinear";
    case ErrorKind::NotSeparable: return "NotSeparable";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::IncompleteInstantiation: return "IncompleteInstantiation";
    case ErrorKind::TooManyAtoms: return "TooManyAtoms";
    case ErrorKind::WidthMismatch: return "WidthMismatch";
    case ErrorKind::PartitionViolation: return "PartitionViolation";
    case ErrorKind::Format: return "FormatError";
    case ErrorKind::Usage: return "UsageError";
  }
  return "Error";
}

bool valid_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

namespace {

FormPtr mkf(FormKind k, std::string name = {}, FormPtr l = {}, FormPtr r = {}, GamePtr g = {}) {
  return std::make_shared<const Form>(Form{k, std::move(name), std::move(l), std::move(r), std::move(g)});
}

GamePtr mkg(GameKind k, std::string name = {}, FormPtr f = {}, GamePtr l = {}, GamePtr r = {}) {
  return std::make_shared<const Game>(Game{k, std::move(name), std::move(f), std::move(l), std::move(r), {}, 0});
}

FlcPtr mkl(FlcKind k, std::string name = {}, FlcPtr l = {}, FlcPtr r = {}) {
  return std::make_shared<const Flc>(Flc{k, std::move(name), std::move(l), std::move(r)});
}

// Constants are shared so that equality on them is a pointer compare.
const FormPtr kTrue = mkf(FormKind::True);
const FormPtr kFalse = mkf(FormKind::False);
const FlcPtr kId = mkl(FlcKind::Id);
const FlcPtr kFlcTrue = mkl(FlcKind::True);
const FlcPtr kFlcFalse = mkl(FlcKind::False);

}  // namespace

namespace gl {
FormPtr tt() { return kTrue; }
FormPtr ff() { return kFalse; }
FormPtr prop(std::string p) { return mkf(FormKind::Prop, std::move(p)); }
FormPtr neg_prop(std::string p) { return mkf(FormKind::NegProp, std::move(p)); }
FormPtr neg(FormPtr f) { return mkf(FormKind::Neg, {}, std::move(f)); }
FormPtr lor(FormPtr a, FormPtr b) { return mkf(FormKind::Or, {}, std::move(a), std::move(b)); }
FormPtr land(FormPtr a, FormPtr b) { return mkf(FormKind::And, {}, std::move(a), std::move(b)); }
FormPtr dia(GamePtr g, FormPtr f) { return mkf(FormKind::Diamond, {}, std::move(f), {}, std::move(g)); }
FormPtr implies(FormPtr a, FormPtr b) { return lor(neg(std::move(a)), std::move(b)); }
FormPtr iff(FormPtr a, FormPtr b) { return land(implies(a, b), implies(b, a)); }
FormPtr box(GamePtr g, FormPtr f) { return neg(dia(std::move(g), neg(std::move(f)))); }

GamePtr atom(std::string a) { return mkg(GameKind::Atom, std::move(a)); }
GamePtr dual_atom(std::string a) { return mkg(GameKind::DualAtom, std::move(a)); }
GamePtr var(std::string x) { return mkg(GameKind::Var, std::move(x)); }
GamePtr dual_var(std::string x) { return mkg(GameKind::DualVar, std::move(x)); }
GamePtr test(FormPtr f) { return mkg(GameKind::Test, {}, std::move(f)); }
GamePtr dtest(FormPtr f) { return mkg(GameKind::DTest, {}, std::move(f)); }
GamePtr choice(GamePtr a, GamePtr b) { return mkg(GameKind::Choice, {}, {}, std::move(a), std::move(b)); }
GamePtr dchoice(GamePtr a, GamePtr b) { return mkg(GameKind::DChoice, {}, {}, std::move(a), std::move(b)); }
GamePtr seq(GamePtr a, GamePtr b) { return mkg(GameKind::Seq, {}, {}, std::move(a), std::move(b)); }
GamePtr star(GamePtr a) { return mkg(GameKind::Star, {}, {}, std::move(a)); }
GamePtr dstar(GamePtr a) { return mkg(GameKind::DStar, {}, {}, std::move(a)); }
GamePtr dual(GamePtr a) { return mkg(GameKind::Dual, {}, {}, std::move(a)); }
GamePtr rec(std::string x, GamePtr body) { return mkg(GameKind::Rec, std::move(x), {}, std::move(body)); }
GamePtr corec(std::string x, GamePtr body) { return mkg(GameKind::CoRec, std::move(x), {}, std::move(body)); }
GamePtr trap_a(std::string a) { return mkg(GameKind::TrapA, std::move(a)); }
GamePtr trap_d(std::string a) { return mkg(GameKind::TrapD, std::move(a)); }
GamePtr component(SystemPtr sys, std::size_t i) {
  return std::make_shared<const Game>(Game{GameKind::System, {}, {}, {}, {}, std::move(sys), i});
}

GamePtr seq_all(const std::vector<GamePtr>& gs) {
  GamePtr acc = gs.back();
  for (std::size_t i = gs.size() - 1; i-- > 0;) acc = seq(gs[i], acc);
  return acc;
}

GamePtr choice_all(const std::vector<GamePtr>& gs) {
  GamePtr acc = gs.back();
  for (std::size_t i = gs.size() - 1; i-- > 0;) acc = choice(gs[i], acc);
  return acc;
}
}  // namespace gl

namespace flc {
FlcPtr id() { return kId; }
FlcPtr tt() { return kFlcTrue; }
FlcPtr ff() { return kFlcFalse; }
FlcPtr var(std::string x) { return mkl(FlcKind::Var, std::move(x)); }
FlcPtr prop(std::string p) { return mkl(FlcKind::Prop, std::move(p)); }
FlcPtr neg_prop(std::string p) { return mkl(FlcKind::NegProp, std::move(p)); }
FlcPtr lor(FlcPtr a, FlcPtr b) { return mkl(FlcKind::Or, {}, std::move(a), std::move(b)); }
FlcPtr land(FlcPtr a, FlcPtr b) { return mkl(FlcKind::And, {}, std::move(a), std::move(b)); }
FlcPtr dia(std::string a, FlcPtr f) { return mkl(FlcKind::Dia, std::move(a), std::move(f)); }
FlcPtr box(std::string a, FlcPtr f) { return mkl(FlcKind::Box, std::move(a), std::move(f)); }
FlcPtr mu(std::string x, FlcPtr f) { return mkl(FlcKind::Mu, std::move(x), std::move(f)); }
FlcPtr nu(std::string x, FlcPtr f) { return mkl(FlcKind::Nu, std::move(x), std::move(f)); }
FlcPtr chop(FlcPtr a, FlcPtr b) { return mkl(FlcKind::Chop, {}, std::move(a), std::move(b)); }
FlcPtr star(FlcPtr f) { return mkl(FlcKind::StarFix, {}, std::move(f)); }
}  // namespace flc

bool is_binary(GameKind k) {
  return k == GameKind::Choice || k == GameKind::DChoice || k == GameKind::Seq;
}
bool is_binary(FormKind k) { return k == FormKind::Or || k == FormKind::And; }
bool is_binary(FlcKind k) { return k == FlcKind::Or || k == FlcKind::And || k == FlcKind::Chop; }

bool equal(const FormPtr& a, const FormPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind || a->name != b->name) return false;
  return equal(a->left, b->left) && equal(a->right, b->right) && equal(a->game, b->game);
}

bool equal(const GamePtr& a, const GamePtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind || a->name != b->name || a->index != b->index) return false;
  return equal(a->form, b->form) && equal(a->left, b->left) && equal(a->right, b->right) &&
         equal(a->system, b->system);
}

bool equal(const SystemPtr& a, const SystemPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind || a->bindings.size() != b->bindings.size()) return false;
  for (std::size_t i = 0; i < a->bindings.size(); ++i)
    if (a->bindings[i].first != b->bindings[i].first || !equal(a->bindings[i].second, b->bindings[i].second))
      return false;
  return true;
}

bool equal(const FlcPtr& a, const FlcPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind || a->name != b->name) return false;
  return equal(a->left, b->left) && equal(a->right, b->right);
}

namespace {
std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

std::size_t hash_sys(const SystemPtr& s) {
  if (!s) return 0;
  std::size_t h = static_cast<std::size_t>(s->kind) + 17;
  for (const auto& [x, g] : s->bindings) h = mix(mix(h, std::hash<std::string>{}(x)), hash_of(g));
  return h;
}
}  // namespace

std::size_t hash_of(const FormPtr& f) {
  if (!f) return 0;
  std::size_t h = mix(static_cast<std::size_t>(f->kind) + 1, std::hash<std::string>{}(f->name));
  return mix(mix(mix(h, hash_of(f->left)), hash_of(f->right)), hash_of(f->game));
}

std::size_t hash_of(const GamePtr& g) {
  if (!g) return 0;
  std::size_t h = mix(static_cast<std::size_t>(g->kind) + 101, std::hash<std::string>{}(g->name));
  h = mix(mix(mix(h, hash_of(g->form)), hash_of(g->left)), hash_of(g->right));
  return mix(mix(h, hash_sys(g->system)), g->index);
}

std::size_t hash_of(const FlcPtr& f) {
  if (!f) return 0;
  std::size_t h = mix(static_cast<std::size_t>(f->kind) + 211, std::hash<std::string>{}(f->name));
  return mix(mix(h, hash_of(f->left)), hash_of(f->right));
}

namespace {
constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kMax - b ? kMax : a + b; }

struct SizeMemo {
  std::unordered_map<const void*, std::uint64_t> memo;

  std::uint64_t form(const FormPtr& f) {
    if (!f) return 0;
    auto it = memo.find(f.get());
    if (it != memo.end()) return it->second;
    std::uint64_t s = sat_add(1, sat_add(form(f->left), sat_add(form(f->right), game(f->game))));
    memo.emplace(f.get(), s);
    return s;
  }
  std::uint64_t game(const GamePtr& g) {
    if (!g) return 0;
    auto it = memo.find(g.get());
    if (it != memo.end()) return it->second;
    std::uint64_t s = sat_add(1, sat_add(form(g->form), sat_add(game(g->left), game(g->right))));
    if (g->system)
      for (const auto& b : g->system->bindings) s = sat_add(s, game(b.second));
    memo.emplace(g.get(), s);
    return s;
  }
  std::uint64_t flc(const FlcPtr& f) {
    if (!f) return 0;
    auto it = memo.find(f.get());
    if (it != memo.end()) return it->second;
    std::uint64_t s = sat_add(1, sat_add(flc(f->left), flc(f->right)));
    memo.emplace(f.get(), s);
    return s;
  }
};
}  // namespace

std::uint64_t size_of(const FormPtr& f) { return SizeMemo{}.form(f); }
std::uint64_t size_of(const GamePtr& g) { return SizeMemo{}.game(g); }
std::uint64_t size_of(const FlcPtr& f) { return SizeMemo{}.flc(f); }

}  // namespace glwb
