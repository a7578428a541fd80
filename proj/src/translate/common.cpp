#include "common.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_map>

#include "glwb/error.hpp"

namespace glwb {

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

struct Sizer {
  std::unordered_map<const void*, std::uint64_t> memo;

  std::uint64_t form(const FormPtr& f) {
    if (!f) return 0;
    if (auto it = memo.find(f.get()); it != memo.end()) return it->second;
    std::uint64_t n = sat_add(1, sat_add(form(f->left), sat_add(form(f->right), game(f->game))));
    memo.emplace(f.get(), n);
    return n;
  }
  std::uint64_t game(const GamePtr& g) {
    if (!g) return 0;
    if (auto it = memo.find(g.get()); it != memo.end()) return it->second;
    std::uint64_t n = sat_add(1, sat_add(form(g->form), sat_add(game(g->left), game(g->right))));
    if (g->system)
      for (const auto& b : g->system->bindings) n = sat_add(n, game(b.second));
    memo.emplace(g.get(), n);
    return n;
  }
  std::uint64_t flc(const FlcPtr& f) {
    if (!f) return 0;
    if (auto it = memo.find(f.get()); it != memo.end()) return it->second;
    std::uint64_t n = sat_add(1, sat_add(flc(f->left), flc(f->right)));
    memo.emplace(f.get(), n);
    return n;
  }
};

}  // namespace

std::uint64_t expr_size(const FormPtr& f) { return Sizer{}.form(f); }
std::uint64_t expr_size(const GamePtr& g) { return Sizer{}.game(g); }
std::uint64_t expr_size(const FlcPtr& f) { return Sizer{}.flc(f); }

std::string TranslationReport::key_values() const {
  std::ostringstream o;
  o << "translation=" << translation << "\n";
  o << "input_size=" << input_size << "\n";
  o << "output_size=" << output_size << "\n";
  o << "fixpoints=" << expansion.size() << "\n";
  o << "expansion=";
  for (std::size_t i = 0; i < expansion.size(); ++i) o << (i ? "," : "") << expansion[i];
  o << "\n";
  o << "elapsed_ms=" << elapsed_ms << "\n";
  if (translation == "ctx") {
    o << "atoms=" << atoms << "\n";
    o << "depth=" << depth << "\n";
    o << "ceiling_log2=" << ceiling_log2 << "\n";
    o << "within_ceiling=" << (within_ceiling ? 1 : 0) << "\n";
  }
  return o.str();
}

namespace detail {

ReportScope::ReportScope(TranslationReport* r, const char* name, std::uint64_t input_size)
    : r_(r), start_(std::chrono::steady_clock::now()) {
  if (!r_) return;
  *r_ = TranslationReport{};
  r_->translation = name;
  r_->input_size = input_size;
}

void ReportScope::finish(std::uint64_t output_size) {
  if (!r_) return;
  r_->output_size = output_size;
  r_->elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
}

void ReportScope::fixpoint(std::uint64_t in, std::uint64_t out) {
  if (r_) r_->expansion.push_back(static_cast<double>(out) / static_cast<double>(in == 0 ? 1 : in));
}

void reject_names(const std::set<std::string>& names, const std::vector<std::string>& exact,
                  const std::vector<std::string>& prefixes, const char* who) {
  for (const auto& n : names) {
    for (const auto& e : exact)
      if (n == e) throw Error(ErrorKind::ReservedNameClash, std::string(who) + ": input uses the marker name " + n);
    for (const auto& p : prefixes)
      if (n.compare(0, p.size(), p) == 0)
        throw Error(ErrorKind::ReservedNameClash, std::string(who) + ": input uses the reserved prefix of " + n);
  }
}

FormPtr DagSubst::form(const FormPtr& f) {
  if (auto it = fmemo_.find(f.get()); it != fmemo_.end()) return it->second;
  FormPtr out = f;
  switch (f->kind) {
    case FormKind::Neg: {
      FormPtr l = form(f->left);
      if (l != f->left) out = gl::neg(l);
      break;
    }
    case FormKind::Or:
    case FormKind::And: {
      FormPtr l = form(f->left), r = form(f->right);
      if (l != f->left || r != f->right) out = f->kind == FormKind::Or ? gl::lor(l, r) : gl::land(l, r);
      break;
    }
    case FormKind::Diamond: {
      GamePtr g = game(f->game);
      FormPtr b = form(f->left);
      if (g != f->game || b != f->left) out = gl::dia(g, b);
      break;
    }
    default: break;
  }
  fmemo_.emplace(f.get(), out);
  return out;
}

GamePtr DagSubst::game(const GamePtr& g) {
  if (auto it = gmemo_.find(g.get()); it != gmemo_.end()) return it->second;
  GamePtr out = g;
  switch (g->kind) {
    case GameKind::Var:
      if (GamePtr r = repl_(g->name)) out = r;
      break;
    case GameKind::DualVar:
      if (GamePtr r = repl_(g->name)) out = gl::dual(r);
      break;
    case GameKind::Test:
    case GameKind::DTest: {
      FormPtr b = form(g->form);
      if (b != g->form) out = g->kind == GameKind::Test ? gl::test(b) : gl::dtest(b);
      break;
    }
    case GameKind::Choice:
    case GameKind::DChoice:
    case GameKind::Seq: {
      GamePtr l = game(g->left), r = game(g->right);
      if (l != g->left || r != g->right)
        out = g->kind == GameKind::Choice ? gl::choice(l, r) : g->kind == GameKind::DChoice ? gl::dchoice(l, r) : gl::seq(l, r);
      break;
    }
    case GameKind::Star:
    case GameKind::DStar:
    case GameKind::Dual: {
      GamePtr b = game(g->left);
      if (b != g->left) out = g->kind == GameKind::Star ? gl::star(b) : g->kind == GameKind::DStar ? gl::dstar(b) : gl::dual(b);
      break;
    }
    case GameKind::Rec:
    case GameKind::CoRec: {
      GamePtr b = game(g->left);
      if (b != g->left) out = g->kind == GameKind::Rec ? gl::rec(g->name, b) : gl::corec(g->name, b);
      break;
    }
    case GameKind::System: {
      auto it = smemo_.find(g->system.get());
      if (it == smemo_.end()) {
        auto sys = std::make_shared<RecSystem>();
        sys->kind = g->system->kind;
        bool changed = false;
        for (const auto& [x, body] : g->system->bindings) {
          GamePtr nb = game(body);
          changed = changed || nb != body;
          sys->bindings.emplace_back(x, nb);
        }
        it = smemo_.emplace(g->system.get(), changed ? SystemPtr(sys) : g->system).first;
      }
      if (it->second != g->system) out = gl::component(it->second, g->index);
      break;
    }
    default: break;
  }
  gmemo_.emplace(g.get(), out);
  return out;
}

const std::set<std::string>& FreeVars::form(const FormPtr& f) {
  if (auto it = fmemo_.find(f.get()); it != fmemo_.end()) return it->second;
  std::set<std::string> out;
  if (f->left) out = form(f->left);
  if (f->right) {
    const auto& r = form(f->right);
    out.insert(r.begin(), r.end());
  }
  if (f->game) {
    const auto& r = game(f->game);
    out.insert(r.begin(), r.end());
  }
  return fmemo_.emplace(f.get(), std::move(out)).first->second;
}

const std::set<std::string>& FreeVars::game(const GamePtr& g) {
  if (auto it = memo_.find(g.get()); it != memo_.end()) return it->second;
  std::set<std::string> out;
  auto add = [&](const std::set<std::string>& s) { out.insert(s.begin(), s.end()); };
  switch (g->kind) {
    case GameKind::Var:
    case GameKind::DualVar: out.insert(g->name); break;
    case GameKind::Rec:
    case GameKind::CoRec:
      add(game(g->left));
      out.erase(g->name);
      break;
    case GameKind::System:
      for (const auto& b : g->system->bindings) add(game(b.second));
      for (const auto& b : g->system->bindings) out.erase(b.first);
      break;
    default:
      if (g->form) add(form(g->form));
      if (g->left) add(game(g->left));
      if (g->right) add(game(g->right));
  }
  return memo_.emplace(g.get(), std::move(out)).first->second;
}

}  // namespace detail
}  // namespace glwb
