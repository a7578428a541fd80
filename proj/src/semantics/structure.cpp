#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "glwb/ast.hpp"
#include "glwb/error.hpp"
#include "glwb/semantics.hpp"

namespace glwb {

StateSet GameInterp::apply(StateSet a) const {
  std::uint32_t out = 0;
  if (kind == Kind::Relation) {
    for (std::size_t s = 0; s < succ.size(); ++s)
      if (succ[s] & a.bits) out |= 1u << s;
  } else {
    for (std::size_t s = 0; s < nbhd.size(); ++s)
      for (auto n : nbhd[s])
        if ((n & ~a.bits) == 0) {
          out |= 1u << s;
          break;
        }
  }
  return {out};
}

FiniteStructure::FiniteStructure(int n, int cap) : n_(n), cap_(cap) {
  if (cap > kMaxStates) throw Error(ErrorKind::CapExceeded, "cap above " + std::to_string(kMaxStates));
  if (n < 1 || n > cap)
    throw Error(ErrorKind::CapExceeded, std::to_string(n) + " states (cap " + std::to_string(cap) + ")");
}

namespace {

template <class T>
void upsert(std::vector<std::pair<std::string, T>>& v, const std::string& k, T val) {
  for (auto& e : v)
    if (e.first == k) {
      e.second = std::move(val);
      return;
    }
  v.emplace_back(k, std::move(val));
}

}  // namespace

void FiniteStructure::set_prop(const std::string& p, StateSet s) {
  if (!s.subset_of(full())) throw Error(ErrorKind::WidthMismatch, "valuation of " + p + " outside the state set");
  upsert(props_, p, s);
}

void FiniteStructure::set_relation(const std::string& a, const std::vector<std::pair<int, int>>& edges) {
  GameInterp g;
  g.kind = GameInterp::Kind::Relation;
  g.succ.assign(n_, 0);
  for (auto [x, y] : edges) {
    if (x < 0 || y < 0 || x >= n_ || y >= n_)
      throw Error(ErrorKind::WidthMismatch, "edge " + std::to_string(x) + "->" + std::to_string(y));
    g.succ[x] |= 1u << y;
  }
  upsert(games_, a, std::move(g));
}

void FiniteStructure::set_neighbourhoods(const std::string& a, const std::vector<std::vector<StateSet>>& family) {
  GameInterp g;
  g.kind = GameInterp::Kind::Neighbourhood;
  g.nbhd.assign(n_, {});
  if (family.size() > static_cast<std::size_t>(n_)) throw Error(ErrorKind::WidthMismatch, "too many states");
  for (std::size_t s = 0; s < family.size(); ++s)
    for (auto n : family[s]) {
      if (!n.subset_of(full())) throw Error(ErrorKind::WidthMismatch, "neighbourhood outside the state set");
      g.nbhd[s].push_back(n.bits);
    }
  upsert(games_, a, std::move(g));
}

void FiniteStructure::set_game(const std::string& a, GameInterp g) {
  const std::size_t n = static_cast<std::size_t>(n_);
  if (g.kind == GameInterp::Kind::Relation) {
    g.succ.resize(n, 0);
    g.nbhd.clear();
  } else {
    g.nbhd.resize(n);
    g.succ.clear();
  }
  if (g.succ.size() > n || g.nbhd.size() > n) throw Error(ErrorKind::WidthMismatch, "game " + a);
  upsert(games_, a, std::move(g));
}

StateSet FiniteStructure::prop(const std::string& p) const {
  for (const auto& e : props_)
    if (e.first == p) return e.second;
  return {};
}

const GameInterp& FiniteStructure::game(const std::string& a) const {
  static const GameInterp empty{};
  for (const auto& e : games_)
    if (e.first == a) return e.second;
  return empty;
}

bool FiniteStructure::kripke() const {
  return std::all_of(games_.begin(), games_.end(),
                     [](const auto& e) { return e.second.kind == GameInterp::Kind::Relation; });
}

bool operator==(const FiniteStructure& a, const FiniteStructure& b) {
  return a.n_ == b.n_ && a.props_ == b.props_ && a.games_ == b.games_;
}

Effectivity lift_game(const FiniteStructure& s, const std::string& a) {
  const GameInterp& g = s.game(a);
  return Effectivity::from_function(s.states(), [&](StateSet x) { return g.apply(x); }, s.cap());
}

// ---- file format ----

namespace {

class LineReader {
 public:
  LineReader(std::string line, std::size_t lineno) : s_(std::move(line)), line_(lineno) {}

  void ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    ws();
    return i_ >= s_.size();
  }
  bool peek(char c) {
    ws();
    return i_ < s_.size() && s_[i_] == c;
  }
  void expect(const std::string& t) {
    ws();
    if (s_.compare(i_, t.size(), t) != 0) fail("expected '" + t + "'");
    i_ += t.size();
  }
  std::string ident() {
    ws();
    std::size_t b = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    std::string id = s_.substr(b, i_ - b);
    if (!valid_identifier(id)) fail("expected an identifier");
    return id;
  }
  int number() {
    ws();
    std::size_t b = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (b == i_ || i_ - b > 6) fail("expected a state number");
    return std::stoi(s_.substr(b, i_ - b));
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(line_, i_ + 1, msg);
  }

 private:
  std::string s_;
  std::size_t line_;
  std::size_t i_ = 0;
};

int checked_state(LineReader& r, int n) {
  int v = r.number();
  if (v >= n) r.fail("state " + std::to_string(v) + " out of range");
  return v;
}

}  // namespace

FiniteStructure parse_structure(std::string_view text, int cap) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  int n = -1;
  FiniteStructure out(1, cap);
  std::set<std::string> names;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    LineReader r(raw, lineno);
    if (r.done()) continue;
    std::string kw = r.ident();
    if (kw == "states") {
      if (n >= 0) r.fail("duplicate states header");
      n = r.number();
      if (!r.done()) r.fail("trailing input");
      out = FiniteStructure(n, cap);
      continue;
    }
    if (n < 0) r.fail("missing 'states N' header");
    std::string name = r.ident();
    if (!names.insert(name).second) r.fail("duplicate declaration of " + name);
    if (kw == "prop") {
      r.expect(":");
      StateSet s;
      while (!r.done()) s = s | StateSet::single(checked_state(r, n));
      out.set_prop(name, s);
    } else if (kw == "game") {
      std::string k = r.ident();
      r.expect(":");
      if (k == "rel") {
        std::vector<std::pair<int, int>> edges;
        while (!r.done()) {
          int x = checked_state(r, n);
          r.expect("->");
          edges.emplace_back(x, checked_state(r, n));
        }
        out.set_relation(name, edges);
      } else if (k == "nbhd") {
        std::vector<std::vector<StateSet>> fam(n);
        std::set<int> seen;
        while (!r.done()) {
          int s = checked_state(r, n);
          if (!seen.insert(s).second) r.fail("duplicate state in neighbourhood list");
          r.expect(":");
          if (!r.peek('{')) r.fail("expected '{'");
          while (r.peek('{')) {
            r.expect("{");
            StateSet set;
            if (!r.peek('}')) {
              set = set | StateSet::single(checked_state(r, n));
              while (r.peek(',')) {
                r.expect(",");
                set = set | StateSet::single(checked_state(r, n));
              }
            }
            r.expect("}");
            fam[s].push_back(set);
          }
        }
        out.set_neighbourhoods(name, fam);
      } else {
        r.fail("game kind must be 'rel' or 'nbhd'");
      }
    } else {
      r.fail("unknown keyword '" + kw + "'");
    }
  }
  if (n < 0) throw SyntaxError(lineno + 1, 1, "missing 'states N' header");
  return out;
}

std::string write_structure(const FiniteStructure& s) {
  std::string out = "states " + std::to_string(s.states()) + "\n";
  const int n = s.states();
  for (const auto& [p, v] : s.props()) {
    out += "prop " + p + ":";
    for (int i = 0; i < n; ++i)
      if (v.contains(i)) out += " " + std::to_string(i);
    out += "\n";
  }
  for (const auto& [a, g] : s.games()) {
    if (g.kind == GameInterp::Kind::Relation) {
      out += "game " + a + " rel:";
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if ((g.succ[x] >> y) & 1u) out += " " + std::to_string(x) + "->" + std::to_string(y);
    } else {
      out += "game " + a + " nbhd:";
      for (int x = 0; x < n; ++x) {
        if (g.nbhd[x].empty()) continue;
        out += " " + std::to_string(x) + ":";
        for (auto set : g.nbhd[x]) {
          out += "{";
          bool first = true;
          for (int i = 0; i < n; ++i)
            if ((set >> i) & 1u) {
              if (!first) out += ",";
              out += std::to_string(i);
              first = false;
            }
          out += "}";
        }
      }
    }
    out += "\n";
  }
  return out;
}

}  // namespace glwb
