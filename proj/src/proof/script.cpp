#include <cctype>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "glwb/error.hpp"
#include "glwb/proof.hpp"
#include "glwb/syntax.hpp"
#include "schema_util.hpp"

namespace glwb {
namespace {

// A slice of one source line with its 1-based column.
struct Piece {
  std::string text;
  std::size_t col = 1;
};

std::size_t width(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

Piece sub(const Piece& p, std::size_t from, std::size_t len = std::string::npos) {
  return {p.text.substr(from, len), p.col + width(std::string_view(p.text).substr(0, from))};
}

Piece trim(const Piece& p) {
  std::size_t b = 0, e = p.text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(p.text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(p.text[e - 1]))) --e;
  return sub(p, b, e - b);
}

// Split at top-level occurrences of sep (parentheses and brackets nest).
std::vector<Piece> split(const Piece& p, char sep) {
  std::vector<Piece> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < p.text.size(); ++i) {
    char c = p.text[i];
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(sub(p, start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(sub(p, start)));
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> w;
  for (std::string t; in >> t;) w.push_back(t);
  return w;
}

class ScriptParser {
 public:
  explicit ScriptParser(std::string_view text) : text_(text) {}

  ProofScript run() {
    std::size_t lineno = 0, pos = 0;
    while (pos <= text_.size()) {
      std::size_t nl = text_.find('\n', pos);
      if (nl == std::string_view::npos) nl = text_.size();
      ++lineno;
      line_ = lineno;
      std::string raw(text_.substr(pos, nl - pos));
      if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
      Piece p = trim({raw, 1});
      if (!p.text.empty()) statement(p);
      pos = nl + 1;
    }
    return std::move(s_);
  }

 private:
  std::string_view text_;
  std::size_t line_ = 0;
  ProofScript s_;
  bool have_lines_ = false;

  [[noreturn]] void fail(std::size_t col, const std::string& m) const { throw SyntaxError(line_, col, m); }

  void statement(const Piece& p) {
    if (std::isdigit(static_cast<unsigned char>(p.text[0]))) {
      proof_line(p);
      return;
    }
    auto w = words(p.text);
    if (have_lines_) fail(p.col, "header '" + w[0] + "' after the first proof line");
    if (w[0] == "calculus") {
      if (w.size() != 2 || !parse_calculus(w[1], s_.calculus))
        fail(w.size() > 1 ? p.col + p.text.find(w[1], 8) : p.col, "expected 'calculus <name>'");
    } else if (w[0] == "option") {
      if (w.size() != 2 || w[1] != "alpha") fail(p.col, "unknown option");
      s_.options.gls_alpha = true;
    } else if (w[0] == "afrak") {
      for (std::size_t i = 1; i < w.size(); ++i) {
        auto c = w[i].find(':');
        if (c == std::string::npos || !valid_identifier(w[i].substr(0, c)) || !valid_identifier(w[i].substr(c + 1)))
          fail(p.col, "expected b:s_b pairs after 'afrak'");
        s_.options.afrak.trap_names[w[i].substr(0, c)] = w[i].substr(c + 1);
      }
    } else if (w[0] == "afrak_bases") {
      s_.options.afrak.bases.clear();
      for (std::size_t i = 1; i < w.size(); ++i) {
        SchemaId id;
        if (!parse_schema(w[i], id)) fail(p.col, "unknown schema '" + w[i] + "'");
        s_.options.afrak.bases.insert(id);
      }
    } else {
      fail(p.col, "unknown header '" + w[0] + "'");
    }
  }

  static std::size_t find_word(const std::string& s, const std::string& w) {
    for (std::size_t i = s.find(w); i != std::string::npos; i = s.find(w, i + 1)) {
      bool before = i == 0 || std::isspace(static_cast<unsigned char>(s[i - 1]));
      bool after = i + w.size() >= s.size() || std::isspace(static_cast<unsigned char>(s[i + w.size()]));
      if (before && after) return i;
    }
    return std::string::npos;
  }

  // Number at the start of p; advances past it.
  std::size_t number(Piece& p, const char* what) {
    std::size_t i = 0;
    while (i < p.text.size() && std::isdigit(static_cast<unsigned char>(p.text[i]))) ++i;
    if (i == 0 || i > 9) fail(p.col, std::string("expected ") + what);
    std::size_t v = std::stoul(p.text.substr(0, i));
    p = sub(p, i);
    return v;
  }

  void proof_line(Piece p) {
    have_lines_ = true;
    ProofLine l;
    l.source_line = line_;
    l.label = number(p, "a line number");
    if (p.text.empty() || p.text[0] != '.') fail(p.col, "expected '.' after the line number");
    p = sub(p, 1);
    std::size_t by = find_word(p.text, "BY");
    if (by == std::string::npos) fail(p.col, "expected 'BY' and a justification");
    Piece formula = trim(sub(p, 0, by));
    Piece just = trim(sub(p, by + 2));
    if (formula.text.empty()) fail(p.col, "expected a formula");
    l.formula = parse_formula(formula);

    Piece inst_text;
    if (auto brace = just.text.find('{'); brace != std::string::npos) {
      if (just.text.back() != '}') fail(just.col + width(just.text), "expected '}' at end of instantiation");
      inst_text = sub(just, brace + 1, just.text.size() - brace - 2);
      just = trim(sub(just, 0, brace));
    }
    bool rule = false;
    if (just.text.rfind("axiom:", 0) == 0) {
      just = sub(just, 6);
    } else if (just.text.rfind("rule:", 0) == 0) {
      just = sub(just, 5);
      rule = true;
    } else {
      fail(just.col, "expected 'axiom:' or 'rule:'");
    }
    std::size_t sp = 0;
    while (sp < just.text.size() && !std::isspace(static_cast<unsigned char>(just.text[sp]))) ++sp;
    std::string name = just.text.substr(0, sp);
    if (!parse_schema(name, l.schema)) fail(just.col, "unknown schema '" + name + "'");
    if (rule != is_rule(l.schema))
      fail(just.col, std::string(schema_name(l.schema)) + (rule ? " is an axiom" : " is a rule"));
    Piece rest = trim(sub(just, sp));
    if (rule) {
      if (rest.text.rfind("from", 0) != 0) fail(rest.col, "expected 'from' and premise numbers");
      for (Piece n : split(trim(sub(rest, 4)), ',')) {
        if (n.text.empty()) fail(n.col, "expected a premise number");
        l.premises.push_back(number(n, "a premise number"));
        if (!n.text.empty()) fail(n.col, "unexpected '" + n.text + "'");
      }
    } else if (!rest.text.empty()) {
      fail(rest.col, "unexpected '" + rest.text + "'");
    }
    if (!trim(inst_text).text.empty()) l.inst = instantiation(l.schema, trim(inst_text));
    s_.lines.push_back(std::move(l));
  }

  template <class Fn>
  auto at(const Piece& p, Fn fn) -> decltype(fn()) {
    try {
      return fn();
    } catch (const SyntaxError& e) {
      std::string m = e.what();
      // Drop the inner "SyntaxError: l:c: " prefix.
      if (auto k = m.find(": ", m.find(": ") + 2); k != std::string::npos) m = m.substr(k + 2);
      fail(p.col + e.column() - 1, m);
    } catch (const Error& e) {
      fail(p.col, e.what());
    }
  }

  Formula parse_formula(const Piece& p, const std::set<std::string>& vars = {}) {
    ParseOptions o;
    o.free_vars = vars;
    if (calculus_universe(s_.calculus) == Universe::Modal)
      return at(p, [&] { return Formula(parse_flc(p.text, o)); });
    return at(p, [&] { return Formula(parse_game_formula(p.text, o)); });
  }

  std::string ident(const Piece& p) {
    if (!valid_identifier(p.text)) fail(p.col, "expected an identifier, found '" + p.text + "'");
    return p.text;
  }

  std::vector<Piece> list(const Piece& p) {
    if (p.text.empty() || p.text.front() != '[') return {p};
    if (p.text.back() != ']') fail(p.col, "expected ']'");
    Piece inner = trim(sub(p, 1, p.text.size() - 2));
    if (inner.text.empty()) return {};
    return split(inner, ',');
  }

  MetaValue value(MetaSort sort, const Piece& p, const std::set<std::string>& vars) {
    ParseOptions o;
    o.free_vars = vars;
    switch (sort) {
      case MetaSort::Form: return meta::form(at(p, [&] { return parse_game_formula(p.text, o); }));
      case MetaSort::Game: return meta::game(at(p, [&] { return parse_game(p.text, o); }));
      case MetaSort::Flc: return meta::flc(at(p, [&] { return parse_flc(p.text, o); }));
      case MetaSort::Atom: return meta::atom(ident(p));
      case MetaSort::Var: return meta::var(ident(p));
      case MetaSort::Binder:
        if (p.text == "mu" || p.text == "rec") return meta::binder(false);
        if (p.text == "nu" || p.text == "corec") return meta::binder(true);
        fail(p.col, "expected mu, nu, rec or corec");
      case MetaSort::Index: {
        Piece q = p;
        std::size_t v = number(q, "an index");
        if (!q.text.empty()) fail(q.col, "unexpected '" + q.text + "'");
        return meta::index(v);
      }
      case MetaSort::GameVec: {
        std::vector<GamePtr> gs;
        for (const auto& e : list(p)) {
          if (e.text == "_") gs.push_back(nullptr);
          else gs.push_back(at(e, [&] { return parse_game(e.text, o); }));
        }
        return meta::games(std::move(gs));
      }
      case MetaSort::AtomVec:
      case MetaSort::VarVec: {
        std::vector<std::string> ns;
        for (const auto& e : list(p)) ns.push_back(ident(e));
        return sort == MetaSort::AtomVec ? meta::atoms(std::move(ns)) : meta::vars(std::move(ns));
      }
      case MetaSort::SchemaRef: {
        SchemaId id;
        if (!parse_schema(p.text, id)) fail(p.col, "unknown schema '" + p.text + "'");
        return meta::schema(id);
      }
      case MetaSort::AtomMap: {
        std::map<std::string, std::string> m;
        for (const auto& e : list(p)) {
          auto c = e.text.find(':');
          if (c == std::string::npos) fail(e.col, "expected b:s_b");
          m[ident(trim(sub(e, 0, c)))] = ident(trim(sub(e, c + 1)));
        }
        return meta::atom_map(std::move(m));
      }
    }
    fail(p.col, "unsupported metavariable sort");
  }

  Instantiation instantiation(SchemaId id, const Piece& p) {
    std::map<std::string, Piece> raw;
    for (const Piece& kv : split(p, ',')) {
      auto eq = kv.text.find('=');
      if (eq == std::string::npos) fail(kv.col, "expected key=value");
      Piece key = trim(sub(kv, 0, eq));
      if (!raw.emplace(key.text, trim(sub(kv, eq + 1))).second) fail(key.col, "duplicate key '" + key.text + "'");
    }
    const Universe u = calculus_universe(s_.calculus);
    Instantiation inst;
    // The base schema fixes the AFrak signature.
    if (id == SchemaId::AFrak)
      if (auto b = raw.find("base"); b != raw.end()) inst["base"] = value(MetaSort::SchemaRef, b->second, {});
    auto sig = detail::full_signature(id, inst, u);
    auto sort_of = [&](const std::string& k) -> const Metavariable* {
      for (const auto& m : sig)
        if (m.name == k) return &m;
      return nullptr;
    };
    for (const auto& [k, v] : raw)
      if (!sort_of(k)) fail(v.col, std::string(schema_name(id)) + " has no metavariable '" + k + "'");
    std::set<std::string> vars;
    auto binding = [](MetaSort s) {
      return s == MetaSort::Var || s == MetaSort::VarVec;
    };
    auto expression = [](MetaSort s) {
      return s == MetaSort::Form || s == MetaSort::Game || s == MetaSort::Flc || s == MetaSort::GameVec;
    };
    for (const auto& [k, v] : raw) {
      const Metavariable* m = sort_of(k);
      if (expression(m->sort) || inst.count(k)) continue;
      inst[k] = value(m->sort, v, {});
      if (binding(m->sort)) {
        if (m->sort == MetaSort::Var) vars.insert(inst[k].name);
        for (const auto& x : inst[k].names) vars.insert(x);
      }
    }
    for (const auto& [k, v] : raw) {
      const Metavariable* m = sort_of(k);
      if (expression(m->sort)) inst[k] = value(m->sort, v, vars);
    }
    return inst;
  }
};

std::string write_value(const MetaValue& v, Universe u) {
  auto vec = [](const std::vector<std::string>& items) {
    std::string s = "[";
    for (std::size_t i = 0; i < items.size(); ++i) s += (i ? ", " : "") + items[i];
    return s + "]";
  };
  switch (v.sort) {
    case MetaSort::Form: return print(v.form);
    case MetaSort::Game: return print(v.game);
    case MetaSort::Flc: return print(v.flc);
    case MetaSort::Atom:
    case MetaSort::Var: return v.name;
    case MetaSort::Binder:
      if (u == Universe::Modal) return v.greatest ? "nu" : "mu";
      return v.greatest ? "corec" : "rec";
    case MetaSort::Index: return std::to_string(v.index);
    case MetaSort::GameVec: {
      std::vector<std::string> items;
      for (const auto& g : v.games) items.push_back(g ? print(g) : "_");
      return vec(items);
    }
    case MetaSort::AtomVec:
    case MetaSort::VarVec: return vec(v.names);
    case MetaSort::SchemaRef: return schema_name(v.schema);
    case MetaSort::AtomMap: {
      std::vector<std::string> items;
      for (const auto& [b, s] : v.pairs) items.push_back(b + ":" + s);
      return vec(items);
    }
  }
  return "";
}

}  // namespace

ProofScript parse_proof(std::string_view text) { return ScriptParser(text).run(); }

std::string write_proof(const ProofScript& s) {
  std::ostringstream o;
  const Universe u = calculus_universe(s.calculus);
  o << "calculus " << calculus_name(s.calculus) << "\n";
  if (s.options.gls_alpha) o << "option alpha\n";
  if (!s.options.afrak.trap_names.empty()) {
    o << "afrak";
    for (const auto& [b, t] : s.options.afrak.trap_names) o << " " << b << ":" << t;
    o << "\n";
  }
  if (s.options.afrak.bases != AFrakConfig{}.bases) {
    o << "afrak_bases";
    for (SchemaId id : s.options.afrak.bases) o << " " << schema_name(id);
    o << "\n";
  }
  for (const auto& l : s.lines) {
    o << l.label << ". " << print(l.formula) << " BY " << (is_rule(l.schema) ? "rule:" : "axiom:")
      << schema_name(l.schema);
    if (!l.premises.empty()) {
      o << " from ";
      for (std::size_t i = 0; i < l.premises.size(); ++i) o << (i ? "," : "") << l.premises[i];
    }
    if (!l.inst.empty()) {
      o << " {";
      bool first = true;
      for (const auto& [k, v] : l.inst) {
        o << (first ? "" : ", ") << k << "=" << write_value(v, u);
        first = false;
      }
      o << "}";
    }
    o << "\n";
  }
  return o.str();
}

}  // namespace glwb
