#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "glwb/error.hpp"
#include "glwb/syntax.hpp"

namespace glwb {
namespace {

enum class Tok {
  Ident,
  LParen, RParen, LAngle, RAngle, LBrack, RBrack,
  Semi, Quest, Bang, Tilde, Quote, Caret, StarSym, Minus, Dot,
  Or, And, Implies, Iff, Cup, Cap, Top, Bot, Not,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line, col;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) {
        ++col;
      }
      ++i;
    }
  };
  auto starts = [&](std::string_view p) { return s.substr(i, p.size()) == p; };
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    std::size_t l = line, cl = col;
    auto push = [&](Tok k, std::size_t n) {
      out.push_back({k, std::string(s.substr(i, n)), l, cl});
      advance(n);
    };
    if (std::isalpha(c)) {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      push(Tok::Ident, j - i);
      continue;
    }
    struct Sym { std::string_view text; Tok kind; };
    static const Sym syms[] = {
        {"<->", Tok::Iff}, {"->", Tok::Implies}, {"\\/", Tok::Or}, {"/\\", Tok::And},
        {"|u|", Tok::Cup}, {"|n|", Tok::Cap},
        {"\xE2\x88\xAA", Tok::Cup}, {"\xE2\x88\xA9", Tok::Cap},
        {"\xE2\x88\xA8", Tok::Or}, {"\xE2\x88\xA7", Tok::And},
        {"\xE2\x86\x94", Tok::Iff}, {"\xE2\x86\x92", Tok::Implies},
        {"\xE2\x8A\xA4", Tok::Top}, {"\xE2\x8A\xA5", Tok::Bot}, {"\xC2\xAC", Tok::Not},
        {"(", Tok::LParen}, {")", Tok::RParen}, {"<", Tok::LAngle}, {">", Tok::RAngle},
        {"[", Tok::LBrack}, {"]", Tok::RBrack}, {";", Tok::Semi}, {"?", Tok::Quest},
        {"!", Tok::Bang}, {"~", Tok::Tilde}, {"'", Tok::Quote}, {"^", Tok::Caret},
        {"*", Tok::StarSym}, {"-", Tok::Minus}, {".", Tok::Dot},
    };
    bool matched = false;
    for (const auto& sym : syms) {
      if (starts(sym.text)) {
        push(sym.kind, sym.text.size());
        matched = true;
        break;
      }
    }
    if (!matched) throw SyntaxError(l, cl, "unexpected character '" + std::string(1, s[i]) + "'");
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

const char* kind_label(NameKind k) {
  switch (k) {
    case NameKind::Proposition: return "proposition";
    case NameKind::AtomicGame: return "atomic game";
    case NameKind::Variable: return "variable";
  }
  return "?";
}

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& opts) : toks_(lex(text)), opts_(opts) {}

  FormPtr formula_top() {
    FormPtr f = formula();
    expect_end();
    return f;
  }
  GamePtr game_top() {
    GamePtr g = game();
    expect_end();
    return g;
  }
  FlcPtr flc_top() {
    FlcPtr f = flc_formula();
    expect_end();
    return f;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const ParseOptions& opts_;
  std::vector<std::string> bound_;
  std::map<std::string, NameKind> kinds_;

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_kw(std::string_view kw) const { return peek().kind == Tok::Ident && peek().text == kw; }
  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw SyntaxError(t.line, t.col, msg); }
  Token expect(Tok k, const char* what) {
    if (!at(k)) fail(peek(), std::string("expected ") + what + (at(Tok::End) ? " at end of input" : ", found '" + peek().text + "'"));
    return take();
  }
  void expect_end() {
    if (!at(Tok::End)) fail(peek(), "unexpected '" + peek().text + "'");
  }

  void record(const Token& t, NameKind k) {
    if (!valid_identifier(t.text)) fail(t, "invalid identifier '" + t.text + "'");
    auto [it, inserted] = kinds_.emplace(t.text, k);
    if (!inserted && it->second != k)
      throw Error(ErrorKind::KindClash, std::to_string(t.line) + ":" + std::to_string(t.col) + ": '" + t.text +
                                            "' used as " + kind_label(k) + " but earlier as " + kind_label(it->second));
  }
  bool is_variable(const std::string& x) const {
    for (const auto& b : bound_)
      if (b == x) return true;
    return opts_.free_vars.count(x) > 0;
  }
  Token ident(const char* what) {
    Token t = expect(Tok::Ident, what);
    return t;
  }
  static bool reserved_gl(const std::string& s) {
    return s == "true" || s == "false" || s == "rec" || s == "corec";
  }
  static bool reserved_flc(const std::string& s) {
    return s == "true" || s == "false" || s == "id" || s == "mu" || s == "nu";
  }

  // ---- game-logic formulas ----

  FormPtr formula() {
    FormPtr l = implication();
    if (at(Tok::Iff)) {
      take();
      FormPtr r = formula();
      return gl::iff(l, r);
    }
    return l;
  }
  FormPtr implication() {
    FormPtr l = disjunction();
    if (at(Tok::Implies)) {
      take();
      return gl::implies(l, implication());
    }
    return l;
  }
  FormPtr disjunction() {
    FormPtr l = conjunction();
    if (at(Tok::Or)) {
      take();
      return gl::lor(l, disjunction());
    }
    return l;
  }
  FormPtr conjunction() {
    FormPtr l = unary();
    if (at(Tok::And)) {
      take();
      return gl::land(l, conjunction());
    }
    return l;
  }
  FormPtr unary() {
    if (at(Tok::Minus) || at(Tok::Not)) {
      take();
      if (at(Tok::Ident) && !reserved_gl(peek().text)) {
        Token t = take();
        record(t, NameKind::Proposition);
        return gl::neg_prop(t.text);
      }
      return gl::neg(unary());
    }
    if (at(Tok::LAngle)) {
      take();
      GamePtr g = game();
      expect(Tok::RAngle, "'>'");
      return gl::dia(g, unary());
    }
    if (at(Tok::LBrack)) {
      take();
      GamePtr g = game();
      expect(Tok::RBrack, "']'");
      return gl::box(g, unary());
    }
    if (at(Tok::LParen)) {
      take();
      FormPtr f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (at(Tok::Top)) return take(), gl::tt();
    if (at(Tok::Bot)) return take(), gl::ff();
    if (at(Tok::Ident)) {
      if (at_kw("true")) return take(), gl::tt();
      if (at_kw("false")) return take(), gl::ff();
      if (reserved_gl(peek().text)) fail(peek(), "keyword '" + peek().text + "' cannot start a formula");
      Token t = take();
      record(t, NameKind::Proposition);
      return gl::prop(t.text);
    }
    fail(peek(), at(Tok::End) ? "unexpected end of input, expected a formula" : "expected a formula, found '" + peek().text + "'");
  }

  // ---- games ----

  GamePtr game() {
    if (at_kw("rec") || at_kw("corec")) return binder();
    GamePtr l = sequence();
    if (at(Tok::Cup) || at(Tok::Cap)) {
      bool cup = take().kind == Tok::Cup;
      GamePtr r = game();
      return cup ? gl::choice(l, r) : gl::dchoice(l, r);
    }
    return l;
  }
  GamePtr binder() {
    bool is_rec = take().text == "rec";
    Token x = ident("bound variable");
    if (reserved_gl(x.text)) fail(x, "keyword cannot be bound");
    record(x, NameKind::Variable);
    expect(Tok::Dot, "'.'");
    bound_.push_back(x.text);
    GamePtr body = game();
    bound_.pop_back();
    return is_rec ? gl::rec(x.text, body) : gl::corec(x.text, body);
  }
  GamePtr sequence() {
    GamePtr l = postfix();
    if (at(Tok::Semi)) {
      take();
      GamePtr r = (at_kw("rec") || at_kw("corec")) ? binder() : sequence();
      return gl::seq(l, r);
    }
    return l;
  }
  GamePtr postfix() {
    bool bare = at(Tok::Ident);
    GamePtr g = primary_game();
    while (at(Tok::Caret)) {
      Token caret = take();
      if (at(Tok::StarSym)) {
        take();
        g = gl::star(g);
      } else if (at(Tok::Ident) && (peek().text == "x" || peek().text == "d")) {
        std::string op = take().text;
        if (op == "x") {
          g = gl::dstar(g);
        } else if (bare && g->kind == GameKind::Atom) {
          g = gl::dual_atom(g->name);
        } else if (bare && g->kind == GameKind::Var) {
          g = gl::dual_var(g->name);
        } else {
          g = gl::dual(g);
        }
      } else {
        fail(caret, "expected '*', 'x' or 'd' after '^'");
      }
      bare = false;
    }
    return g;
  }
  GamePtr primary_game() {
    if (at(Tok::Ident)) {
      if (reserved_gl(peek().text)) fail(peek(), "keyword '" + peek().text + "' cannot be a game");
      Token t = take();
      if (is_variable(t.text)) {
        record(t, NameKind::Variable);
        return gl::var(t.text);
      }
      record(t, NameKind::AtomicGame);
      return gl::atom(t.text);
    }
    if (at(Tok::Tilde)) {
      take();
      bool demon = false;
      if (at(Tok::Quote)) {
        take();
        demon = true;
      }
      Token t = ident("atomic game after '~'");
      record(t, NameKind::AtomicGame);
      return demon ? gl::trap_d(t.text) : gl::trap_a(t.text);
    }
    if (at(Tok::Quest)) {
      take();
      return gl::test(unary());
    }
    if (at(Tok::Bang)) {
      take();
      return gl::dtest(unary());
    }
    if (at(Tok::LParen)) {
      take();
      GamePtr g = game();
      expect(Tok::RParen, "')'");
      return g;
    }
    fail(peek(), at(Tok::End) ? "unexpected end of input, expected a game" : "expected a game, found '" + peek().text + "'");
  }

  // ---- FLC ----

  FlcPtr flc_formula() {
    FlcPtr l = flc_implication();
    if (at(Tok::Iff)) {
      Token t = take();
      FlcPtr r = flc_formula();
      return flc::land(flc::lor(negate_at(t, l), r), flc::lor(negate_at(t, r), l));
    }
    return l;
  }
  FlcPtr negate_at(const Token& t, const FlcPtr& f) {
    try {
      return flc_negate(f);
    } catch (const Error& e) {
      fail(t, e.what());
    }
  }
  FlcPtr flc_implication() {
    FlcPtr l = flc_disjunction();
    if (at(Tok::Implies)) {
      Token t = take();
      return flc::lor(negate_at(t, l), flc_implication());
    }
    return l;
  }
  FlcPtr flc_disjunction() {
    FlcPtr l = flc_conjunction();
    if (at(Tok::Or)) {
      take();
      return flc::lor(l, flc_disjunction());
    }
    return l;
  }
  FlcPtr flc_conjunction() {
    FlcPtr l = flc_chop();
    if (at(Tok::And)) {
      take();
      return flc::land(l, flc_conjunction());
    }
    return l;
  }
  FlcPtr flc_chop() {
    FlcPtr l = flc_prefix();
    if (at(Tok::Semi)) {
      take();
      return flc::chop(l, flc_chop());
    }
    return l;
  }
  FlcPtr flc_prefix() {
    if (at(Tok::LAngle) || at(Tok::LBrack)) {
      bool diamond = take().kind == Tok::LAngle;
      Token a = ident("atomic game");
      if (reserved_flc(a.text)) fail(a, "keyword cannot be an atomic game");
      record(a, NameKind::AtomicGame);
      expect(diamond ? Tok::RAngle : Tok::RBrack, diamond ? "'>'" : "']'");
      FlcPtr body = flc_prefix();
      return diamond ? flc::dia(a.text, body) : flc::box(a.text, body);
    }
    if ((at(Tok::Minus) || at(Tok::Not)) && peek(1).kind != Tok::Ident) {
      Token t = take();
      return negate_at(t, flc_prefix());
    }
    if (at_kw("mu") || at_kw("nu")) {
      bool is_mu = take().text == "mu";
      Token x = ident("bound variable");
      if (reserved_flc(x.text)) fail(x, "keyword cannot be bound");
      record(x, NameKind::Variable);
      expect(Tok::Dot, "'.'");
      bound_.push_back(x.text);
      FlcPtr body = flc_formula();
      bound_.pop_back();
      return is_mu ? flc::mu(x.text, body) : flc::nu(x.text, body);
    }
    return flc_postfix();
  }
  FlcPtr flc_postfix() {
    FlcPtr f = flc_primary();
    while (at(Tok::Caret)) {
      Token caret = take();
      if (!at(Tok::StarSym)) fail(caret, "expected '*' after '^'");
      take();
      f = flc::star(f);
    }
    return f;
  }
  FlcPtr flc_primary() {
    if (at(Tok::Minus) || at(Tok::Not)) {
      take();
      Token t = ident("proposition");
      if (reserved_flc(t.text)) {
        if (t.text == "true") return flc::ff();
        if (t.text == "false") return flc::tt();
        fail(t, "keyword '" + t.text + "' cannot be negated");
      }
      if (is_variable(t.text)) fail(t, "negation may not apply to variable '" + t.text + "'");
      record(t, NameKind::Proposition);
      return flc::neg_prop(t.text);
    }
    if (at(Tok::LParen)) {
      take();
      FlcPtr f = flc_formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (at(Tok::Top)) return take(), flc::tt();
    if (at(Tok::Bot)) return take(), flc::ff();
    if (at(Tok::Ident)) {
      if (at_kw("id")) return take(), flc::id();
      if (at_kw("true")) return take(), flc::tt();
      if (at_kw("false")) return take(), flc::ff();
      if (reserved_flc(peek().text)) fail(peek(), "keyword '" + peek().text + "' cannot start a formula here");
      Token t = take();
      if (is_variable(t.text)) {
        record(t, NameKind::Variable);
        return flc::var(t.text);
      }
      record(t, NameKind::Proposition);
      return flc::prop(t.text);
    }
    fail(peek(), at(Tok::End) ? "unexpected end of input, expected a formula" : "expected a formula, found '" + peek().text + "'");
  }
};

}  // namespace

FormPtr parse_game_formula(std::string_view text, const ParseOptions& opts) {
  return Parser(text, opts).formula_top();
}

GamePtr parse_game(std::string_view text, const ParseOptions& opts) { return Parser(text, opts).game_top(); }

FlcPtr parse_flc(std::string_view text, const ParseOptions& opts) { return Parser(text, opts).flc_top(); }

}  // namespace glwb
