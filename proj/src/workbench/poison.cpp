#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "glwb/error.hpp"
#include "glwb/workbench.hpp"

namespace glwb {

namespace {

constexpr int kOracleCap = 6;

std::string atom_name(int vertex) { return "a_" + std::to_string(vertex + 1); }

void check_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  for (auto [x, y] : edges)
    if (x < 0 || y < 0 || x >= n || y >= n)
      throw Error(ErrorKind::Format, "edge " + std::to_string(x) + " " + std::to_string(y) + " leaves 0.." +
                                         std::to_string(n - 1));
}

std::vector<std::uint32_t> successors(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::uint32_t> succ(n, 0);
  for (auto [x, y] : edges) succ[x] |= 1u << y;
  return succ;
}

// Demon positions (v, P) indexed by v * 2^n + P.
struct Arena {
  int n;
  std::vector<char> win;
  bool at(int v, std::uint32_t poisoned) const { return win[(static_cast<std::size_t>(v) << n) | poisoned]; }
};

}  // namespace

Digraph parse_graph(std::string_view text) {
  Digraph g;
  bool have_n = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    auto fail = [&](const std::string& m) {
      throw Error(ErrorKind::Format, "line " + std::to_string(lineno) + ": " + m);
    };
    std::string rest;
    if (word == "vertices") {
      if (have_n) fail("vertices given twice");
      if (!(ls >> g.n) || g.n < 0 || (ls >> rest)) fail("expected `vertices N`");
      have_n = true;
    } else if (word == "edge") {
      if (!have_n) fail("edge before vertices");
      int x, y;
      if (!(ls >> x >> y) || (ls >> rest)) fail("expected `edge i j`");
      if (x < 0 || y < 0 || x >= g.n || y >= g.n) fail("vertex out of range");
      g.edges.emplace_back(x, y);
    } else {
      fail("unknown directive " + word);
    }
  }
  if (!have_n) throw Error(ErrorKind::Format, "missing `vertices N`");
  return g;
}

std::string write_graph(const Digraph& g) {
  std::string out = "vertices " + std::to_string(g.n) + "\n";
  for (auto [x, y] : g.edges) out += "edge " + std::to_string(x) + " " + std::to_string(y) + "\n";
  return out;
}

PoisonInstance poison_build(const Digraph& g, int cap) {
  if (g.n > cap) throw Error(ErrorKind::CapExceeded, std::to_string(g.n) + " vertices exceed the cap " + std::to_string(cap));
  if (g.n < 1) throw Error(ErrorKind::Format, "a poison game needs at least one vertex");
  check_edges(g.n, g.edges);
  FiniteStructure s(g.n, cap);
  std::vector<GamePtr> angel, demon;
  for (int i = 0; i < g.n; ++i) {
    std::vector<std::pair<int, int>> into;
    for (auto [x, y] : g.edges)
      if (y == i) into.emplace_back(x, y);
    s.set_relation(atom_name(i), into);
    angel.push_back(gl::atom(atom_name(i)));
    demon.push_back(gl::seq(gl::atom(atom_name(i)), gl::trap_a(atom_name(i))));
  }
  GamePtr round = gl::seq(gl::dual(gl::choice_all(demon)), gl::choice_all(angel));
  return {gl::dia(gl::dstar(round), gl::tt()), s};
}

StateSet poison_oracle(const Digraph& g) { return poison_oracle(g.n, g.edges, g.edges); }

StateSet poison_oracle(int n, const std::vector<std::pair<int, int>>& angel_edges,
                       const std::vector<std::pair<int, int>>& demon_edges) {
  if (n > kOracleCap) throw Error(ErrorKind::CapExceeded, "the poison oracle handles at most 6 vertices");
  check_edges(n, angel_edges);
  check_edges(n, demon_edges);
  const auto sa = successors(n, angel_edges), sd = successors(n, demon_edges);
  const std::uint32_t all = (1u << n) - 1;
  Arena w{n, std::vector<char>(static_cast<std::size_t>(n) << n, 1)};
  // Angel, to move at w with poisoned set P, needs an unpoisoned successor
  // from which the Demon position is still winning.
  auto angel_ok = [&](int v, std::uint32_t p) {
    for (std::uint32_t t = sa[v] & ~p; t; t &= t - 1)
      if (w.at(__builtin_ctz(t), p)) return true;
    return false;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      for (std::uint32_t p = 0; p <= all; ++p) {
        if (!w.at(v, p)) continue;
        bool ok = true;
        // Skipping a poisoned vertex leaves the token at v.
        if (p && !angel_ok(v, p)) ok = false;
        for (std::uint32_t t = sd[v] & ~p; ok && t; t &= t - 1) {
          const int u = __builtin_ctz(t);
          ok = angel_ok(u, p | (1u << u));
        }
        if (!ok) {
          w.win[(static_cast<std::size_t>(v) << n) | p] = 0;
          changed = true;
        }
      }
    }
  }
  StateSet out;
  for (int v = 0; v < n; ++v)
    if (w.at(v, 0)) out = out | StateSet::single(v);
  return out;
}

StateSet classical_poison_oracle(const Digraph& g) {
  const int n = g.n;
  if (n > kOracleCap) throw Error(ErrorKind::CapExceeded, "the poison oracle handles at most 6 vertices");
  check_edges(n, g.edges);
  const auto succ = successors(n, g.edges);
  const std::uint32_t all = (1u << n) - 1;
  Arena w{n, std::vector<char>(static_cast<std::size_t>(n) << n, 1)};
  for (bool changed = true; changed;) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      for (std::uint32_t p = 0; p <= all; ++p) {
        if (!w.at(v, p)) continue;
        bool ok = true;  // a stuck Demon loses
        for (std::uint32_t t = succ[v]; ok && t; t &= t - 1) {
          const int u = __builtin_ctz(t);
          const std::uint32_t q = p | (1u << u);
          bool angel = false;
          for (std::uint32_t s = succ[u] & ~q; !angel && s; s &= s - 1) angel = w.at(__builtin_ctz(s), q);
          ok = angel;
        }
        if (!ok) {
          w.win[(static_cast<std::size_t>(v) << n) | p] = 0;
          changed = true;
        }
      }
    }
  }
  StateSet out;
  for (int v = 0; v < n; ++v)
    if (w.at(v, 0)) out = out | StateSet::single(v);
  return out;
}

}  // namespace glwb
