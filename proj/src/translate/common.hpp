#pragma once

// Shared plumbing of the translations: timing, reports, name checks, and a
// memoized substitution for DAG-shaped outputs.

#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <vector>
#include <string>
#include <unordered_map>

#include "glwb/ast.hpp"
#include "glwb/translate.hpp"

namespace glwb::detail {

class ReportScope {
 public:
  ReportScope(TranslationReport* r, const char* name, std::uint64_t input_size);
  void finish(std::uint64_t output_size);
  void fixpoint(std::uint64_t in, std::uint64_t out);
  TranslationReport* get() const { return r_; }

 private:
  TranslationReport* r_;
  std::chrono::steady_clock::time_point start_;
};

// Throws ReservedNameClash if any name is one of `exact` or starts with one of `prefixes`.
void reject_names(const std::set<std::string>& names, const std::vector<std::string>& exact,
                  const std::vector<std::string>& prefixes, const char* who);

// Replaces free Var nodes for which `repl` returns non-null. No capture check:
// callers guarantee replacements only mention names that are never bound in g.
// Results are memoized per node, so shared subtrees stay shared.
class DagSubst {
 public:
  using Fn = std::function<GamePtr(const std::string&)>;
  explicit DagSubst(Fn repl) : repl_(std::move(repl)) {}
  GamePtr game(const GamePtr& g);
  FormPtr form(const FormPtr& f);

 private:
  Fn repl_;
  std::unordered_map<const Game*, GamePtr> gmemo_;
  std::unordered_map<const Form*, FormPtr> fmemo_;
  std::map<const RecSystem*, SystemPtr> smemo_;
};

// Free variables of a game DAG, memoized per node.
class FreeVars {
 public:
  const std::set<std::string>& game(const GamePtr& g);

 private:
  std::unordered_map<const Game*, std::set<std::string>> memo_;
  std::unordered_map<const Form*, std::set<std::string>> fmemo_;
  const std::set<std::string>& form(const FormPtr& f);
};

}  // namespace glwb::detail
