#pragma once

// Shared machinery of the RGL and FLC evaluators: variable values and memo keys.

#include <cstdint>
#include <cstring>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "glwb/error.hpp"
#include "glwb/semantics.hpp"

namespace glwb::detail {

// A variable is bound either to a constant set (during pointwise iteration,
// where only the value at the current argument matters) or to a full table.
struct Value {
  std::uint32_t bits = 0;
  std::shared_ptr<const std::vector<std::uint32_t>> table;
  std::uint64_t id = 0;  // unique per table within one evaluator

  std::uint32_t at(std::uint32_t a) const { return table ? (*table)[a] : bits; }
  std::uint64_t key() const { return table ? (id | (std::uint64_t{1} << 63)) : bits; }
};

class Env {
 public:
  void push(const std::string& x, Value v) { scope_.emplace_back(x, std::move(v)); }
  void pop(std::size_t k = 1) { scope_.resize(scope_.size() - k); }
  const Value& lookup(const std::string& x) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == x) return it->second;
    throw Error(ErrorKind::UnboundVariable, x);
  }

 private:
  std::vector<std::pair<std::string, Value>> scope_;
};

// Byte-string memo key.
class Key {
 public:
  template <class T>
  Key& add(const T& v) {
    char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    s_.append(buf, sizeof(T));
    return *this;
  }
  std::string str() const { return s_; }

 private:
  std::string s_;
};

inline void check_valuation_width(const Valuation& I, int n) {
  for (const auto& [x, w] : I)
    if (w.states() != n)
      throw Error(ErrorKind::WidthMismatch, "valuation of " + x + " has " + std::to_string(w.states()) + " states");
}

}  // namespace glwb::detail
