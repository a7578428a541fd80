#include <string>
#include <utility>
#include <vector>

#include "glwb/error.hpp"
#include "glwb/semantics.hpp"

namespace glwb {

std::string to_string(StateSet s, int n) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < n; ++i) {
    if (!s.contains(i)) continue;
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

namespace {

void check_width(int n, int cap) {
  if (n < 0 || n > cap || n > kMaxStates)
    throw Error(ErrorKind::CapExceeded, std::to_string(n) + " states exceeds the cap of " + std::to_string(cap));
}

void same_width(const Effectivity& a, const Effectivity& b) {
  if (a.states() != b.states())
    throw Error(ErrorKind::WidthMismatch,
                std::to_string(a.states()) + " vs " + std::to_string(b.states()) + " states");
}

}  // namespace

bool is_monotone(int n, const std::vector<std::uint32_t>& table) {
  const std::uint32_t size = 1u << n;
  if (table.size() != size) return false;
  for (std::uint32_t a = 0; a < size; ++a)
    for (int i = 0; i < n; ++i) {
      std::uint32_t b = a | (1u << i);
      if (b != a && (table[a] & ~table[b])) return false;
    }
  return true;
}

Effectivity::Effectivity(int n, std::vector<std::uint32_t> table, int cap) : n_(n), table_(std::move(table)) {
  check_width(n, cap);
  if (table_.size() != (std::size_t{1} << n))
    throw Error(ErrorKind::WidthMismatch, "table has " + std::to_string(table_.size()) + " entries");
  const std::uint32_t full = StateSet::full(n).bits;
  for (auto v : table_)
    if (v & ~full) throw Error(ErrorKind::WidthMismatch, "table entry outside the state set");
  if (!is_monotone(n, table_)) throw Error(ErrorKind::NonMonotone, "effectivity table is not monotone");
}

Effectivity Effectivity::from_function(int n, const std::function<StateSet(StateSet)>& f, int cap) {
  check_width(n, cap);
  std::vector<std::uint32_t> t(std::size_t{1} << n);
  for (std::uint32_t a = 0; a < t.size(); ++a) t[a] = f(StateSet{a}).bits;
  return Effectivity(n, std::move(t), cap);
}

Effectivity Effectivity::bottom(int n) { return from_function(n, [](StateSet) { return StateSet{}; }, kMaxStates); }
Effectivity Effectivity::top(int n) {
  return from_function(n, [n](StateSet) { return StateSet::full(n); }, kMaxStates);
}
Effectivity Effectivity::identity(int n) { return from_function(n, [](StateSet a) { return a; }, kMaxStates); }
Effectivity Effectivity::constant(int n, StateSet c) {
  return from_function(n, [c](StateSet) { return c; }, kMaxStates);
}
Effectivity Effectivity::test(int n, StateSet c) {
  return from_function(n, [c](StateSet a) { return a & c; }, kMaxStates);
}

bool Effectivity::leq(const Effectivity& o) const {
  same_width(*this, o);
  for (std::size_t i = 0; i < table_.size(); ++i)
    if (table_[i] & ~o.table_[i]) return false;
  return true;
}

Effectivity eff_dual(const Effectivity& w) {
  const int n = w.states();
  const StateSet full = StateSet::full(n);
  return Effectivity::from_function(n, [&](StateSet a) { return full.minus(w(full.minus(a))); }, kMaxStates);
}

Effectivity eff_compose(const Effectivity& w, const Effectivity& u) {
  same_width(w, u);
  return Effectivity::from_function(w.states(), [&](StateSet a) { return w(u(a)); }, kMaxStates);
}

Effectivity eff_test(int n, StateSet a) { return Effectivity::test(n, a); }
Effectivity eff_const(int n, StateSet a) { return Effectivity::constant(n, a); }

Effectivity eff_union(const Effectivity& w, const Effectivity& u) {
  same_width(w, u);
  return Effectivity::from_function(w.states(), [&](StateSet a) { return w(a) | u(a); }, kMaxStates);
}

Effectivity eff_intersect(const Effectivity& w, const Effectivity& u) {
  same_width(w, u);
  return Effectivity::from_function(w.states(), [&](StateSet a) { return w(a) & u(a); }, kMaxStates);
}

StateSet lfp_set(int n, const std::function<StateSet(StateSet)>& f) {
  StateSet b{};
  for (int i = 0; i <= n + 1; ++i) {
    StateSet nb = f(b);
    if (!b.subset_of(nb)) throw Error(ErrorKind::NonMonotone, "least fixpoint iteration shrank");
    if (nb == b) return b;
    b = nb;
  }
  throw Error(ErrorKind::NonMonotone, "least fixpoint iteration did not stabilize");
}

StateSet gfp_set(int n, const std::function<StateSet(StateSet)>& f) {
  StateSet b = StateSet::full(n);
  for (int i = 0; i <= n + 1; ++i) {
    StateSet nb = f(b);
    if (!nb.subset_of(b)) throw Error(ErrorKind::NonMonotone, "greatest fixpoint iteration grew");
    if (nb == b) return b;
    b = nb;
  }
  throw Error(ErrorKind::NonMonotone, "greatest fixpoint iteration did not stabilize");
}

namespace {

Effectivity iterate_eff(int n, Effectivity u, const std::function<Effectivity(const Effectivity&)>& F, bool up) {
  const std::uint64_t bound = static_cast<std::uint64_t>(n) * (std::uint64_t{1} << n) + 1;
  for (std::uint64_t i = 0; i <= bound; ++i) {
    Effectivity nu = F(u);
    bool ordered = up ? u.leq(nu) : nu.leq(u);
    if (!ordered) throw Error(ErrorKind::NonMonotone, up ? "lfp_eff iteration shrank" : "gfp_eff iteration grew");
    if (nu == u) return u;
    u = std::move(nu);
  }
  throw Error(ErrorKind::NonMonotone, "effectivity iteration did not stabilize");
}

}  // namespace

Effectivity lfp_eff(int n, const std::function<Effectivity(const Effectivity&)>& F) {
  return iterate_eff(n, Effectivity::bottom(n), F, true);
}

Effectivity gfp_eff(int n, const std::function<Effectivity(const Effectivity&)>& F) {
  return iterate_eff(n, Effectivity::top(n), F, false);
}

}  // namespace glwb
