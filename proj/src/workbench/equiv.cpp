#include <string>

#include "glwb/error.hpp"
#include "glwb/workbench.hpp"

namespace glwb {

StateSet truth_set(const FormPtr& f, Logic logic, const FiniteStructure& s) {
  switch (logic) {
    case Logic::RGL: return eval_rgl_formula(f, s);
    case Logic::GLs: return gls_truth(f, s);
    case Logic::FLC: break;
  }
  throw Error(ErrorKind::Usage, "a game formula has no FLC truth set");
}

StateSet truth_set(const FlcPtr& f, const FiniteStructure& s) { return flc_truth(f, s); }

EquivReport equiv_check(const std::function<StateSet(const FiniteStructure&)>& lhs,
                        const std::function<StateSet(const FiniteStructure&)>& rhs,
                        const std::vector<FiniteStructure>& structures) {
  EquivReport r;
  for (std::size_t i = 0; i < structures.size(); ++i) {
    const FiniteStructure& s = structures[i];
    const StateSet a = lhs(s), b = rhs(s);
    ++r.structures_checked;
    if (a == b) continue;
    r.equivalent = false;
    r.counterexample_structure = i;
    r.counterexample_state = __builtin_ctz(a.bits ^ b.bits);
    r.detail = "structure " + std::to_string(i) + ", state " + std::to_string(r.counterexample_state) +
               ": left " + to_string(a, s.states()) + ", right " + to_string(b, s.states());
    return r;
  }
  return r;
}

EquivReport equiv_check(const FormPtr& a, Logic la, const FormPtr& b, Logic lb,
                        const std::vector<FiniteStructure>& structures) {
  return equiv_check([&](const FiniteStructure& s) { return truth_set(a, la, s); },
                     [&](const FiniteStructure& s) { return truth_set(b, lb, s); }, structures);
}

}  // namespace glwb
