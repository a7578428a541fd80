// Semantic soundness of every schema on random finite structures, plus
// negative controls showing that each side condition is needed.

#include <functional>
#include <set>
#include <string>

#include "doctest.h"
#include "glwb/proof.hpp"
#include "glwb/soundness.hpp"

using namespace glwb;

namespace {

void run_matching(const std::function<bool(const SoundnessCase&)>& pick_case) {
  const auto cases = soundness_cases();
  int ran = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    if (!pick_case(cases[i])) continue;
    ++ran;
    SoundnessTally t = run_soundness_case(i);
    INFO(t.name << ": " << t.instances << " instances, " << t.refused << " refused, " << t.nonvacuous
                << " with premises holding, " << t.failures << " failures");
    CHECK(t.instances == 1000);
    CHECK_MESSAGE(t.passed(), std::string(t.witness));
  }
  CHECK(ran > 0);
}

bool in(const SoundnessCase& c, std::initializer_list<SchemaId> ids) {
  for (SchemaId id : ids)
    if (c.id == id) return true;
  return false;
}

bool sound(const SoundnessCase& c) { return c.expect == SoundnessExpect::Sound; }

}  // namespace

TEST_CASE("every schema has a soundness case") {
  std::set<SchemaId> covered;
  for (const auto& c : soundness_cases())
    if (sound(c)) covered.insert(c.id);
  for (SchemaId id : all_schemas()) CHECK_MESSAGE(covered.count(id), schema_name(id));
}

TEST_CASE("propositional tautologies are valid") {
  run_matching([](const SoundnessCase& c) { return c.id == SchemaId::Taut; });
}

TEST_CASE("game-logic axioms and rules hold in the sabotage semantics") {
  using S = SchemaId;
  run_matching([](const SoundnessCase& c) {
    return in(c, {S::GNot, S::GTest, S::GChoice, S::GComp, S::GStarFp, S::GMon, S::GStarMu, S::MP});
  });
}

TEST_CASE("recursion schemas hold for right-linear games") {
  run_matching([](const SoundnessCase& c) { return in(c, {SchemaId::GFp, SchemaId::GAlpha, SchemaId::GMuRule}); });
}

TEST_CASE("modal schemas hold in the modal semantics") {
  using S = SchemaId;
  run_matching([](const SoundnessCase& c) { return in(c, {S::fp, S::alpha, S::MuRule, S::Mon_a}); });
}

// BoxAnd also has a control: it fails on neighbourhood structures.
TEST_CASE("normality axioms hold exactly on relational structures") {
  run_matching([](const SoundnessCase& c) { return in(c, {SchemaId::BoxAnd, SchemaId::K, SchemaId::BoxTop}); });
}

TEST_CASE("sabotage axioms hold in the sabotage semantics") {
  using S = SchemaId;
  run_matching([](const SoundnessCase& c) {
    return sound(c) && in(c, {S::SAsab, S::SDsab, S::SSabP, S::SSabRem, S::SSabNotYet, S::SBranch, S::AFrak});
  });
}

TEST_CASE("dropping a side condition admits invalid instances") {
  run_matching([](const SoundnessCase& c) { return !sound(c) && c.id != SchemaId::BoxAnd; });
}

TEST_CASE("soundness cases are reproducible by seed") {
  SoundnessConfig c;
  c.instances = 50;
  c.structures = 5;
  c.seed = 9;
  const auto a = run_soundness_case(0, c), b = run_soundness_case(0, c);
  CHECK(a.instances == b.instances);
  CHECK(a.refused == b.refused);
  CHECK(a.nonvacuous == b.nonvacuous);
  CHECK(a.failures == b.failures);
}
