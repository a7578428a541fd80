#include "glwb/ast_json.hpp"

#include <array>
#include <string>

#include "glwb/error.hpp"

namespace glwb {
namespace {

using nlohmann::json;

constexpr std::array kFormKinds = {"True", "False", "Prop", "NegProp", "Neg", "Or", "And", "Diamond"};
constexpr std::array kGameKinds = {"Atom", "DualAtom", "Var",  "DualVar", "Test", "DTest", "Choice", "DChoice", "Seq",
                                   "Star", "DStar",    "Dual", "Rec",     "CoRec", "TrapA", "TrapD", "System"};
constexpr std::array kFlcKinds = {"Id", "True", "False", "Var", "Prop", "NegProp", "Or",
                                  "And", "Dia", "Box", "Mu", "Nu", "Chop", "StarFix"};

template <class K, std::size_t N>
K kind_of(const json& j, const std::array<const char*, N>& names, const char* what) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw Error(ErrorKind::Format, std::string(what) + " node needs a string kind");
  const std::string k = j["kind"];
  for (std::size_t i = 0; i < N; ++i)
    if (k == names[i]) return static_cast<K>(i);
  throw Error(ErrorKind::Format, "unknown " + std::string(what) + " kind " + k);
}

std::string name_of(const json& j) {
  if (!j.contains("name")) return {};
  if (!j["name"].is_string()) throw Error(ErrorKind::Format, "name must be a string");
  return j["name"];
}

const json& field(const json& j, const char* f) {
  if (!j.contains(f)) throw Error(ErrorKind::Format, std::string("missing field ") + f);
  return j[f];
}

}  // namespace

json to_json(const FormPtr& f) {
  json j{{"kind", kFormKinds[static_cast<std::size_t>(f->kind)]}};
  if (!f->name.empty()) j["name"] = f->name;
  if (f->left) j["left"] = to_json(f->left);
  if (f->right) j["right"] = to_json(f->right);
  if (f->game) j["game"] = to_json(f->game);
  return j;
}

json to_json(const GamePtr& g) {
  json j{{"kind", kGameKinds[static_cast<std::size_t>(g->kind)]}};
  if (!g->name.empty()) j["name"] = g->name;
  if (g->form) j["form"] = to_json(g->form);
  if (g->left) j["left"] = to_json(g->left);
  if (g->right) j["right"] = to_json(g->right);
  if (g->system) {
    json b = json::array();
    for (const auto& [x, body] : g->system->bindings) b.push_back({{"var", x}, {"body", to_json(body)}});
    j["system"] = {{"fix", g->system->kind == FixKind::Mu ? "mu" : "nu"}, {"bindings", b}};
    j["index"] = g->index;
  }
  return j;
}

json to_json(const FlcPtr& f) {
  json j{{"kind", kFlcKinds[static_cast<std::size_t>(f->kind)]}};
  if (!f->name.empty()) j["name"] = f->name;
  if (f->left) j["left"] = to_json(f->left);
  if (f->right) j["right"] = to_json(f->right);
  return j;
}

FormPtr form_from_json(const json& j) {
  Form n{kind_of<FormKind>(j, kFormKinds, "formula"), name_of(j), nullptr, nullptr, nullptr};
  switch (n.kind) {
    case FormKind::True:
    case FormKind::False: break;
    case FormKind::Prop:
    case FormKind::NegProp:
      if (!valid_identifier(n.name)) throw Error(ErrorKind::Format, "bad proposition name");
      break;
    case FormKind::Neg: n.left = form_from_json(field(j, "left")); break;
    case FormKind::Or:
    case FormKind::And:
      n.left = form_from_json(field(j, "left"));
      n.right = form_from_json(field(j, "right"));
      break;
    case FormKind::Diamond:
      n.game = game_from_json(field(j, "game"));
      n.left = form_from_json(field(j, "left"));
      break;
  }
  return std::make_shared<const Form>(std::move(n));
}

GamePtr game_from_json(const json& j) {
  Game n{kind_of<GameKind>(j, kGameKinds, "game"), name_of(j), nullptr, nullptr, nullptr, nullptr, 0};
  switch (n.kind) {
    case GameKind::Atom:
    case GameKind::DualAtom:
    case GameKind::Var:
    case GameKind::DualVar:
    case GameKind::TrapA:
    case GameKind::TrapD:
      if (!valid_identifier(n.name)) throw Error(ErrorKind::Format, "bad game name");
      break;
    case GameKind::Test:
    case GameKind::DTest: n.form = form_from_json(field(j, "form")); break;
    case GameKind::Choice:
    case GameKind::DChoice:
    case GameKind::Seq:
      n.left = game_from_json(field(j, "left"));
      n.right = game_from_json(field(j, "right"));
      break;
    case GameKind::Star:
    case GameKind::DStar:
    case GameKind::Dual: n.left = game_from_json(field(j, "left")); break;
    case GameKind::Rec:
    case GameKind::CoRec:
      if (!valid_identifier(n.name)) throw Error(ErrorKind::Format, "bad binder name");
      n.left = game_from_json(field(j, "left"));
      break;
    case GameKind::System: {
      const json& s = field(j, "system");
      auto sys = std::make_shared<RecSystem>();
      const std::string fix = field(s, "fix").get<std::string>();
      if (fix != "mu" && fix != "nu") throw Error(ErrorKind::Format, "fix must be mu or nu");
      sys->kind = fix == "mu" ? FixKind::Mu : FixKind::Nu;
      for (const auto& b : field(s, "bindings")) sys->bindings.emplace_back(field(b, "var").get<std::string>(), game_from_json(field(b, "body")));
      n.index = field(j, "index").get<std::size_t>();
      if (n.index >= sys->bindings.size()) throw Error(ErrorKind::Format, "component index out of range");
      n.system = sys;
      break;
    }
  }
  return std::make_shared<const Game>(std::move(n));
}

FlcPtr flc_from_json(const json& j) {
  Flc n{kind_of<FlcKind>(j, kFlcKinds, "FLC"), name_of(j), nullptr, nullptr};
  switch (n.kind) {
    case FlcKind::Id:
    case FlcKind::True:
    case FlcKind::False: break;
    case FlcKind::Var:
    case FlcKind::Prop:
    case FlcKind::NegProp:
      if (!valid_identifier(n.name)) throw Error(ErrorKind::Format, "bad name");
      break;
    case FlcKind::Or:
    case FlcKind::And:
    case FlcKind::Chop:
      n.left = flc_from_json(field(j, "left"));
      n.right = flc_from_json(field(j, "right"));
      break;
    case FlcKind::Dia:
    case FlcKind::Box:
    case FlcKind::Mu:
    case FlcKind::Nu:
      if (!valid_identifier(n.name)) throw Error(ErrorKind::Format, "bad name");
      n.left = flc_from_json(field(j, "left"));
      break;
    case FlcKind::StarFix: n.left = flc_from_json(field(j, "left")); break;
  }
  return std::make_shared<const Flc>(std::move(n));
}

}  // namespace glwb
