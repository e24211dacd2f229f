#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "effects/error.hpp"
#include "effects/lexicon.hpp"

namespace effects {

using EntityId = std::uint32_t;

struct Model {
  std::vector<std::string> entities;
  std::size_t asgn_len = 1;
  std::map<std::string, std::set<EntityId>> pred1;
  std::map<std::string, std::set<std::pair<EntityId, EntityId>>> pred2;  // (subject, object)
  std::map<std::string, EntityId> constants;

  std::size_t size() const { return entities.size(); }

  std::optional<EntityId> find_entity(const std::string& id) const {
    for (std::size_t i = 0; i < entities.size(); ++i)
      if (entities[i] == id) return static_cast<EntityId>(i);
    return std::nullopt;
  }

  // A constant name or a bare entity id.
  EntityId resolve(const std::string& name) const {
    if (auto it = constants.find(name); it != constants.end()) return it->second;
    if (auto e = find_entity(name)) return *e;
    throw validation_error("model has no constant or entity '" + name + "'");
  }

  const std::set<EntityId>& predicate(const std::string& name) const {
    auto it = pred1.find(name);
    if (it == pred1.end()) throw validation_error("model has no one-place predicate '" + name + "'");
    return it->second;
  }

  const std::set<std::pair<EntityId, EntityId>>& relation(const std::string& name) const {
    auto it = pred2.find(name);
    if (it == pred2.end()) throw validation_error("model has no two-place predicate '" + name + "'");
    return it->second;
  }

  // Entities named a, b, c, ... with no predicates.
  static Model synthetic(std::size_t n, std::size_t asgn_len = 1) {
    Model m;
    for (std::size_t i = 0; i < n; ++i) m.entities.push_back(std::string(1, static_cast<char>('a' + i)));
    m.asgn_len = asgn_len;
    return m;
  }
};

inline Model model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw validation_error("model must be a JSON object");
  for (const auto& [k, _] : j.items())
    if (k != "entities" && k != "asgn_len" && k != "pred1" && k != "pred2" && k != "constants")
      throw validation_error("unknown model field '" + k + "'");
  Model m;
  if (!j.contains("entities") || !j["entities"].is_array() || j["entities"].empty())
    throw validation_error("model needs a non-empty 'entities' array");
  std::set<std::string> seen;
  for (const auto& e : j["entities"]) {
    if (!e.is_string()) throw validation_error("entity ids must be strings");
    auto id = e.get<std::string>();
    if (!seen.insert(id).second) throw validation_error("duplicate entity id '" + id + "'");
    m.entities.push_back(id);
  }
  if (j.contains("asgn_len")) {
    if (!j["asgn_len"].is_number_integer() || j["asgn_len"].get<long long>() < 1)
      throw validation_error("asgn_len must be an integer >= 1");
    m.asgn_len = j["asgn_len"].get<std::size_t>();
  }
  auto member = [&](const nlohmann::json& x, const std::string& where) {
    if (!x.is_string()) throw validation_error(where + ": members must be entity ids");
    auto id = m.find_entity(x.get<std::string>());
    if (!id) throw validation_error(where + ": '" + x.get<std::string>() + "' is not an entity");
    return *id;
  };
  if (j.contains("pred1")) {
    for (const auto& [name, ext] : j["pred1"].items()) {
      if (!ext.is_array()) throw validation_error("pred1 '" + name + "' must be an array");
      auto& s = m.pred1[name];
      for (const auto& x : ext) s.insert(member(x, "pred1 '" + name + "'"));
    }
  }
  if (j.contains("pred2")) {
    for (const auto& [name, ext] : j["pred2"].items()) {
      if (!ext.is_array()) throw validation_error("pred2 '" + name + "' must be an array");
      auto& s = m.pred2[name];
      for (const auto& p : ext) {
        if (!p.is_array() || p.size() != 2)
          throw validation_error("pred2 '" + name + "': members must be [subject, object] pairs");
        s.insert({member(p[0], "pred2 '" + name + "'"), member(p[1], "pred2 '" + name + "'")});
      }
    }
  }
  if (j.contains("constants")) {
    for (const auto& [name, e] : j["constants"].items()) m.constants[name] = member(e, "constant '" + name + "'");
  }
  return m;
}

inline nlohmann::json model_to_json(const Model& m) {
  nlohmann::json j;
  j["entities"] = m.entities;
  j["asgn_len"] = m.asgn_len;
  j["pred1"] = nlohmann::json::object();
  for (const auto& [n, s] : m.pred1) {
    auto& a = j["pred1"][n] = nlohmann::json::array();
    for (auto x : s) a.push_back(m.entities[x]);
  }
  j["pred2"] = nlohmann::json::object();
  for (const auto& [n, s] : m.pred2) {
    auto& a = j["pred2"][n] = nlohmann::json::array();
    for (auto [x, y] : s) a.push_back({m.entities[x], m.entities[y]});
  }
  j["constants"] = nlohmann::json::object();
  for (const auto& [n, x] : m.constants) j["constants"][n] = m.entities[x];
  return j;
}

inline Model load_model(const std::string& path) { return model_from_json(read_json_file(path)); }

}  // namespace effects
