#pragma once

#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "effects/error.hpp"
#include "effects/types.hpp"

namespace effects {

struct DenSpec;
using DenArg = std::variant<std::string, std::size_t, std::shared_ptr<const DenSpec>>;

struct DenSpec {
  std::string schema;
  std::vector<DenArg> args;
};

struct Entry {
  Ty ty;
  DenSpec den;
};

struct Lexicon {
  std::map<std::string, std::vector<Entry>> words;

  const std::vector<Entry>* find(const std::string& w) const {
    auto it = words.find(w);
    return it == words.end() ? nullptr : &it->second;
  }
  void add(const std::string& w, Entry e) { words[w].push_back(std::move(e)); }
};

// Schema signatures: arity bounds and the admissible type shapes.
namespace schema {

enum class ArgKind { Name, Index, NameOrSpec };

struct Signature {
  std::string name;
  std::vector<ArgKind> required;
  std::vector<ArgKind> optional;
  // Accepts the entry type given the argument count.
  bool (*accepts)(const Ty&, std::size_t nargs);
  const char* shape;
};

namespace shapes {
inline bool eq(const Ty& t, const char* s) { return t == parse_type(s); }
inline bool is_e(const Ty& t, std::size_t) { return eq(t, "e"); }
inline bool is_pred1(const Ty& t, std::size_t) { return eq(t, "e -> t"); }
inline bool is_pred2(const Ty& t, std::size_t) { return eq(t, "e -> e -> t"); }
inline bool is_func(const Ty& t, std::size_t) { return eq(t, "e -> e"); }
inline bool is_pro_vf(const Ty& t, std::size_t) { return eq(t, "R[e] e"); }
inline bool is_pro(const Ty& t, std::size_t) { return eq(t, "R[g] e"); }
inline bool is_wh(const Ty& t, std::size_t) { return eq(t, "S e"); }
inline bool is_indef(const Ty& t, std::size_t n) {
  return n == 0 ? eq(t, "(e -> t) -> S e") : eq(t, "S e");
}
inline bool is_def(const Ty& t, std::size_t n) {
  return n == 0 ? eq(t, "(e -> t) -> M e") : eq(t, "M e");
}
inline bool is_quant(const Ty& t, std::size_t) { return eq(t, "C[t] e"); }
inline bool is_focus(const Ty& t, std::size_t) { return eq(t, "F e"); }
inline bool is_topic(const Ty& t, std::size_t) { return eq(t, "T[g] e"); }
inline bool is_dyn_e(const Ty& t, std::size_t) { return eq(t, "D[g] e"); }
inline bool is_push(const Ty& t, std::size_t) { return eq(t, "e -> W[e] e"); }
inline bool is_push_dyn(const Ty& t, std::size_t) { return eq(t, "e -> D[g] e"); }
inline bool is_exclo(const Ty& t, std::size_t) { return eq(t, "S t -> t"); }
inline bool is_only(const Ty& t, std::size_t) { return eq(t, "F t -> t"); }
inline bool is_accom(const Ty& t, std::size_t) { return eq(t, "M t -> t"); }
inline bool is_lower(const Ty& t, std::size_t) { return eq(t, "C[t] t -> t"); }
inline bool is_abs(const Ty& t, std::size_t) {
  const Ty g = ty::g();
  return t.is_arrow() && t.dom().is_comp() && t.dom().eff() == ty::eff(EffKind::R, g) &&
         t.cod() == ty::R(g, ty::fn(ty::e(), t.dom().under()));
}
inline bool is_dyn_conn(const Ty& t, std::size_t) { return eq(t, "D[g] t -> D[g] t -> D[g] t"); }
inline bool is_another(const Ty& t, std::size_t) { return eq(t, "R[g] S e"); }
inline bool is_conn(const Ty& t, std::size_t) { return eq(t, "t -> t -> t"); }
inline bool is_neg(const Ty& t, std::size_t) { return eq(t, "t -> t"); }
}  // namespace shapes

inline const std::vector<Signature>& library() {
  using A = ArgKind;
  static const std::vector<Signature> lib = {
      {"entity", {A::Name}, {}, shapes::is_e, "e"},
      {"pred1", {A::Name}, {}, shapes::is_pred1, "e -> t"},
      {"pred2", {A::Name}, {}, shapes::is_pred2, "e -> e -> t"},
      {"func", {A::Name}, {}, shapes::is_func, "e -> e"},
      {"pro_vf", {}, {}, shapes::is_pro_vf, "R[e] e"},
      {"pro", {A::Index}, {}, shapes::is_pro, "R[g] e"},
      {"wh", {A::NameOrSpec}, {}, shapes::is_wh, "S e"},
      {"indef", {}, {A::NameOrSpec}, shapes::is_indef, "(e -> t) -> S e | S e"},
      {"def", {}, {A::NameOrSpec}, shapes::is_def, "(e -> t) -> M e | M e"},
      {"quant", {A::Name}, {A::NameOrSpec}, shapes::is_quant, "C[t] e"},
      {"focus", {A::Name}, {}, shapes::is_focus, "F e"},
      {"topic", {A::Name}, {}, shapes::is_topic, "T[g] e"},
      {"indef_dyn", {A::NameOrSpec}, {}, shapes::is_dyn_e, "D[g] e"},
      {"pro_dyn", {A::Index}, {}, shapes::is_dyn_e, "D[g] e"},
      {"push", {}, {}, shapes::is_push, "e -> W[e] e"},
      {"push_dyn", {}, {}, shapes::is_push_dyn, "e -> D[g] e"},
      {"exclo", {}, {}, shapes::is_exclo, "S t -> t"},
      {"mo", {}, {}, shapes::is_exclo, "S t -> t"},
      {"only", {}, {}, shapes::is_only, "F t -> t"},
      {"accom", {}, {}, shapes::is_accom, "M t -> t"},
      {"lower", {}, {}, shapes::is_lower, "C[t] t -> t"},
      {"abs", {A::Index}, {}, shapes::is_abs, "R[g] b -> R[g] (e -> b)"},
      {"and_dyn", {}, {}, shapes::is_dyn_conn, "D[g] t -> D[g] t -> D[g] t"},
      {"if_dyn", {}, {}, shapes::is_dyn_conn, "D[g] t -> D[g] t -> D[g] t"},
      {"another", {A::Index, A::NameOrSpec}, {}, shapes::is_another, "R[g] S e"},
      {"conn", {A::Name}, {}, shapes::is_conn, "t -> t -> t"},
      {"neg", {}, {}, shapes::is_neg, "t -> t"},
  };
  return lib;
}

inline const Signature* find(const std::string& name) {
  for (const auto& s : library())
    if (s.name == name) return &s;
  return nullptr;
}

}  // namespace schema

// Nested specs used as restrictors must denote e -> t.
inline void validate_entry(const std::string& word, const Entry& e) {
  const auto* sig = schema::find(e.den.schema);
  auto where = [&] { return "word '" + word + "': "; };
  if (!sig) throw validation_error(where() + "unknown schema '" + e.den.schema + "'");
  std::size_t n = e.den.args.size();
  if (n < sig->required.size() || n > sig->required.size() + sig->optional.size())
    throw validation_error(where() + "schema '" + sig->name + "' arity mismatch (got " +
                           std::to_string(n) + ")");
  for (std::size_t i = 0; i < n; ++i) {
    auto kind = i < sig->required.size() ? sig->required[i] : sig->optional[i - sig->required.size()];
    const auto& a = e.den.args[i];
    bool ok = false;
    switch (kind) {
      case schema::ArgKind::Name: ok = std::holds_alternative<std::string>(a); break;
      case schema::ArgKind::Index: ok = std::holds_alternative<std::size_t>(a); break;
      case schema::ArgKind::NameOrSpec:
        if (std::holds_alternative<std::string>(a)) ok = true;
        if (auto* p = std::get_if<std::shared_ptr<const DenSpec>>(&a)) {
          ok = (*p)->schema == "pred1";
          if (ok) validate_entry(word, Entry{parse_type("e -> t"), **p});
        }
        break;
    }
    if (!ok)
      throw validation_error(where() + "schema '" + sig->name + "' argument " +
                             std::to_string(i) + " has the wrong kind");
  }
  if (sig->name == "quant") {
    const auto& det = std::get<std::string>(e.den.args[0]);
    if (det != "every" && det != "some" && det != "no")
      throw validation_error(where() + "unknown determiner '" + det + "'");
  }
  if (sig->name == "conn") {
    const auto& op = std::get<std::string>(e.den.args[0]);
    if (op != "and" && op != "or" && op != "if")
      throw validation_error(where() + "unknown connective '" + op + "'");
  }
  if (!sig->accepts(e.ty, n))
    throw validation_error(where() + "type " + print_type(e.ty) + " does not fit schema '" +
                           sig->name + "' (" + sig->shape + ")");
}

// JSON encoding.

inline DenSpec den_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("schema") || !j["schema"].is_string())
    throw validation_error("denotation must be an object with a string 'schema'");
  for (const auto& [k, _] : j.items())
    if (k != "schema" && k != "args") throw validation_error("unknown denotation field '" + k + "'");
  DenSpec d;
  d.schema = j["schema"].get<std::string>();
  if (j.contains("args")) {
    if (!j["args"].is_array()) throw validation_error("'args' must be an array");
    for (const auto& a : j["args"]) {
      if (a.is_string()) d.args.emplace_back(a.get<std::string>());
      else if (a.is_number_unsigned()) d.args.emplace_back(a.get<std::size_t>());
      else if (a.is_object()) d.args.emplace_back(std::make_shared<const DenSpec>(den_from_json(a)));
      else throw validation_error("denotation argument must be a name, a natural or a spec");
    }
  }
  return d;
}

inline nlohmann::json den_to_json(const DenSpec& d) {
  nlohmann::json args = nlohmann::json::array();
  for (const auto& a : d.args) {
    if (auto* s = std::get_if<std::string>(&a)) args.push_back(*s);
    else if (auto* n = std::get_if<std::size_t>(&a)) args.push_back(*n);
    else args.push_back(den_to_json(*std::get<std::shared_ptr<const DenSpec>>(a)));
  }
  return {{"schema", d.schema}, {"args", args}};
}

inline Lexicon lexicon_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw validation_error("lexicon must be a JSON object");
  Lexicon lex;
  for (const auto& [word, entries] : j.items()) {
    if (!entries.is_array()) throw validation_error("word '" + word + "': entries must be an array");
    for (const auto& e : entries) {
      if (!e.is_object() || !e.contains("type") || !e.contains("den"))
        throw validation_error("word '" + word + "': entry needs 'type' and 'den'");
      for (const auto& [k, _] : e.items())
        if (k != "type" && k != "den") throw validation_error("word '" + word + "': unknown field '" + k + "'");
      Entry entry;
      try {
        entry.ty = parse_type(e["type"].get<std::string>());
      } catch (const parse_error& err) {
        throw validation_error("word '" + word + "': " + err.what());
      }
      entry.den = den_from_json(e["den"]);
      validate_entry(word, entry);
      lex.add(word, std::move(entry));
    }
  }
  return lex;
}

inline nlohmann::json lexicon_to_json(const Lexicon& lex) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [w, es] : lex.words)
    for (const auto& e : es) j[w].push_back({{"type", print_type(e.ty)}, {"den", den_to_json(e.den)}});
  return j;
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw validation_error("'" + path + "': " + e.what());
  }
}

inline Lexicon load_lexicon(const std::string& path) { return lexicon_from_json(read_json_file(path)); }

}  // namespace effects
