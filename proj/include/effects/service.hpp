#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "effects/combine.hpp"
#include "effects/denote.hpp"
#include "effects/interpret.hpp"
#include "effects/laws.hpp"
#include "effects/lexicon.hpp"
#include "effects/model.hpp"
#include "effects/syntax.hpp"

namespace effects {

using nlohmann::json;

struct Response {
  int status = 200;
  json body;
};

// Environment overrides, read once per call. Every knob is EFFECTS_<NAME>.
inline std::optional<std::string> env(const std::string& name) {
  if (const char* v = std::getenv(("EFFECTS_" + name).c_str()); v && *v) return std::string(v);
  return std::nullopt;
}

inline bool parse_bool_text(const std::string& name, const std::string& v) {
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  throw validation_error("EFFECTS_" + name + ": expected a boolean, got '" + v + "'");
}

inline std::uint64_t parse_count_text(const std::string& name, const std::string& v) {
  std::size_t used = 0;
  unsigned long long n = 0;
  try {
    n = std::stoull(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw validation_error("EFFECTS_" + name + ": expected a number, got '" + v + "'");
  return n;
}

inline std::size_t count_field(const json& j, const char* key) {
  const auto& v = j[key];
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw validation_error(std::string("field '") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

inline std::uint64_t env_count(const std::string& name, std::uint64_t fallback) {
  auto v = env(name);
  return v ? parse_count_text(name, *v) : fallback;
}

// Defaults overlaid with EFFECTS_PRESET, EFFECTS_<FLAG>, EFFECTS_MAX_TYPE_SIZE, EFFECTS_MEMOIZE.
inline CombineConfig env_config() {
  CombineConfig c;
  if (auto p = env("PRESET")) c = CombineConfig::preset(*p);
  for (auto n : CombineConfig::kFlagNames)
    if (auto v = env(std::string(n))) c.set(n, parse_bool_text(std::string(n), *v));
  c.max_result_type_size = env_count("MAX_TYPE_SIZE", c.max_result_type_size);
  if (auto v = env("MEMOIZE")) c.memoize = parse_bool_text("MEMOIZE", *v);
  return c;
}

// Config JSON: {"preset": name, "<FLAG>": bool, ..., "max_result_type_size": n, "memoize": bool}.
// A preset replaces the rule flags; explicit flags are applied after it.
inline CombineConfig config_from_json(const json& j) {
  CombineConfig c = env_config();
  if (j.is_null()) return c;
  if (!j.is_object()) throw validation_error("config must be an object");
  for (const auto& [k, v] : j.items()) {
    if (k == "preset" || k == "max_result_type_size" || k == "memoize") continue;
    if (!c.flag(k)) throw validation_error("unknown config field '" + k + "'");
    if (!v.is_boolean()) throw validation_error("config field '" + k + "' must be a boolean");
  }
  if (j.contains("preset")) {
    if (!j["preset"].is_string()) throw validation_error("config field 'preset' must be a string");
    CombineConfig p = CombineConfig::preset(j["preset"].get<std::string>());
    p.max_result_type_size = c.max_result_type_size;
    p.memoize = c.memoize;
    c = p;
  }
  for (const auto& [k, v] : j.items())
    if (c.flag(k)) c.set(k, v.get<bool>());
  if (j.contains("max_result_type_size")) {
    c.max_result_type_size = count_field(j, "max_result_type_size");
  }
  if (j.contains("memoize")) {
    if (!j["memoize"].is_boolean()) throw validation_error("config field 'memoize' must be a boolean");
    c.memoize = j["memoize"].get<bool>();
  }
  return c;
}

inline json config_to_json(const CombineConfig& c) {
  json j = json::object();
  for (auto n : CombineConfig::kFlagNames) j[std::string(n)] = *c.flag(n);
  j["max_result_type_size"] = c.max_result_type_size;
  j["memoize"] = c.memoize;
  return j;
}

inline void reject_unknown(const json& j, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw validation_error("request body must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw validation_error("unknown field '" + k + "'");
  }
}

inline std::string required_string(const json& j, const char* key) {
  if (!j.contains(key)) throw validation_error(std::string("missing field '") + key + "'");
  if (!j[key].is_string()) throw validation_error(std::string("field '") + key + "' must be a string");
  return j[key].get<std::string>();
}

inline json mode_tree_json(const Sem& s) {
  if (s->kind == SemNode::Kind::Lex)
    return {{"word", s->word}, {"entry", s->entry}, {"type", print_type(s->ty)}};
  return {{"mode", print_mode(s->mode)},
          {"type", print_type(s->ty)},
          {"island", s->island},
          {"left", mode_tree_json(s->left)},
          {"right", mode_tree_json(s->right)}};
}

inline json combine_results_json(const Results& rs) {
  json a = json::array();
  for (const auto& r : rs) a.push_back({{"mode", print_mode(r.mode)}, {"type", print_type(r.result)}});
  return {{"results", a}};
}

struct Fragment {
  std::string name;
  Lexicon lexicon;
  Model model;
  EvalPtr evaluator;
};

// Loads every <name>.lexicon.json with its <name>.model.json companion.
inline std::map<std::string, Fragment> load_fragments(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw validation_error("fragment directory '" + dir + "' not found");
  std::map<std::string, Fragment> out;
  const std::string suffix = ".lexicon.json";
  for (const auto& ent : fs::directory_iterator(dir)) {
    std::string file = ent.path().filename().string();
    if (file.size() <= suffix.size() || file.compare(file.size() - suffix.size(), suffix.size(), suffix) != 0)
      continue;
    Fragment f;
    f.name = file.substr(0, file.size() - suffix.size());
    f.lexicon = load_lexicon(ent.path().string());
    auto model_path = (ent.path().parent_path() / (f.name + ".model.json")).string();
    if (!fs::exists(model_path)) throw validation_error("fragment '" + f.name + "' has no companion model");
    f.model = load_model(model_path);
    f.evaluator = Evaluator::make(f.model);
    out.emplace(f.name, std::move(f));
  }
  return out;
}

inline std::string default_fragments_dir() {
  if (auto d = env("FRAGMENTS_DIR")) return *d;
#ifdef EFFECTS_FRAGMENTS_DIR
  return EFFECTS_FRAGMENTS_DIR;
#else
  return "fragments";
#endif
}

// Request handlers shared by the CLI and the HTTP server. Loaded fragments are
// immutable; the only shared mutable state is the combination memo and the law
// report cache, both of which are invisible in responses.
class Service {
 public:
  explicit Service(const std::string& fragments_dir = default_fragments_dir())
      : fragments_(load_fragments(fragments_dir)) {}

  const std::map<std::string, Fragment>& fragments() const { return fragments_; }

  Response health() const { return {200, {{"ok", true}}}; }

  Response combine(const json& req) { return guard([&] { return combine_impl(req); }); }
  Response interpret(const json& req) { return guard([&] { return interpret_impl(req); }); }
  Response list_fragments() const {
    json a = json::array();
    for (const auto& [name, f] : fragments_) {
      json words = json::array();
      for (const auto& [w, es] : f.lexicon.words) words.push_back(w);
      a.push_back({{"name", name}, {"words", words}, {"model", model_to_json(f.model)}});
    }
    return {200, a};
  }
  // query: preset (default|quick), effect, entities.
  Response laws(const std::map<std::string, std::string>& query) {
    return guard([&] { return laws_impl(query); });
  }
  Response enumerate(const json& req) { return guard([&] { return enumerate_impl(req); }); }

  static Response error_response(int status, const std::string& msg, std::optional<std::size_t> pos = {}) {
    json b = {{"error", msg}};
    if (pos) b["position"] = *pos;
    return {status, b};
  }

 private:
  template <class F>
  Response guard(F&& f) {
    try {
      return f();
    } catch (const parse_error& e) {
      return error_response(400, e.what(), e.position);
    } catch (const derivation_limit& e) {
      return error_response(413, e.what());
    } catch (const json::exception& e) {
      return error_response(400, e.what());
    } catch (const error& e) {
      return error_response(400, e.what());
    }
  }

  const Fragment& fragment(const std::string& name) const {
    auto it = fragments_.find(name);
    if (it == fragments_.end()) throw validation_error("unknown fragment '" + name + "'");
    return it->second;
  }

  Response combine_impl(const json& req) {
    reject_unknown(req, {"left", "right", "config"});
    Ty l = parse_type(required_string(req, "left"));
    Ty r = parse_type(required_string(req, "right"));
    CombineConfig cfg = config_from_json(req.value("config", json()));
    return {200, combine_results_json(engine_.combine(l, r, cfg))};
  }

  Response interpret_impl(const json& req) {
    reject_unknown(req, {"tree", "fragment", "config", "denote", "model", "dedup", "max_derivations", "truncate"});
    Syn syn = parse_tree(required_string(req, "tree"));
    const Fragment& frag = fragment(required_string(req, "fragment"));
    CombineConfig cfg = config_from_json(req.value("config", json()));
    auto flag = [&](const char* k) {
      if (!req.contains(k)) return false;
      if (!req[k].is_boolean()) throw validation_error(std::string("field '") + k + "' must be a boolean");
      return req[k].get<bool>();
    };
    bool denote_on = flag("denote");
    bool truncate = flag("truncate");
    bool dedup = false;
    if (req.contains("dedup")) {
      if (req["dedup"] != "semantic" && req["dedup"] != "none")
        throw validation_error("field 'dedup' must be \"semantic\" or \"none\"");
      dedup = req["dedup"] == "semantic";
    }
    if (dedup) denote_on = true;

    EvalPtr ev = frag.evaluator;
    if (req.contains("model")) {
      const auto& m = req["model"];
      if (m.is_string()) ev = fragment(m.get<std::string>()).evaluator;
      else if (m.is_object()) ev = Evaluator::make(model_from_json(m));
      else throw validation_error("field 'model' must be a fragment name or a model object");
    }

    auto missing = unknown_words(frag.lexicon, syn);
    if (!missing.empty()) {
      std::string msg = "unknown word";
      msg += missing.size() > 1 ? "s: " : ": ";
      for (std::size_t i = 0; i < missing.size(); ++i) msg += (i ? ", " : "") + missing[i];
      throw validation_error(msg);
    }

    InterpretOptions opt;
    opt.max_derivations = env_count("MAX_DERIVATIONS", opt.max_derivations);
    if (req.contains("max_derivations")) {
      opt.max_derivations = count_field(req, "max_derivations");
      if (opt.max_derivations == 0) throw validation_error("field 'max_derivations' must be positive");
    }
    auto res = synsem(frag.lexicon, syn, cfg, engine_, opt);
    if (res.truncated && !truncate)
      throw derivation_limit("more than " + std::to_string(opt.max_derivations) +
                             " derivations; set \"truncate\": true to accept a partial list");

    json ds = json::array();
    Ops ops(ev);
    auto entry = [&](const Sem& s) {
      return json{{"type", print_type(s->ty)}, {"modeTree", mode_tree_json(s)}};
    };
    if (dedup) {
      for (const auto& [d, count] : dedup_semantic(ops, res.derivations, frag.lexicon)) {
        json j = entry(d.derivation);
        j["denotation"] = render(d.value, ev->model());
        j["count"] = count;
        ds.push_back(j);
      }
    } else {
      for (const auto& s : res.derivations) {
        json j = entry(s);
        if (denote_on) j["denotation"] = render(denote(ops, s, frag.lexicon), ev->model());
        ds.push_back(j);
      }
    }
    return {200, {{"derivations", ds}, {"truncated", res.truncated}}};
  }

  Response enumerate_impl(const json& req) {
    reject_unknown(req, {"tokens"});
    auto toks = tokenize(required_string(req, "tokens"));
    json a = json::array();
    for (const auto& t : enumerate_trees(toks)) a.push_back(print_tree(t));
    return {200, {{"trees", a}}};
  }

  Response laws_impl(const std::map<std::string, std::string>& query) {
    for (const auto& [k, v] : query)
      if (k != "preset" && k != "effect" && k != "entities")
        throw validation_error("unknown query parameter '" + k + "'");
    auto get = [&](const char* k, const std::string& d) {
      auto it = query.find(k);
      return it == query.end() ? d : it->second;
    };
    std::string preset = get("preset", "default");
    std::string effect = get("effect", "");
    std::uint64_t n = parse_count_text("entities", get("entities", "2"));
    if (n < 1 || n > 4) throw validation_error("entities must be between 1 and 4");

    std::string key = preset + "|" + effect + "|" + std::to_string(n);
    {
      std::lock_guard lk(laws_mu_);
      if (auto it = laws_cache_.find(key); it != laws_cache_.end()) return {200, it->second};
    }
    LawOptions opt = law_preset(preset);
    auto ev = Evaluator::make(Model::synthetic(n));
    Ops ops(ev);
    std::vector<LawReport> reports;
    if (effect.empty()) {
      reports = check_all_laws(ops, opt);
      for (auto more : {check_adjunction_laws(ops, opt), check_equivalences(ops, opt)})
        reports.insert(reports.end(), more.begin(), more.end());
    } else {
      reports = check_all_laws(ops, opt, {parse_eff(effect)});
    }
    json body = law_reports_to_json(reports);
    std::lock_guard lk(laws_mu_);
    laws_cache_.emplace(key, body);
    return {200, body};
  }

 public:
  // "default" runs at the full acceptance budget; "quick" is for interactive use.
  static LawOptions law_preset(const std::string& name) {
    LawOptions opt;
    opt.exhaustive_limit = 100'000;
    opt.samples = 5'000;
    if (name == "default") return opt;
    if (name == "quick") {
      opt.exhaustive_limit = 20'000;
      opt.samples = 300;
      return opt;
    }
    throw validation_error("unknown law preset '" + name + "'");
  }

 private:
  std::map<std::string, Fragment> fragments_;
  Engine engine_;
  std::mutex laws_mu_;
  std::map<std::string, json> laws_cache_;
};

}  // namespace effects
