#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "effects/http.hpp"
#include "effects/service.hpp"

using namespace effects;

namespace {

json config_request(const std::string& preset, const std::vector<std::string>& off, std::size_t max_type_size) {
  json c = json::object();
  if (!preset.empty()) c["preset"] = preset;
  for (const auto& r : off) c[r] = false;
  if (max_type_size) c["max_result_type_size"] = max_type_size;
  return c;
}

std::string tree_text(const json& n) {
  if (n.contains("word")) return n["word"].get<std::string>();
  std::string s = n["mode"].get<std::string>() + "(" + tree_text(n["left"]) + ", " + tree_text(n["right"]) + ")";
  return n["island"].get<bool>() ? "{" + s + "}" : s;
}

int emit(const Response& r, bool as_json, const std::function<void(const json&)>& text) {
  if (r.status != 200) {
    std::cerr << "error: " << r.body["error"].get<std::string>() << "\n";
    return 1;
  }
  if (as_json) std::cout << r.body.dump() << "\n";
  else text(r.body);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Type-driven composition with computational effects"};
  app.require_subcommand(1);
  std::string fragments_dir = default_fragments_dir();
  app.add_option("--fragments", fragments_dir, "Directory of fragment lexicons and models");

  std::string preset;
  std::vector<std::string> off;
  std::size_t max_type_size = 0;
  bool as_json = false;
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--preset", preset, "Rule preset")->check(CLI::IsMember({"default", "ch2", "ch3", "ch4", "full"}));
    sub->add_option("--off", off, "Disable a combination rule (repeatable)");
    sub->add_option("--max-type-size", max_type_size, "Bound on result type size");
    sub->add_flag("--json", as_json, "Emit the API JSON");
  };

  auto* combine = app.add_subcommand("combine", "List the ways two types combine");
  std::string left, right;
  combine->add_option("LEFT", left)->required();
  combine->add_option("RIGHT", right)->required();
  add_config(combine);

  auto* interpret = app.add_subcommand("interpret", "Derive and optionally evaluate a bracketed tree");
  std::string tree, fragment, model, dedup;
  bool denote_on = false, truncate = false;
  std::size_t max_derivations = 0;
  interpret->add_option("TREE", tree)->required();
  interpret->add_option("--fragment", fragment)->required();
  interpret->add_flag("--denote", denote_on, "Evaluate each derivation");
  interpret->add_option("--model", model, "Fragment whose model to evaluate against");
  interpret->add_option("--dedup", dedup)->check(CLI::IsMember({"semantic", "none"}));
  interpret->add_option("--max-derivations", max_derivations);
  interpret->add_flag("--truncate", truncate, "Accept a partial derivation list");
  add_config(interpret);

  auto* laws = app.add_subcommand("laws", "Check the effect laws on a synthetic model");
  std::string effect, law_preset = "default";
  std::size_t entities = 2;
  laws->add_option("--effect", effect, "Single effect, e.g. S or R[e]");
  laws->add_option("--entities", entities, "Number of entities")->check(CLI::Range(1, 4));
  laws->add_option("--preset", law_preset)->check(CLI::IsMember({"default", "quick"}));
  laws->add_flag("--json", as_json);

  auto* enumerate = app.add_subcommand("enumerate", "List all binary bracketings of a token string");
  std::string tokens;
  enumerate->add_option("TOKENS", tokens)->required();
  enumerate->add_flag("--json", as_json);

  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  int port = static_cast<int>(env_count("PORT", 8080));
  std::string host = env("HOST").value_or("127.0.0.1");
  serve->add_option("--port", port);
  serve->add_option("--host", host);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    Service svc(fragments_dir);

    if (*combine) {
      json req = {{"left", left}, {"right", right}, {"config", config_request(preset, off, max_type_size)}};
      return emit(svc.combine(req), as_json, [](const json& b) {
        for (const auto& r : b["results"])
          std::cout << r["mode"].get<std::string>() << "  ⊢  " << r["type"].get<std::string>() << "\n";
      });
    }

    if (*interpret) {
      json req = {{"tree", tree}, {"fragment", fragment}, {"config", config_request(preset, off, max_type_size)}};
      if (denote_on) req["denote"] = true;
      if (!model.empty()) req["model"] = model;
      if (!dedup.empty()) req["dedup"] = dedup;
      if (max_derivations) req["max_derivations"] = max_derivations;
      if (truncate) req["truncate"] = true;
      return emit(svc.interpret(req), as_json, [](const json& b) {
        for (const auto& d : b["derivations"]) {
          std::cout << tree_text(d["modeTree"]) << "  ⊢  " << d["type"].get<std::string>();
          if (d.contains("denotation")) std::cout << "  =  " << d["denotation"].get<std::string>();
          if (d.contains("count")) std::cout << "  (x" << d["count"].get<std::size_t>() << ")";
          std::cout << "\n";
        }
        if (b["truncated"].get<bool>()) std::cout << "(truncated)\n";
      });
    }

    if (*laws) {
      std::map<std::string, std::string> q{{"preset", law_preset}, {"entities", std::to_string(entities)}};
      if (!effect.empty()) q["effect"] = effect;
      auto r = svc.laws(q);
      int failed = 0;
      int rc = emit(r, as_json, [&](const json& b) {
        std::vector<LawReport> rs;
        for (const auto& j : b) {
          LawReport x;
          x.law = j["law"];
          x.effect = j["effect"];
          x.cases = j["cases"];
          x.counterexamples = j["counterexamples"].get<std::vector<std::string>>();
          x.passed = j["passed"];
          x.applicable = j["applicable"];
          x.exhaustive = j["exhaustive"];
          x.note = j["note"];
          if (x.applicable && !x.passed) ++failed;
          rs.push_back(x);
        }
        std::cout << law_reports_table(rs);
        if (failed == 0) std::cout << "all laws passed\n";
        else std::cout << failed << " law check(s) failed\n";
      });
      return rc != 0 || failed != 0 ? 1 : 0;
    }

    if (*enumerate) {
      return emit(svc.enumerate({{"tokens", tokens}}), as_json, [](const json& b) {
        for (const auto& t : b["trees"]) std::cout << t.get<std::string>() << "\n";
      });
    }

    if (*serve) {
      httplib::Server srv;
      mount(srv, svc);
      std::cerr << "listening on http://" << host << ":" << port << "\n";
      if (!srv.listen(host, port)) {
        std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
        return 1;
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
