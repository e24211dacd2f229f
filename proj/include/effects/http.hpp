#pragma once

#include <map>
#include <string>

#include <httplib.h>

#include "effects/service.hpp"

namespace effects {

inline void send(httplib::Response& res, const Response& r) {
  res.status = r.status;
  res.set_content(r.body.dump(), "application/json");
}

inline Response parse_body(const httplib::Request& req, json& out) {
  try {
    out = json::parse(req.body);
    return {200, {}};
  } catch (const json::parse_error& e) {
    return Service::error_response(400, std::string("malformed JSON: ") + e.what(), e.byte ? e.byte - 1 : 0);
  }
}

inline void mount(httplib::Server& srv, Service& svc) {
  auto post = [&srv, &svc](const char* path, Response (Service::*h)(const json&)) {
    srv.Post(path, [&svc, h](const httplib::Request& req, httplib::Response& res) {
      json body;
      if (auto bad = parse_body(req, body); bad.status != 200) return send(res, bad);
      send(res, (svc.*h)(body));
    });
  };
  post("/api/combine", &Service::combine);
  post("/api/interpret", &Service::interpret);
  post("/api/enumerate", &Service::enumerate);
  srv.Get("/api/health", [&svc](const httplib::Request&, httplib::Response& res) { send(res, svc.health()); });
  srv.Get("/api/fragments",
          [&svc](const httplib::Request&, httplib::Response& res) { send(res, svc.list_fragments()); });
  srv.Get("/api/laws", [&svc](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> q;
    for (const auto& [k, v] : req.params) q[k] = v;
    send(res, svc.laws(q));
  });
  srv.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  srv.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

}  // namespace effects
