#pragma once

#include <cstdlib>
#include <optional>
#include <regex>
#include <string>

#include "httplib.h"
#include "json.hpp"
#include "olr/error.hpp"
#include "olr/session.hpp"
#include "olr/target.hpp"

namespace olr {

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

inline int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownSession: return 404;
    case ErrorCode::kWrongTurn:
    case ErrorCode::kIllegalMove:
    case ErrorCode::kSessionFinished:
    case ErrorCode::kBusy: return 409;
    default: return 422;
  }
}

inline ApiResponse api_error(int status, std::string_view code, const std::string& message) {
  return {status, {{"v", 1}, {"error", {{"code", code}, {"message", message}}}}};
}

namespace detail {

inline SessionConfig session_config_from_json(const nlohmann::json& body) {
  if (!body.is_object()) throw Error(ErrorCode::kInvalidArgument, "body must be a JSON object");
  SessionConfig cfg;
  if (!body.contains("engine_strategy") || !body["engine_strategy"].is_string()) {
    throw Error(ErrorCode::kInvalidArgument, "'engine_strategy' (string) is required");
  }
  cfg.engine_strategy = body["engine_strategy"].get<std::string>();
  cfg.human_role = parse_side(body.value("human_role", std::string("painter")));
  const int q = body.value("q", 2);
  if (body.contains("target") && !body["target"].is_null()) {
    if (!body["target"].is_string()) throw Error(ErrorCode::kInvalidArgument, "'target' must be a string like \"K3\"");
    cfg.target = parse_target(body["target"].get<std::string>(), q);
  }
  if (body.contains("budget") && !body["budget"].is_null()) {
    if (!body["budget"].is_number_integer()) throw Error(ErrorCode::kInvalidArgument, "'budget' must be an integer");
    cfg.budget = body["budget"].get<long long>();
  }
  if (body.contains("seed")) cfg.seed = body["seed"].get<std::uint64_t>();
  return cfg;
}

inline SessionMove session_move_from_json(const nlohmann::json& body) {
  if (!body.is_object()) throw Error(ErrorCode::kInvalidArgument, "body must be a JSON object");
  const bool has_draw = body.contains("draw");
  const bool has_color = body.contains("color");
  if (has_draw == has_color) throw Error(ErrorCode::kInvalidArgument, "send exactly one of 'draw' or 'color'");
  if (has_draw) {
    const auto& d = body["draw"];
    if (!d.is_array() || d.size() != 2 || !d[0].is_number_unsigned() || !d[1].is_number_unsigned()) {
      throw Error(ErrorCode::kInvalidArgument, "'draw' must be [u, v] with non-negative integers");
    }
    return SessionMove::draw_edge(d[0].get<Vertex>(), d[1].get<Vertex>());
  }
  const auto& c = body["color"];
  if (!c.is_number_integer() || c.get<long long>() < 0 || c.get<long long>() > 255) {
    throw Error(ErrorCode::kInvalidArgument, "'color' must be a small integer");
  }
  return SessionMove::paint(Color(c.get<int>()));
}

}  // namespace detail

/// Routes one request. The HTTP server and the tests share this entry point.
inline ApiResponse dispatch(SessionStore& store, const std::string& method, const std::string& path,
                            const std::string& body) {
  static const std::regex kSession(R"(^/sessions/([0-9a-zA-Z_-]+)$)");
  static const std::regex kMove(R"(^/sessions/([0-9a-zA-Z_-]+)/move$)");
  try {
    auto parse_body = [&]() {
      try {
        return body.empty() ? nlohmann::json::object() : nlohmann::json::parse(body);
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::kParse, std::string("malformed JSON: ") + e.what());
      }
    };
    std::smatch m;
    if (path == "/sessions") {
      if (method != "POST") return api_error(405, "method-not-allowed", method + " " + path);
      return {201, store.create(detail::session_config_from_json(parse_body()))};
    }
    if (std::regex_match(path, m, kMove)) {
      if (method != "POST") return api_error(405, "method-not-allowed", method + " " + path);
      const std::string id = m[1];
      store.require(id);  // unknown ids answer 404 before body validation
      return {200, store.move(id, detail::session_move_from_json(parse_body()))};
    }
    if (std::regex_match(path, m, kSession)) {
      if (method == "GET") return {200, store.get(m[1])};
      if (method == "DELETE") {
        store.erase(m[1]);
        return {200, {{"v", 1}, {"deleted", std::string(m[1])}}};
      }
      return api_error(405, "method-not-allowed", method + " " + path);
    }
    return api_error(404, "not-found", path);
  } catch (const Error& e) {
    return api_error(http_status(e.code()), to_string(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return api_error(422, "invalid-argument", e.what());
  }
}

/// Registers the session routes on an httplib server.
inline void mount_routes(httplib::Server& server, SessionStore& store) {
  auto handler = [&store](const httplib::Request& req, httplib::Response& res) {
    const auto r = dispatch(store, req.method, req.path, req.body);
    res.status = r.status;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(r.body.dump(), "application/json");
  };
  server.Get(R"(/.*)", handler);
  server.Post(R"(/.*)", handler);
  server.Put(R"(/.*)", handler);
  server.Patch(R"(/.*)", handler);
  server.Delete(R"(/.*)", handler);
  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string log_path;

  /// OLR_BIND, OLR_PORT and OLR_SESSION_LOG override the defaults.
  static ServeOptions from_env() {
    ServeOptions o;
    if (const char* v = std::getenv("OLR_BIND")) o.host = v;
    if (const char* v = std::getenv("OLR_PORT")) o.port = std::atoi(v);
    if (const char* v = std::getenv("OLR_SESSION_LOG")) o.log_path = v;
    return o;
  }
};

}  // namespace olr
