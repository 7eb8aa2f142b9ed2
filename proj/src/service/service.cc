#include "xmcts/service.h"

#include <random>
#include <sstream>

#include "httplib.h"
#include "xmcts/errors.h"
#include "xmcts/transcript.h"

namespace xmcts {

namespace {

HttpResponse error(int status, std::string code, std::string message) {
  return {status, {{"code", std::move(code)}, {"message", std::move(message)}}};
}

std::vector<std::string> split_path(std::string_view path) {
  if (auto q = path.find('?'); q != std::string_view::npos) path = path.substr(0, q);
  std::vector<std::string> parts;
  size_t pos = 0;
  while (pos < path.size()) {
    if (path[pos] == '/') {
      ++pos;
      continue;
    }
    const size_t end = std::min(path.find('/', pos), path.size());
    parts.emplace_back(path.substr(pos, end - pos));
    pos = end;
  }
  return parts;
}

Json parse_body(std::string_view body) {
  if (body.find_first_not_of(" \t\r\n") == std::string_view::npos) return Json::object();
  try {
    Json j = Json::parse(body);
    if (!j.is_object()) throw ParseError("request body must be a JSON object");
    return j;
  } catch (const nlohmann::json::parse_error&) {
    throw ParseError("request body is not valid JSON");
  }
}

Json turn_to_wire(const TurnRecord& t) {
  Json j = {{"player", index(t.mover) + 1}, {"move", t.move}, {"state", t.state}};
  if (t.report) j["report"] = report_to_json(*t.report);
  if (t.snapshot) j["snapshot"] = snapshot_to_json(*t.snapshot);
  return j;
}

}  // namespace

Json session_to_json(const std::string& id, const GameSession& s) {
  const GameState& st = s.state();
  Json legal = Json::array();
  for (const auto& m : legal_moves(st)) legal.push_back(m.notation);
  Json history = Json::array();
  for (const auto& t : s.history()) {
    Json h = {{"player", index(t.mover) + 1}, {"move", t.move}};
    if (t.report) h["prose"] = t.report->prose;
    history.push_back(std::move(h));
  }
  Json status = "ongoing";
  Json winner = nullptr;
  if (auto o = st.outcome()) {
    const double u = o->utility(PlayerId::kFirst);
    status = u == 0 ? "draw" : "win";
    if (u != 0) winner = u > 0 ? 1 : 2;
  }
  const auto& cfg = s.config();
  return {{"id", id},
          {"game", game_name(cfg.game)},
          {"size", format_board_size(cfg.size)},
          {"width", cfg.size.width},
          {"height", cfg.size.height},
          {"players", {controller_to_json(cfg.players[0]), controller_to_json(cfg.players[1])}},
          {"state", serialize(st)},
          {"to_move", index(st.to_move()) + 1},
          {"move_count", st.move_count()},
          {"status", status},
          {"winner", winner},
          {"engine_turn", s.automatic_turn()},
          {"legal_moves", legal},
          {"history", history}};
}

Service::Service() : salt_(std::random_device{}()), server_(std::make_unique<httplib::Server>()) {
  install_routes();
}

Service::~Service() { stop(); }

std::size_t Service::session_count() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

std::string Service::next_id() {
  std::ostringstream out;
  out << std::hex << (salt_ ^ (++counter_ * 0x9E3779B97F4A7C15ULL));
  return out.str();
}

std::shared_ptr<Service::Slot> Service::find(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

HttpResponse Service::create(const Json& body) {
  SessionConfig cfg;
  if (!body.contains("game") || !body["game"].is_string()) throw ParseError("missing field 'game'");
  cfg.game = parse_game_kind(body["game"].get<std::string>());
  cfg.size = default_board_size(cfg.game);
  if (body.contains("size")) {
    if (!body["size"].is_string()) throw ParseError("field 'size' must be a string like \"7x6\"");
    cfg.size = parse_board_size(body["size"].get<std::string>());
  }
  const Json players =
      body.value("players", Json::array({{{"kind", "human"}}, {{"kind", "mcts"}, {"enhancements", "solver"}}}));
  if (!players.is_array() || players.size() != 2) throw ParseError("field 'players' must list two controllers");
  for (size_t i = 0; i < 2; ++i) {
    ControllerSpec spec = controller_from_json(players[i]);
    if (spec.kind == ControllerKind::kEngine && !spec.search.iterations && !spec.search.time_ms) {
      spec.search.iterations = 1000;
    }
    cfg.players[i] = spec;
  }
  if (body.contains("verbosity")) {
    if (!body["verbosity"].is_number_integer()) throw ParseError("field 'verbosity' must be an integer");
    cfg.verbosity = body["verbosity"].get<int>();
  }
  if (body.contains("analysis_iterations") && !body["analysis_iterations"].is_null()) {
    if (!body["analysis_iterations"].is_number_integer()) {
      throw ParseError("field 'analysis_iterations' must be an integer");
    }
    cfg.analysis_iterations = body["analysis_iterations"].get<std::int64_t>();
  }
  auto slot = std::make_shared<Slot>(std::move(cfg));
  std::string id;
  {
    std::lock_guard lock(mutex_);
    id = next_id();
    sessions_[id] = slot;
  }
  std::lock_guard lock(slot->mutex);
  return {201, session_to_json(id, slot->session)};
}

HttpResponse Service::handle(std::string_view method, std::string_view path, std::string_view body) {
  const auto parts = split_path(path);
  try {
    if (parts.empty() || parts[0] != "sessions" || parts.size() > 3) {
      return error(404, "not_found", "no route for " + std::string(path));
    }
    if (parts.size() == 1) {
      if (method != "POST") return error(405, "method_not_allowed", "use POST /sessions");
      return create(parse_body(body));
    }
    auto slot = find(parts[1]);
    if (!slot) return error(404, "not_found", "unknown session '" + parts[1] + "'");
    if (parts.size() == 2) {
      if (method != "GET") return error(405, "method_not_allowed", "use GET /sessions/{id}");
      std::lock_guard lock(slot->mutex);
      return {200, session_to_json(parts[1], slot->session)};
    }
    const std::string& action = parts[2];
    if (method != "POST") return error(405, "method_not_allowed", "use POST for " + action);
    if (action == "stop") {
      // Deliberately not taking the session lock: the search holds it.
      slot->session.request_stop();
      return {200, {{"stopping", true}}};
    }
    const Json req = parse_body(body);
    std::lock_guard lock(slot->mutex);
    GameSession& s = slot->session;
    if (action == "moves") {
      if (!req.contains("move") || !req["move"].is_string()) throw ParseError("missing field 'move'");
      try {
        const auto& turn = s.submit_move(req["move"].get<std::string>());
        return {200, {{"turn", turn_to_wire(turn)}, {"session", session_to_json(parts[1], s)}}};
      } catch (const IllegalMoveError& e) {
        Json legal = Json::array();
        for (const auto& m : legal_moves(s.state())) legal.push_back(m.notation);
        HttpResponse r = error(422, "illegal_move", e.what());
        r.body["legal_moves"] = legal;
        return r;
      }
    }
    if (action == "engine-move") {
      const auto& turn = s.engine_move();
      return {200, {{"move", turn.move}, {"turn", turn_to_wire(turn)}, {"session", session_to_json(parts[1], s)}}};
    }
    if (action == "analyze") {
      std::optional<std::string> candidate;
      if (req.contains("move") && !req["move"].is_null()) {
        if (!req["move"].is_string()) throw ParseError("field 'move' must be a string");
        candidate = req["move"].get<std::string>();
      }
      const auto report = s.analyze(candidate ? std::optional<std::string_view>(*candidate) : std::nullopt);
      Json out = {{"report", report_to_json(report)}};
      out["candidate"] = candidate ? Json(*candidate) : Json(nullptr);
      return {200, out};
    }
    return error(404, "not_found", "unknown action '" + action + "'");
  } catch (const ParseError& e) {
    return error(400, "bad_request", e.what());
  } catch (const ConfigError& e) {
    return error(400, "invalid_config", e.what());
  } catch (const IllegalMoveError& e) {
    return error(422, "illegal_move", e.what());
  } catch (const UsageError& e) {
    return error(409, "conflict", e.what());
  }
}

void Service::install_routes() {
  auto adapt = [this](const httplib::Request& req, httplib::Response& res) {
    const HttpResponse r = handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  server_->set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Headers", "Content-Type"},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  server_->Get(R"(/sessions/.*)", adapt);
  server_->Post(R"(/sessions.*)", adapt);
  server_->Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

int Service::bind(const std::string& host, int port) {
  const int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw UsageError("cannot listen on " + host + ":" + std::to_string(port));
  return bound;
}

void Service::serve() { server_->listen_after_bind(); }

void Service::listen(const std::string& host, int port) {
  bind(host, port);
  serve();
}

void Service::stop() { server_->stop(); }

}  // namespace xmcts
