#pragma once

// HTTP + JSON front end over game sessions. `handle` is the whole protocol;
// `listen` only adapts it to a socket.

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "xmcts/json_io.h"
#include "xmcts/session.h"

namespace httplib {
class Server;
}

namespace xmcts {

struct HttpResponse {
  int status = 200;
  Json body;
};

class Service {
 public:
  Service();
  ~Service();

  // Routes:
  //   POST /sessions                       create
  //   GET  /sessions/{id}                  public state
  //   POST /sessions/{id}/moves            {"move": notation}
  //   POST /sessions/{id}/engine-move      engine plays and explains
  //   POST /sessions/{id}/analyze          {"move": candidate?}
  //   POST /sessions/{id}/stop             cancel a running search
  // Errors come back as {"code", "message"}.
  HttpResponse handle(std::string_view method, std::string_view path, std::string_view body);

  // Binds without serving yet; port 0 picks a free port. Returns the port.
  int bind(const std::string& host, int port);
  // Serves the bound socket until stop() is called.
  void serve();
  // bind + serve.
  void listen(const std::string& host, int port);
  void stop();

  std::size_t session_count() const;

 private:
  struct Slot {
    explicit Slot(SessionConfig cfg) : session(std::move(cfg)) {}
    std::mutex mutex;  // one request at a time per session
    GameSession session;
  };

  std::shared_ptr<Slot> find(const std::string& id) const;
  HttpResponse create(const Json& body);
  std::string next_id();
  void install_routes();

  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::uint64_t counter_ = 0;
  std::uint64_t salt_;
  std::unique_ptr<httplib::Server> server_;
};

// Public view of a session as sent over the wire.
Json session_to_json(const std::string& id, const GameSession& s);

}  // namespace xmcts
