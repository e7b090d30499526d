#pragma once

#include <memory>
#include <string>

#include "cascom/session_service.hpp"

namespace httplib {
class Server;
}

namespace cascom {

/// Serves a SessionService over HTTP. All responses are JSON.
class HttpServer {
 public:
  explicit HttpServer(SessionService& service);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds `host:port`; port 0 picks a free port. Returns the bound port or -1.
  int bind(const std::string& host, int port);
  /// Blocks until stop() is called.
  bool listen();
  /// Blocks until a concurrent listen() is accepting connections.
  void wait_until_ready() const;
  void stop();

 private:
  SessionService& service_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace cascom
