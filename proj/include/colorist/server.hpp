#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "colorist/service.hpp"

namespace colorist::service {

/// Serves a SessionService on one TCP port: WebSocket upgrades carry the
/// JSON protocol (one message per text frame), `GET /health` returns the
/// service status, anything else is 404.
class Server {
public:
    /// Binds immediately; port 0 picks an ephemeral port.
    Server(SessionService& service, const std::string& address, std::uint16_t port);
    ~Server();

    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    std::uint16_t port() const;

    /// Accepts connections on a background thread until stop().
    void start();
    /// Blocks the calling thread accepting connections until stop(),
    /// SIGINT or SIGTERM.
    void run();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace colorist::service
