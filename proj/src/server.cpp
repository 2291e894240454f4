#include "colorist/server.hpp"

#include <sys/socket.h>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include <list>
#include <mutex>
#include <set>
#include <thread>

namespace colorist::service {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

struct Server::Impl {
    SessionService& service;
    asio::io_context ioc;
    tcp::acceptor acceptor;
    std::thread runner;
    std::mutex mutex;
    std::set<std::shared_ptr<tcp::socket>> live;
    // TODO: reap finished worker threads; they are only joined in stop().
    std::list<std::thread> workers;
    bool stopping = false;

    Impl(SessionService& s, const std::string& address, std::uint16_t port)
        : service(s), acceptor(ioc, tcp::endpoint(asio::ip::make_address(address), port)) {}

    void accept_next() {
        acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
            if (ec) return;
            auto shared = std::make_shared<tcp::socket>(std::move(socket));
            {
                std::lock_guard lock(mutex);
                if (stopping) return;
                live.insert(shared);
                workers.emplace_back([this, shared] {
                    serve_connection(*shared);
                    std::lock_guard inner(mutex);
                    live.erase(shared);
                });
            }
            accept_next();
        });
    }

    void serve_connection(tcp::socket& socket) {
        try {
            beast::flat_buffer buffer;
            http::request<http::string_body> request;
            http::read(socket, buffer, request);

            if (websocket::is_upgrade(request)) {
                websocket::stream<tcp::socket&> ws(socket);
                ws.accept(request);
                while (true) {
                    beast::flat_buffer frame;
                    ws.read(frame);
                    for (const auto& reply : service.handle_text(beast::buffers_to_string(frame.data()))) {
                        ws.text(true);
                        ws.write(asio::buffer(reply));
                    }
                }
            }

            http::response<http::string_body> response;
            response.version(request.version());
            response.set(http::field::content_type, "application/json");
            if (request.method() == http::verb::get && request.target() == "/health") {
                response.result(http::status::ok);
                response.body() = service.health().dump();
            } else {
                response.result(http::status::not_found);
                response.body() = R"({"error":"not found"})";
            }
            response.keep_alive(false);
            response.prepare_payload();
            http::write(socket, response);
            beast::error_code ignored;
            socket.shutdown(tcp::socket::shutdown_send, ignored);
        } catch (const std::exception&) {
            // Client went away; session state stays as the last full message left it.
        }
    }

    void halt() {
        {
            std::lock_guard lock(mutex);
            if (stopping) return;
            stopping = true;
            for (const auto& s : live) ::shutdown(s->native_handle(), SHUT_RDWR);
        }
        asio::post(ioc, [this] {
            beast::error_code ignored;
            acceptor.close(ignored);
        });
        ioc.stop();
    }

    void stop() {
        halt();
        if (runner.joinable() && runner.get_id() != std::this_thread::get_id()) runner.join();
        std::list<std::thread> joining;
        {
            std::lock_guard lock(mutex);
            joining.swap(workers);
        }
        for (auto& t : joining) t.join();
    }
};

Server::Server(SessionService& service, const std::string& address, std::uint16_t port)
    : impl_(std::make_unique<Impl>(service, address, port)) {}

Server::~Server() { stop(); }

std::uint16_t Server::port() const { return impl_->acceptor.local_endpoint().port(); }

void Server::start() {
    impl_->accept_next();
    impl_->runner = std::thread([this] { impl_->ioc.run(); });
}

void Server::run() {
    asio::signal_set signals(impl_->ioc, SIGINT, SIGTERM);
    signals.async_wait([this](beast::error_code ec, int) {
        if (!ec) impl_->halt();
    });
    impl_->accept_next();
    impl_->ioc.run();
    impl_->stop();
}

void Server::stop() {
    if (impl_) impl_->stop();
}

}  // namespace colorist::service
