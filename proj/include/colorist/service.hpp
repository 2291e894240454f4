#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "colorist/calibration.hpp"
#include "colorist/session.hpp"

namespace colorist::service {

enum class Phase { Calibrating, Drawing, Complete };
std::string_view to_string(Phase p);

struct ServiceOptions {
    /// Defaults applied under every StartSession config.
    SessionConfig defaults{};
    /// Skips the calibration phase when present.
    std::optional<Calibration> calibration;
    double z_span = 200.0;
};

/// Protocol core of the drawing service. Each client message (one JSON
/// object) produces zero or more server messages. Every server message
/// carries the session id and a per-session sequence number starting at 1.
///
/// Client messages:
///   StartSession     {config?, calibration?}
///   CalibrationPoint {session, corner 0..2, sample{x,y,z,t_ms}, cell?}
///   PointerMove      {session, sample{x,y,z,t_ms}}
///   ExportSession    {session}
/// Server messages: Proposals, Inked, Reroll, SessionStats, Export, Error.
class SessionService {
public:
    explicit SessionService(ServiceOptions options = {});
    ~SessionService();

    std::vector<nlohmann::json> handle(const nlohmann::json& message);
    /// Text wrapper; malformed JSON yields a single Error message.
    std::vector<std::string> handle_text(const std::string& text);

    nlohmann::json health() const;

    /// Read-only view of a session, for tests and export.
    struct View {
        Phase phase;
        const Session* session;
        std::optional<Calibration> calibration;
    };
    /// Runs `fn` on the session while holding its lock. Returns false if unknown.
    template <typename Fn>
    bool inspect(const std::string& id, Fn&& fn) const;

    /// Throws DomainError unless the session is Complete.
    std::pair<std::string, std::string> export_session(const std::string& id) const;

private:
    struct Live;

    std::shared_ptr<Live> find(const std::string& id) const;
    std::vector<nlohmann::json> start_session(const nlohmann::json& message);
    std::vector<nlohmann::json> calibration_point(Live& live, const nlohmann::json& message);
    std::vector<nlohmann::json> pointer_move(Live& live, const nlohmann::json& message);
    std::vector<nlohmann::json> export_message(Live& live);

    ServiceOptions options_;
    mutable std::mutex sessions_mutex_;
    std::map<std::string, std::shared_ptr<Live>> sessions_;
    std::uint64_t next_id_ = 1;
    std::atomic<std::uint64_t> messages_handled_{0};
};

struct SessionService::Live {
    std::string id;
    mutable std::mutex mutex;
    Phase phase = Phase::Calibrating;
    Session session;
    std::optional<Calibration> calibration;
    std::array<std::optional<CalibrationPair>, 3> corners{};
    std::optional<std::int64_t> last_sample_ms;
    std::uint64_t seq = 0;

    Live(std::string id_, const SessionConfig& config) : id(std::move(id_)), session(config) {}
    nlohmann::json message(std::string type, nlohmann::json body = nlohmann::json::object());
};

template <typename Fn>
bool SessionService::inspect(const std::string& id, Fn&& fn) const {
    auto live = find(id);
    if (!live) return false;
    std::lock_guard lock(live->mutex);
    fn(View{live->phase, &live->session, live->calibration});
    return true;
}

}  // namespace colorist::service
