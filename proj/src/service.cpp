#include "colorist/service.hpp"

#include "colorist/palette.hpp"
#include "colorist/serialization.hpp"

namespace colorist::service {

using nlohmann::json;

std::string_view to_string(Phase p) {
    switch (p) {
        case Phase::Calibrating: return "calibrating";
        case Phase::Drawing: return "drawing";
        case Phase::Complete: return "complete";
    }
    return "?";
}

namespace {

json error(std::string_view session, std::string_view code, std::string_view text) {
    return json{{"type", "Error"}, {"session", session}, {"seq", 0}, {"code", code}, {"text", text}};
}

PointerSample sample_from(const json& j) {
    PointerSample s;
    s.x = j.at("x").get<double>();
    s.y = j.at("y").get<double>();
    s.z = j.value("z", 0.0);
    s.t_ms = j.at("t_ms").get<std::int64_t>();
    return s;
}

json calibration_to_json(const Calibration& c) {
    return json{{"affine", c.affine}, {"z_ref", c.z_ref}, {"z_span", c.z_span}, {"behind_sign", c.behind_sign}};
}

Calibration calibration_from_json(const json& j) {
    Calibration c;
    c.affine = j.at("affine").get<std::array<double, 6>>();
    c.z_ref = j.value("z_ref", 0.0);
    c.z_span = j.value("z_span", 200.0);
    c.behind_sign = j.value("behind_sign", 1);
    if (!(c.z_span > 0.0) || (c.behind_sign != 1 && c.behind_sign != -1)) {
        throw DomainError("invalid calibration depth banding");
    }
    if (c.affine[0] * c.affine[4] - c.affine[1] * c.affine[3] == 0.0) throw DomainError("degenerate calibration");
    return c;
}

json ring_paints(const Session& session, const SessionEvent& event) {
    const Palette palette(session.config().palette_size);
    json paints = json::array();
    for (int slot = 0; slot < kMooreSize; ++slot) {
        if (!event.proposal.ring[slot]) continue;
        const int arm = *event.proposal.ring[slot];
        paints.push_back({{"cell", event.center + kMooreOffsets[slot]},
                          {"arm", arm},
                          {"opacity", event.opacity},
                          {"color", palette.hex(arm)}});
    }
    return paints;
}

}  // namespace

json SessionService::Live::message(std::string type, json body) {
    body["type"] = std::move(type);
    body["session"] = id;
    body["seq"] = ++seq;
    return body;
}

SessionService::SessionService(ServiceOptions options) : options_(std::move(options)) {}

SessionService::~SessionService() = default;

std::shared_ptr<SessionService::Live> SessionService::find(const std::string& id) const {
    std::lock_guard lock(sessions_mutex_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
}

json SessionService::health() const {
    std::lock_guard lock(sessions_mutex_);
    return json{{"status", "ok"}, {"sessions", sessions_.size()}, {"messages", messages_handled_.load()}};
}

std::vector<std::string> SessionService::handle_text(const std::string& text) {
    std::vector<std::string> out;
    json message;
    try {
        message = json::parse(text);
    } catch (const json::exception& e) {
        out.push_back(error("", "bad_json", e.what()).dump());
        return out;
    }
    for (const auto& reply : handle(message)) out.push_back(reply.dump());
    return out;
}

std::vector<json> SessionService::handle(const json& message) {
    ++messages_handled_;
    if (!message.is_object() || !message.contains("type") || !message["type"].is_string()) {
        return {error("", "bad_message", "message needs a string 'type'")};
    }
    const std::string type = message["type"].get<std::string>();
    if (type == "StartSession") return start_session(message);

    const std::string id = message.value("session", std::string{});
    auto live = find(id);
    if (!live) return {error(id, "unknown_session", "no session '" + id + "'")};

    std::lock_guard lock(live->mutex);
    try {
        if (type == "CalibrationPoint") return calibration_point(*live, message);
        if (type == "PointerMove") return pointer_move(*live, message);
        if (type == "ExportSession") return export_message(*live);
    } catch (const json::exception& e) {
        return {live->message("Error", {{"code", "bad_message"}, {"text", e.what()}})};
    } catch (const std::logic_error& e) {
        return {live->message("Error", {{"code", "rejected"}, {"text", e.what()}})};
    }
    return {live->message("Error", {{"code", "bad_message"}, {"text", "unknown message type '" + type + "'"}})};
}

std::vector<json> SessionService::start_session(const json& message) {
    SessionConfig config = options_.defaults;
    std::optional<Calibration> calibration = options_.calibration;
    try {
        if (message.contains("config")) {
            json merged = options_.defaults;
            merged.update(message["config"]);
            config = merged.get<SessionConfig>();
        }
        config.validate();
        if (message.contains("calibration") && !message["calibration"].is_null()) {
            calibration = calibration_from_json(message["calibration"]);
        }
    } catch (const json::exception& e) {
        return {error("", "bad_config", e.what())};
    } catch (const std::logic_error& e) {
        return {error("", "bad_config", e.what())};
    }

    std::shared_ptr<Live> live;
    {
        std::lock_guard lock(sessions_mutex_);
        live = std::make_shared<Live>("session-" + std::to_string(next_id_++), config);
        sessions_[live->id] = live;
    }
    std::lock_guard lock(live->mutex);
    if (calibration) {
        live->calibration = calibration;
        live->phase = Phase::Drawing;
    }
    return {live->message("SessionStats", {{"step", 0},
                                           {"iterations", config.iterations},
                                           {"mode", to_string(config.mode)},
                                           {"phase", to_string(live->phase)},
                                           {"config", config}})};
}

std::vector<json> SessionService::calibration_point(Live& live, const json& message) {
    if (live.phase != Phase::Calibrating) {
        return {live.message("Error", {{"code", "phase"}, {"text", "session is not calibrating"}})};
    }
    const int corner = message.at("corner").get<int>();
    if (corner < 0 || corner > 2) throw DomainError("corner must be 0, 1 or 2");
    const GridDims& dims = live.session.config().dims;
    const std::array<Cell, 3> default_corners{Cell{0, 0}, Cell{dims.width - 1, 0}, Cell{0, dims.height - 1}};
    Cell cell = message.contains("cell") ? message["cell"].get<Cell>() : default_corners[static_cast<std::size_t>(corner)];
    if (!dims.contains(cell.col, cell.row)) throw DomainError("calibration cell outside grid");
    live.corners[static_cast<std::size_t>(corner)] = CalibrationPair{sample_from(message.at("sample")), cell};

    std::vector<json> out;
    if (live.corners[0] && live.corners[1] && live.corners[2]) {
        try {
            live.calibration = calibrate({*live.corners[0], *live.corners[1], *live.corners[2]}, options_.z_span);
        } catch (const CalibrationError& e) {
            live.corners = {};
            out.push_back(live.message("Error", {{"code", "calibration_failed"}, {"text", e.what()}}));
            return out;
        }
        live.phase = Phase::Drawing;
    }
    json stats{{"step", 0},
               {"iterations", live.session.config().iterations},
               {"mode", to_string(live.session.config().mode)},
               {"phase", to_string(live.phase)}};
    if (live.calibration) stats["calibration"] = calibration_to_json(*live.calibration);
    out.push_back(live.message("SessionStats", stats));
    return out;
}

std::vector<json> SessionService::pointer_move(Live& live, const json& message) {
    if (live.phase != Phase::Drawing) {
        return {live.message("Error", {{"code", "phase"}, {"text", "session is " + std::string(to_string(live.phase))}})};
    }
    const PointerSample sample = sample_from(message.at("sample"));
    if (live.last_sample_ms && sample.t_ms < *live.last_sample_ms) {
        return {live.message("Error", {{"code", "non_monotonic"}, {"text", "sample timestamps must not decrease"}})};
    }
    live.last_sample_ms = sample.t_ms;

    Session& session = live.session;
    const Cell cell = to_cell(*live.calibration, sample, session.config().dims);
    const int opacity = z_to_opacity(*live.calibration, sample.z);

    const auto center = session.center();
    const bool moved = !center || *center != cell;
    const bool dwelled = !moved && sample.t_ms - *session.last_step_ms() >= session.config().dwell_ms;
    if (!moved && !dwelled) return {};

    const SessionEvent& event = session.step(cell, opacity, sample.t_ms);
    std::vector<json> out;
    if (event.inked) {
        out.push_back(live.message("Inked", {{"cell", *event.inked}, {"paint", session.canvas().painted().at(*event.inked)}}));
    }
    out.push_back(live.message(moved ? "Proposals" : "Reroll", {{"center", event.center}, {"paints", ring_paints(session, event)}}));
    if (session.complete()) live.phase = Phase::Complete;
    out.push_back(live.message("SessionStats", {{"step", session.steps()},
                                                {"iterations", session.config().iterations},
                                                {"mode", to_string(session.config().mode)},
                                                {"phase", to_string(live.phase)}}));
    return out;
}

std::vector<json> SessionService::export_message(Live& live) {
    if (live.phase != Phase::Complete) {
        return {live.message("Error", {{"code", "incomplete"}, {"text", "session has not finished"}})};
    }
    return {live.message("Export", {{"log", write_log(live.session)}, {"grid", live.session.canvas().export_csv()}})};
}

std::pair<std::string, std::string> SessionService::export_session(const std::string& id) const {
    auto live = find(id);
    if (!live) throw DomainError("no session '" + id + "'");
    std::lock_guard lock(live->mutex);
    if (live->phase != Phase::Complete) throw DomainError("session has not finished");
    return {write_log(live->session), live->session.canvas().export_csv()};
}

}  // namespace colorist::service
