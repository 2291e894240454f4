#include "colorist/session.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "colorist/serialization.hpp"

namespace colorist {

void SessionConfig::validate() const {
    dims.validate();
    if (iterations < 1) throw DomainError("iterations must be at least 1");
    if (dwell_ms < 0) throw DomainError("dwell threshold must be non-negative");
    if (palette_size < 2) throw DomainError("palette needs at least two colors");
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw DomainError("epsilon must lie in [0,1]");
}

AgentConfig SessionConfig::agent_config() const {
    return {mode, epsilon, palette_size, seed, reward_scheme};
}

Session::Session(const SessionConfig& config)
    : config_((config.validate(), config)), canvas_(config.dims), agent_(config.agent_config()) {
    events_.reserve(static_cast<std::size_t>(config.iterations));
}

const SessionEvent& Session::step(Cell cell, int opacity, std::int64_t t_ms) {
    if (complete()) throw SessionComplete();
    if (!config_.dims.contains(cell.col, cell.row)) throw DomainError("pointer cell outside grid");
    if (opacity < 1 || opacity > 4) throw DomainError("opacity level must be 1..4");
    if (last_ms_ && t_ms < *last_ms_) throw DomainError("timestamps must not decrease");

    SessionEvent event;
    event.step = steps();
    event.t_ms = t_ms;
    event.center = cell;
    event.opacity = opacity;

    if (center_) {
        const Movement movement = classify_movement(*center_, cell);
        if (movement.direction == Direction::Stay && t_ms - *last_ms_ < config_.dwell_ms) {
            throw ContractError("re-roll before the dwell threshold elapsed");
        }
        event.movement = movement;
        event.rewards = agent_.assign_rewards(movement);
        if (movement.direction != Direction::Stay && canvas_.ink_panel(cell)) event.inked = cell;
    }

    event.proposal = agent_.propose(cell, config_.dims);
    std::array<std::optional<PanelPaint>, kMooreSize> paints;
    for (int slot = 0; slot < kMooreSize; ++slot) {
        if (event.proposal.ring[slot]) paints[slot] = PanelPaint{*event.proposal.ring[slot], opacity};
    }
    canvas_.set_proposals(cell, paints);

    center_ = cell;
    last_ms_ = t_ms;
    events_.push_back(std::move(event));
    return events_.back();
}

namespace {

constexpr const char* kLogFormat = "colorist-session/1";

}  // namespace

void write_log(std::ostream& out, const Session& session) {
    nlohmann::json header{{"type", "header"}, {"format", kLogFormat}, {"config", session.config()}};
    out << header.dump() << '\n';
    for (const auto& event : session.events()) {
        nlohmann::json line = event;
        line["type"] = "event";
        out << line.dump() << '\n';
    }
    if (session.complete()) {
        nlohmann::json trailer{{"type", "final"},
                               {"steps", session.steps()},
                               {"bandits", session.agent().snapshots()},
                               {"grid", session.canvas().export_csv()}};
        out << trailer.dump() << '\n';
    }
}

std::string write_log(const Session& session) {
    std::ostringstream out;
    write_log(out, session);
    return out.str();
}

SessionLog read_log(std::istream& in) {
    SessionLog log;
    bool have_header = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
            const std::string type = j.at("type").get<std::string>();
            if (type == "header") {
                if (j.at("format").get<std::string>() != kLogFormat) throw IntegrityError("unknown log format");
                log.config = j.at("config").get<SessionConfig>();
                have_header = true;
            } else if (type == "event") {
                log.events.push_back(j.get<SessionEvent>());
            } else if (type == "final") {
                log.final_snapshots = j.at("bandits").get<std::array<std::string, kBanditCount>>();
                log.final_grid = j.at("grid").get<std::string>();
            } else {
                throw IntegrityError("unknown record type '" + type + "'");
            }
        } catch (const nlohmann::json::exception& e) {
            throw IntegrityError("log line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!have_header) throw IntegrityError("log has no header line");
    return log;
}

SessionLog read_log_string(const std::string& text) {
    std::istringstream in(text);
    return read_log(in);
}

ReplayResult replay(const SessionConfig& config, const SessionLog& log) {
    if (!(config == log.config)) throw IntegrityError("log was recorded with a different config");

    Session session(config);
    for (std::size_t i = 0; i < log.events.size(); ++i) {
        const SessionEvent& recorded = log.events[i];
        if (recorded.step != static_cast<int>(i)) {
            throw IntegrityError("event " + std::to_string(i) + " carries step index " + std::to_string(recorded.step));
        }
        try {
            const SessionEvent& redone = session.step(recorded.center, recorded.opacity, recorded.t_ms);
            if (!(redone == recorded)) throw IntegrityError("event " + std::to_string(i) + " does not reproduce");
        } catch (const SessionComplete&) {
            throw IntegrityError("log is longer than the configured iterations");
        } catch (const std::logic_error& e) {
            throw IntegrityError("event " + std::to_string(i) + ": " + e.what());
        }
    }
    if (log.final_snapshots && *log.final_snapshots != session.agent().snapshots()) {
        throw IntegrityError("final bandit snapshots do not reproduce");
    }
    if (log.final_grid && *log.final_grid != session.canvas().export_csv()) {
        throw IntegrityError("final grid does not reproduce");
    }
    return {session.canvas(), session.agent()};
}

}  // namespace colorist
