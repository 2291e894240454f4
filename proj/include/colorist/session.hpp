#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "colorist/agent.hpp"
#include "colorist/grid.hpp"

namespace colorist {

struct SessionConfig {
    Mode mode = Mode::Adaptive;
    std::uint64_t seed = 0;
    int iterations = 500;
    GridDims dims{};
    std::int64_t dwell_ms = 2000;
    int palette_size = 10;
    double epsilon = 0.2;
    RewardScheme reward_scheme = RewardScheme::Cone;

    /// Throws DomainError on out-of-range fields.
    void validate() const;
    AgentConfig agent_config() const;
    friend bool operator==(const SessionConfig&, const SessionConfig&) = default;
};

struct SessionEvent {
    int step = 0;
    std::int64_t t_ms = 0;
    Cell center;
    int opacity = 1;
    /// Empty on the first step, which has no previous center.
    std::optional<Movement> movement;
    Proposal proposal;
    std::vector<Reward> rewards;
    std::optional<Cell> inked;

    friend bool operator==(const SessionEvent& a, const SessionEvent& b) {
        return a.step == b.step && a.t_ms == b.t_ms && a.center == b.center && a.opacity == b.opacity &&
               a.movement == b.movement && a.proposal.ring == b.proposal.ring &&
               a.proposal.center_arm == b.proposal.center_arm && a.rewards == b.rewards && a.inked == b.inked;
    }
};

class SessionComplete : public std::runtime_error {
public:
    SessionComplete() : std::runtime_error("session complete") {}
};

/// Log or config that does not reproduce under replay.
class IntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One drawing session: canvas, agent, and the event log of every step.
class Session {
public:
    explicit Session(const SessionConfig& config);

    /// Advances one iteration with the pointer on `cell`:
    /// classify movement, reward, ink `cell` if it carried a proposal,
    /// re-center and propose at `opacity`, record the event.
    /// Pointing at the current center is a dwell re-roll and requires at
    /// least `dwell_ms` since the previous step.
    const SessionEvent& step(Cell cell, int opacity, std::int64_t t_ms);

    bool complete() const { return static_cast<int>(events_.size()) >= config_.iterations; }
    int steps() const { return static_cast<int>(events_.size()); }
    std::optional<Cell> center() const { return center_; }
    std::optional<std::int64_t> last_step_ms() const { return last_ms_; }

    const SessionConfig& config() const { return config_; }
    const GridCanvas& canvas() const { return canvas_; }
    const ColoristAgent& agent() const { return agent_; }
    const std::vector<SessionEvent>& events() const { return events_; }

private:
    SessionConfig config_;
    GridCanvas canvas_;
    ColoristAgent agent_;
    std::optional<Cell> center_;
    std::optional<std::int64_t> last_ms_;
    std::vector<SessionEvent> events_;
};

struct SessionLog {
    SessionConfig config;
    std::vector<SessionEvent> events;
    /// Present when the log was written from a finished session.
    std::optional<std::array<std::string, kBanditCount>> final_snapshots;
    std::optional<std::string> final_grid;
};

/// JSON-lines: a header with the config, one line per event, and a trailer
/// with bandit snapshots and the grid dump.
void write_log(std::ostream& out, const Session& session);
std::string write_log(const Session& session);
SessionLog read_log(std::istream& in);
SessionLog read_log_string(const std::string& text);

struct ReplayResult {
    GridCanvas canvas;
    ColoristAgent agent;
};

/// Re-runs `log` against `config`, checking every event reproduces.
/// Throws IntegrityError on any mismatch.
ReplayResult replay(const SessionConfig& config, const SessionLog& log);

}  // namespace colorist
