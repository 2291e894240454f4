#include "colorist/agent.hpp"

#include <cstdlib>

namespace colorist {

namespace {

constexpr std::uint64_t kRandomModeStream = 100;

int sign(int v) { return (v > 0) - (v < 0); }

}  // namespace

std::string_view to_string(Mode m) { return m == Mode::Adaptive ? "adaptive" : "random"; }

std::string_view to_string(RewardScheme s) { return s == RewardScheme::Cone ? "cone" : "moved-onto"; }

std::string_view to_string(Direction d) {
    switch (d) {
        case Direction::Stay: return "stay";
        case Direction::Left: return "left";
        case Direction::Right: return "right";
        case Direction::Up: return "up";
        case Direction::Down: return "down";
    }
    return "stay";
}

Mode parse_mode(std::string_view text) {
    if (text == "adaptive") return Mode::Adaptive;
    if (text == "random") return Mode::Random;
    throw DomainError("unknown mode '" + std::string(text) + "'");
}

RewardScheme parse_reward_scheme(std::string_view text) {
    if (text == "cone") return RewardScheme::Cone;
    if (text == "moved-onto") return RewardScheme::MovedOnto;
    throw DomainError("unknown reward scheme '" + std::string(text) + "'");
}

Direction parse_direction(std::string_view text) {
    for (Direction d : {Direction::Stay, Direction::Left, Direction::Right, Direction::Up, Direction::Down}) {
        if (to_string(d) == text) return d;
    }
    throw DomainError("unknown direction '" + std::string(text) + "'");
}

Movement classify_movement(Cell from, Cell to) {
    const Offset raw{to.col - from.col, to.row - from.row};
    Movement m{Direction::Stay, raw};
    if (raw.dc == 0 && raw.dr == 0) return m;
    if (std::abs(raw.dc) >= std::abs(raw.dr)) {
        m.direction = raw.dc > 0 ? Direction::Right : Direction::Left;
    } else {
        m.direction = raw.dr > 0 ? Direction::Down : Direction::Up;
    }
    return m;
}

int Proposal::size() const {
    int n = 0;
    for (const auto& arm : ring) n += arm.has_value();
    return n;
}

std::vector<std::pair<int, double>> reward_targets(const Movement& movement, RewardScheme scheme) {
    std::vector<std::pair<int, double>> targets;
    if (movement.direction == Direction::Stay) return targets;

    if (scheme == RewardScheme::MovedOnto) {
        const Offset toward{sign(movement.raw.dc), sign(movement.raw.dr)};
        targets.emplace_back(*moore_index(toward), toward.is_von_neumann() ? 1.0 : 0.5);
        return targets;
    }

    Offset ahead;
    switch (movement.direction) {
        case Direction::Left: ahead = {-1, 0}; break;
        case Direction::Right: ahead = {1, 0}; break;
        case Direction::Up: ahead = {0, -1}; break;
        case Direction::Down: ahead = {0, 1}; break;
        case Direction::Stay: break;
    }
    targets.emplace_back(*moore_index(ahead), 1.0);
    if (ahead.dc != 0) {
        targets.emplace_back(*moore_index({ahead.dc, -1}), 0.5);
        targets.emplace_back(*moore_index({ahead.dc, 1}), 0.5);
    } else {
        targets.emplace_back(*moore_index({-1, ahead.dr}), 0.5);
        targets.emplace_back(*moore_index({1, ahead.dr}), 0.5);
    }
    return targets;
}

ColoristAgent::ColoristAgent(const AgentConfig& config)
    : config_(config), random_(derive_seed(config.seed, kRandomModeStream)) {
    bandits_.reserve(kBanditCount);
    for (int slot = 0; slot < kBanditCount; ++slot) {
        bandits_.emplace_back(config.arms, config.epsilon, derive_seed(config.seed, static_cast<std::uint64_t>(slot)));
    }
}

ColoristAgent ColoristAgent::restore(const AgentConfig& config,
                                     const std::array<std::string, kBanditCount>& snapshots) {
    ColoristAgent agent(config);
    for (int slot = 0; slot < kBanditCount; ++slot) {
        Bandit b = Bandit::from_snapshot(snapshots[static_cast<std::size_t>(slot)]);
        if (b.arms() != config.arms) throw DomainError("snapshot arm count does not match config");
        agent.bandits_[static_cast<std::size_t>(slot)] = std::move(b);
    }
    return agent;
}

Proposal ColoristAgent::propose(Cell center, const GridDims& dims) {
    if (!dims.contains(center.col, center.row)) throw DomainError("proposal center outside grid");

    Proposal p;
    auto choose = [&](int slot) {
        return config_.mode == Mode::Adaptive ? bandits_[static_cast<std::size_t>(slot)].select()
                                              : random_.uniform_index(config_.arms);
    };
    for (int slot = 0; slot < kMooreSize; ++slot) {
        const Cell c = center + kMooreOffsets[slot];
        if (dims.contains(c.col, c.row)) p.ring[slot] = choose(slot);
    }
    p.center_arm = choose(kCenterSlot);

    for (int slot = 0; slot < kMooreSize; ++slot) last_[slot] = p.ring[slot];
    last_[kCenterSlot] = p.center_arm;
    awaiting_reward_ = true;
    return p;
}

std::vector<Reward> ColoristAgent::assign_rewards(const Movement& movement) {
    if (!awaiting_reward_) throw ContractError("assign_rewards called without an intervening propose");
    awaiting_reward_ = false;

    std::vector<Reward> applied;
    if (config_.mode == Mode::Random) return applied;
    for (const auto& [slot, value] : reward_targets(movement, config_.reward_scheme)) {
        const auto& arm = last_[static_cast<std::size_t>(slot)];
        if (!arm) continue;
        bandits_[static_cast<std::size_t>(slot)].update(*arm, value);
        applied.push_back({slot, *arm, value});
    }
    return applied;
}

std::array<std::string, kBanditCount> ColoristAgent::snapshots() const {
    std::array<std::string, kBanditCount> out;
    for (int slot = 0; slot < kBanditCount; ++slot) out[slot] = bandits_[static_cast<std::size_t>(slot)].snapshot();
    return out;
}

}  // namespace colorist
