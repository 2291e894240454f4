#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "colorist/grid.hpp"
#include "colorist/learners.hpp"
#include "colorist/rng.hpp"

namespace colorist {

enum class Mode { Adaptive, Random };
enum class RewardScheme { Cone, MovedOnto };
enum class Direction { Stay, Left, Right, Up, Down };

std::string_view to_string(Mode m);
std::string_view to_string(RewardScheme s);
std::string_view to_string(Direction d);
Mode parse_mode(std::string_view text);
RewardScheme parse_reward_scheme(std::string_view text);
Direction parse_direction(std::string_view text);

/// Thrown when agent calls arrive out of the propose/reward order.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct Movement {
    Direction direction = Direction::Stay;
    Offset raw;  // new center minus old center
    friend bool operator==(const Movement&, const Movement&) = default;
};

/// Dominant-axis quantization of the center delta. Equal non-zero |dc| and
/// |dr| resolve to the horizontal direction.
Movement classify_movement(Cell from, Cell to);

/// Slot index of the center bandit; slots 0..7 follow kMooreOffsets.
inline constexpr int kCenterSlot = kMooreSize;
inline constexpr int kBanditCount = kMooreSize + 1;

struct Proposal {
    /// Arm per Moore slot; empty for offsets that fall outside the grid.
    std::array<std::optional<int>, kMooreSize> ring{};
    int center_arm = 0;

    int size() const;
};

struct Reward {
    int slot = 0;
    int arm = 0;
    double value = 0.0;
    friend bool operator==(const Reward&, const Reward&) = default;
};

struct AgentConfig {
    Mode mode = Mode::Adaptive;
    double epsilon = 0.2;
    int arms = 10;
    std::uint64_t seed = 0;
    RewardScheme reward_scheme = RewardScheme::Cone;
};

/// Nine bandits (eight Moore slots plus the center) that pick neighborhood
/// colors and learn from the direction the user moves next.
class ColoristAgent {
public:
    explicit ColoristAgent(const AgentConfig& config);

    /// Rebuilds an agent whose bandits carry the given snapshot records.
    /// The random-mode stream restarts from the config seed.
    static ColoristAgent restore(const AgentConfig& config, const std::array<std::string, kBanditCount>& snapshots);

    const AgentConfig& config() const { return config_; }
    const Bandit& bandit(int slot) const { return bandits_.at(static_cast<std::size_t>(slot)); }

    /// Adaptive: every in-bounds slot's bandit selects. Random: uniform arms
    /// from the session stream, bandits untouched.
    Proposal propose(Cell center, const GridDims& dims);

    /// Rewards the bandits implicated by `movement` against the last
    /// proposal. Stay and Random mode update nothing. Slots with no proposal
    /// in the last round (off-grid) are skipped.
    std::vector<Reward> assign_rewards(const Movement& movement);

    bool awaiting_reward() const { return awaiting_reward_; }

    std::array<std::string, kBanditCount> snapshots() const;

    friend bool operator==(const ColoristAgent& a, const ColoristAgent& b) {
        return a.bandits_ == b.bandits_ && a.random_ == b.random_ && a.last_ == b.last_ &&
               a.awaiting_reward_ == b.awaiting_reward_;
    }

private:
    AgentConfig config_;
    std::vector<Bandit> bandits_;
    RngStream random_;
    std::array<std::optional<int>, kBanditCount> last_{};
    bool awaiting_reward_ = false;
};

/// Reward targets for `movement` under `scheme`, as (slot, value) pairs.
std::vector<std::pair<int, double>> reward_targets(const Movement& movement, RewardScheme scheme);

}  // namespace colorist
