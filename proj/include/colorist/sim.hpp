#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "colorist/agent.hpp"
#include "colorist/palette.hpp"
#include "colorist/rng.hpp"
#include "colorist/session.hpp"

namespace colorist::sim {

enum class PolicyKind { HuePreferrer, BrightestSeeker, ContrastSeeker, RandomWalker };

struct PolicySpec {
    PolicyKind kind = PolicyKind::HuePreferrer;
    int target_arm = 7;
    /// HuePreferrer dwells to re-roll when no proposal is within this many arms.
    int tolerance = 9;
    double stay_probability = 0.05;

    /// "hue:T[:TOL]", "brightest", "contrast", "random".
    static PolicySpec parse(std::string_view text);
    std::string to_string() const;
};

/// Slot order used to break ties: von Neumann slots first, then diagonals,
/// each group in row-major order.
inline constexpr std::array<int, kMooreSize> kTieBreakOrder{1, 3, 4, 6, 0, 2, 5, 7};

/// The simulated user's reaction to a proposal ring: the Moore slot to move
/// onto, or nullopt to dwell (re-roll). Draws one value for the stay test,
/// plus one more for RandomWalker's choice.
std::optional<int> choose_slot(const PolicySpec& policy, const Palette& palette, const Proposal& proposal,
                               RngStream& rng);

/// choose_slot translated to a grid cell; returns `current` for a dwell.
Cell simulate_user_step(const PolicySpec& policy, const Palette& palette, const Proposal& proposal, Cell current,
                        RngStream& rng);

struct SimTiming {
    std::int64_t move_ms = 500;
    int opacity = 4;
};

/// Runs one full session with a simulated user starting at the grid center.
Session run_session(const SessionConfig& config, const PolicySpec& policy, std::uint64_t policy_seed,
                    const SimTiming& timing = {});

struct MetricOptions {
    /// Group id per arm; default three hue groups {0-3}, {4-6}, {7-9}.
    std::vector<int> groups{0, 0, 0, 0, 1, 1, 1, 2, 2, 2};
    int window = 100;
    /// Step block length for the concentration curve.
    int curve_block = 50;

    int group_count() const;
};

struct GroupShare {
    int group = 0;
    double share = 0.0;
    std::int64_t total = 0;
};

struct AdaptationMetrics {
    GroupShare proposals;         // whole session
    GroupShare window_proposals;  // trailing window
    GroupShare inked;
    std::vector<std::int64_t> inked_histogram;  // per arm
    std::int64_t inked_count = 0;
    std::vector<double> concentration_curve;  // modal-group proposal share per block
};

/// Share of proposals (and inked panels) falling in the most frequent color
/// group. Throws DomainError on an empty log.
AdaptationMetrics adaptation_metric(const std::vector<SessionEvent>& events, int palette_size,
                                    const MetricOptions& options = {});

struct ExperimentSpec {
    SessionConfig session;
    PolicySpec policy;
    int repetitions = 20;
    MetricOptions metrics;
    SimTiming timing;
    /// Also run every seed in random mode and report the difference.
    bool compare_random = true;

    void validate() const;
};

/// Seeds used by repetition `rep`; identical across modes.
std::uint64_t session_seed(std::uint64_t base_seed, int rep);
std::uint64_t policy_seed(std::uint64_t session_seed);

struct SessionResult {
    int rep = 0;
    Mode mode = Mode::Adaptive;
    std::uint64_t seed = 0;
    std::string log;
    std::string grid_csv;
    std::array<std::string, kBanditCount> snapshots;
    AdaptationMetrics metrics;
};

struct AdaptationReport {
    std::vector<std::int64_t> inked_histogram;
    std::int64_t inked_count = 0;
    double mean_proposal_share = 0.0;
    double mean_window_share = 0.0;
    double mean_inked_share = 0.0;
    std::vector<double> mean_concentration_curve;
    std::optional<double> random_window_share;
    std::optional<double> window_share_delta;  // mode - random
};

struct ExperimentResult {
    std::vector<SessionResult> sessions;  // the configured mode
    std::vector<SessionResult> baseline;  // random mode, when compared
    AdaptationReport report;
};

/// Runs repetitions across OpenMP threads. Output is identical to
/// run_experiment_serial for any thread count.
ExperimentResult run_experiment(const ExperimentSpec& spec);
ExperimentResult run_experiment_serial(const ExperimentSpec& spec);

/// session_NNN.jsonl, grid_NNN.csv (plus random_ prefixed baselines),
/// metrics.csv and report.json.
void write_experiment(const ExperimentResult& result, const ExperimentSpec& spec, const std::filesystem::path& dir);

std::string metrics_csv(const ExperimentResult& result);
std::string report_json(const ExperimentResult& result, const ExperimentSpec& spec);

}  // namespace colorist::sim
