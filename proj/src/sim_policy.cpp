#include "colorist/sim.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace colorist::sim {

namespace {

int parse_int(std::string_view text, std::string_view what) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw DomainError("bad " + std::string(what) + " '" + std::string(text) + "'");
    }
    return v;
}

/// Picks the visible slot with the highest score; ties go to the earliest
/// slot in kTieBreakOrder.
template <typename Score>
std::optional<int> best_slot(const Proposal& proposal, Score score) {
    std::optional<int> best;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int slot : kTieBreakOrder) {
        if (!proposal.ring[slot]) continue;
        const double s = score(*proposal.ring[slot]);
        if (!best || s > best_score) {
            best = slot;
            best_score = s;
        }
    }
    return best;
}

}  // namespace

PolicySpec PolicySpec::parse(std::string_view text) {
    std::vector<std::string_view> parts;
    while (true) {
        const auto colon = text.find(':');
        parts.push_back(text.substr(0, colon));
        if (colon == std::string_view::npos) break;
        text.remove_prefix(colon + 1);
    }

    PolicySpec spec;
    const auto kind = parts.front();
    if (kind == "hue") {
        spec.kind = PolicyKind::HuePreferrer;
        if (parts.size() < 2 || parts.size() > 3) throw DomainError("hue policy takes hue:TARGET[:TOLERANCE]");
        spec.target_arm = parse_int(parts[1], "target arm");
        if (parts.size() == 3) spec.tolerance = parse_int(parts[2], "tolerance");
        if (spec.target_arm < 0 || spec.tolerance < 0) throw DomainError("hue policy parameters must be non-negative");
        return spec;
    }
    if (parts.size() != 1) throw DomainError("policy '" + std::string(kind) + "' takes no parameters");
    if (kind == "brightest") {
        spec.kind = PolicyKind::BrightestSeeker;
    } else if (kind == "contrast") {
        spec.kind = PolicyKind::ContrastSeeker;
    } else if (kind == "random") {
        spec.kind = PolicyKind::RandomWalker;
    } else {
        throw DomainError("unknown policy '" + std::string(kind) + "'");
    }
    return spec;
}

std::string PolicySpec::to_string() const {
    switch (kind) {
        case PolicyKind::HuePreferrer:
            return "hue:" + std::to_string(target_arm) + ":" + std::to_string(tolerance);
        case PolicyKind::BrightestSeeker: return "brightest";
        case PolicyKind::ContrastSeeker: return "contrast";
        case PolicyKind::RandomWalker: return "random";
    }
    return "?";
}

std::optional<int> choose_slot(const PolicySpec& policy, const Palette& palette, const Proposal& proposal,
                               RngStream& rng) {
    if (proposal.size() == 0) throw DomainError("simulated user needs at least one proposal");
    if (rng.uniform01() < policy.stay_probability) return std::nullopt;

    switch (policy.kind) {
        case PolicyKind::HuePreferrer: {
            auto slot = best_slot(proposal, [&](int arm) { return -std::abs(arm - policy.target_arm); });
            if (std::abs(*proposal.ring[*slot] - policy.target_arm) > policy.tolerance) return std::nullopt;
            return slot;
        }
        case PolicyKind::BrightestSeeker:
            return best_slot(proposal, [&](int arm) { return palette.luminance(arm); });
        case PolicyKind::ContrastSeeker: {
            double mean = 0.0;
            for (const auto& arm : proposal.ring) mean += arm.value_or(0);
            mean /= proposal.size();
            return best_slot(proposal, [&](int arm) { return std::fabs(arm - mean); });
        }
        case PolicyKind::RandomWalker: {
            int pick = rng.uniform_index(proposal.size());
            for (int slot = 0; slot < kMooreSize; ++slot) {
                if (proposal.ring[slot] && pick-- == 0) return slot;
            }
            break;
        }
    }
    return std::nullopt;
}

Cell simulate_user_step(const PolicySpec& policy, const Palette& palette, const Proposal& proposal, Cell current,
                        RngStream& rng) {
    const auto slot = choose_slot(policy, palette, proposal, rng);
    return slot ? current + kMooreOffsets[*slot] : current;
}

Session run_session(const SessionConfig& config, const PolicySpec& policy, std::uint64_t policy_seed,
                    const SimTiming& timing) {
    Session session(config);
    const Palette palette(config.palette_size);
    RngStream user_rng(policy_seed);

    Cell cell{config.dims.width / 2, config.dims.height / 2};
    std::int64_t t_ms = 0;
    while (true) {
        const SessionEvent& event = session.step(cell, timing.opacity, t_ms);
        if (session.complete()) break;
        const Cell next = simulate_user_step(policy, palette, event.proposal, cell, user_rng);
        t_ms += next == cell ? config.dwell_ms : timing.move_ms;
        cell = next;
    }
    return session;
}

}  // namespace colorist::sim
