// One PASS/FAIL line per primary acceptance criterion. Exits non-zero if
// any criterion fails or runs past its time budget.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "colorist/calibration.hpp"
#include "colorist/learners.hpp"
#include "colorist/session.hpp"
#include "colorist/sim.hpp"

using namespace colorist;

namespace {

// 1st percentile of 100 independent 20-seed runs (base seeds 1000..1099),
// measured with derive_adaptation_bound. Never below the 0.15 floor.
constexpr double kDerivedAdaptationP1 = 0.4343;
constexpr double kAdaptationBound = kDerivedAdaptationP1 > 0.15 ? kDerivedAdaptationP1 : 0.15;

struct Outcome {
    bool ok;
    std::string detail;
};

int failures = 0;

void criterion(const char* name, double budget_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < budget_s;
    const bool pass = o.ok && in_time;
    failures += !pass;
    std::printf("%s  %-28s %s  [%.3f s / %.0f s%s]\n", pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs, budget_s,
                in_time ? "" : " OVER BUDGET");
    std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

Outcome sample_average() {
    std::mt19937_64 rng(11);
    double worst = 0.0;
    for (int seq = 0; seq < 1000; ++seq) {
        Bandit b(10, 0.2, static_cast<std::uint64_t>(seq));
        std::vector<std::vector<double>> seen(10);
        const int len = 1 + static_cast<int>(rng() % 200);
        for (int i = 0; i < len; ++i) {
            const int arm = static_cast<int>(rng() % 10);
            const double r = rng() % 2 ? 1.0 : 0.5;
            b.update(arm, r);
            seen[arm].push_back(r);
        }
        for (int a = 0; a < 10; ++a) {
            if (seen[a].empty()) {
                if (b.values()[a] != 0.0 || b.counts()[a] != 0) return {false, "untouched arm changed"};
                continue;
            }
            double sum = 0.0;
            for (double r : seen[a]) sum += r;
            const double mean = sum / static_cast<double>(seen[a].size());
            worst = std::max(worst, std::fabs(b.values()[a] - mean) / mean);
            if (b.counts()[a] != seen[a].size()) return {false, "count mismatch"};
        }
    }
    return {worst <= 1e-12, fmt("max rel err %.2e (tol 1e-12)", worst)};
}

Outcome epsilon_rate() {
    Bandit b = Bandit::from_snapshot("k=10;epsilon=0.2;seed=5;draws=0;q=0,0,0,0.9,0,0,0,0,0,0;n=0,0,0,1,0,0,0,0,0,0");
    int off = 0;
    for (int i = 0; i < 100000; ++i) off += b.select() != 3;
    const double frac = off / 100000.0;
    return {std::fabs(frac - 0.18) <= 0.01, fmt("non-greedy %.4f (0.18 +/- 0.01)", frac)};
}

std::uint64_t pulls(const Bandit& b) {
    std::uint64_t n = 0;
    for (auto c : b.counts()) n += c;
    return n;
}

// Random walks kept two cells from the border so the full cone is always on the grid.
Outcome reward_scheme() {
    std::mt19937_64 rng(21);
    long checked = 0;
    for (RewardScheme scheme : {RewardScheme::Cone, RewardScheme::MovedOnto}) {
        for (int walk = 0; walk < 200; ++walk) {
            ColoristAgent agent(AgentConfig{Mode::Adaptive, 0.2, 10, rng(), scheme});
            Cell at{12, 7};
            agent.propose(at, {24, 14});
            for (int step = 0; step < 50; ++step) {
                std::array<std::uint64_t, kBanditCount> before{};
                for (int s = 0; s < kBanditCount; ++s) before[s] = pulls(agent.bandit(s));
                Cell to{at.col + static_cast<int>(rng() % 5) - 2, at.row + static_cast<int>(rng() % 5) - 2};
                to.col = std::clamp(to.col, 3, 20);
                to.row = std::clamp(to.row, 3, 10);
                const Movement m = classify_movement(at, to);
                const auto rewards = agent.assign_rewards(m);
                int changed = 0;
                for (int s = 0; s < kBanditCount; ++s) changed += before[s] != pulls(agent.bandit(s));
                std::vector<double> values;
                for (const auto& r : rewards) values.push_back(r.value);
                std::sort(values.begin(), values.end());
                if (m.direction == Direction::Stay) {
                    if (changed != 0 || !rewards.empty()) return {false, "stay updated a bandit"};
                } else if (scheme == RewardScheme::Cone) {
                    if (changed != 3 || values != std::vector<double>{0.5, 0.5, 1.0}) return {false, "cone mismatch"};
                } else if (changed != 1 || rewards.size() != 1) {
                    return {false, "moved-onto mismatch"};
                }
                ++checked;
                at = to;
                agent.propose(at, {24, 14});
            }
        }
    }
    return {true, fmt("%.0f steps checked", static_cast<double>(checked))};
}

sim::ExperimentSpec full_scale(Mode mode) {
    sim::ExperimentSpec spec;
    spec.session.mode = mode;
    spec.session.iterations = 500;
    spec.session.seed = 1;
    spec.repetitions = 20;
    spec.policy = sim::PolicySpec::parse("hue:7");
    return spec;
}

Outcome adaptation() {
    const auto r = sim::run_experiment(full_scale(Mode::Adaptive));
    const double delta = *r.report.window_share_delta;
    return {delta >= kAdaptationBound,
            fmt("delta %.4f >= bound %.4f", delta, kAdaptationBound) +
                fmt(" (adaptive %.4f, random %.4f)", r.report.mean_window_share, *r.report.random_window_share)};
}

Outcome random_null() {
    sim::ExperimentSpec spec = full_scale(Mode::Random);
    spec.compare_random = false;
    const auto r = sim::run_experiment(spec);
    for (const auto& s : r.sessions) {
        ColoristAgent seeded(AgentConfig{Mode::Random, spec.session.epsilon, 10, s.seed, spec.session.reward_scheme});
        if (s.snapshots != seeded.snapshots()) return {false, "bandit snapshots changed"};
    }
    const double share = r.report.mean_window_share;
    return {std::fabs(share - 0.4) <= 0.03, fmt("share %.4f (0.40 +/- 0.03), snapshots unchanged", share)};
}

Outcome calibration() {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> coord(-300, 300);
    double worst = 0.0;
    for (int n = 0; n < 1000;) {
        std::array<CalibrationPair, 3> pairs{};
        for (auto& p : pairs) p = {{coord(rng), coord(rng), 100, 0}, {static_cast<int>(rng() % 24), static_cast<int>(rng() % 14)}};
        const double area = 0.5 * std::fabs((pairs[1].sample.x - pairs[0].sample.x) * (pairs[2].sample.y - pairs[0].sample.y) -
                                            (pairs[1].sample.y - pairs[0].sample.y) * (pairs[2].sample.x - pairs[0].sample.x));
        if (area < 1.0) continue;
        ++n;
        const Calibration cal = calibrate(pairs);
        for (const auto& p : pairs) {
            const auto [gx, gy] = cal.apply(p.sample.x, p.sample.y);
            worst = std::max({worst, std::fabs(gx - (p.cell.col + 0.5)), std::fabs(gy - (p.cell.row + 0.5))});
        }
    }
    int rejected = 0;
    for (int i = 0; i < 100; ++i) {
        const double x0 = coord(rng), y0 = coord(rng), dx = coord(rng), dy = coord(rng);
        const std::array<CalibrationPair, 3> line{{{{x0, y0, 0, 0}, {0, 0}},
                                                   {{x0 + dx, y0 + dy, 0, 0}, {23, 0}},
                                                   {{x0 + 2 * dx, y0 + 2 * dy, 0, 0}, {0, 13}}}};
        try {
            calibrate(line);
        } catch (const CalibrationError&) {
            ++rejected;
        }
    }
    return {worst <= 1e-9 && rejected == 100, fmt("max err %.2e (tol 1e-9), %.0f/100 collinear rejected", worst, rejected)};
}

Outcome replay_determinism() {
    for (int i = 0; i < 50; ++i) {
        SessionConfig c;
        c.seed = 500 + static_cast<std::uint64_t>(i);
        const Session s = sim::run_session(c, sim::PolicySpec::parse(i % 2 ? "hue:7" : "contrast"), c.seed * 3);
        const std::string exported = write_log(s);
        const SessionLog log = read_log_string(exported);
        const ReplayResult r = replay(log.config, log);
        if (r.canvas.export_csv() != s.canvas().export_csv()) return {false, "grid dump differs"};
        if (r.agent.snapshots() != s.agent().snapshots()) return {false, "snapshots differ"};
    }
    return {true, "50 sessions byte-identical"};
}

Outcome q_update() {
    QLearner terminal(0.5, 0.9);
    terminal.update(0, 0, 1.0, 1, {});
    QLearner frozen(0.0, 0.7);
    frozen.set_value(0, 0, 0.37);
    const std::vector<QLearner::Action> acts{0, 1};
    frozen.set_value(1, 1, 9.0);
    frozen.update(0, 0, 5.0, 1, acts);
    QLearner mixed(0.1, 1.0);
    mixed.set_value(0, 0, 0.2);
    mixed.set_value(1, 0, 0.5);
    mixed.update(0, 0, 0.0, 1, acts);
    const double m = mixed.value(0, 0);
    const bool ok = terminal.value(0, 0) == 0.5 && frozen.value(0, 0) == 0.37 && std::fabs(m - 0.23) <= 1e-15;
    return {ok, fmt("terminal %.17g, mixed %.17g", terminal.value(0, 0), m)};
}

}  // namespace

int main() {
    criterion("sample-average", 1, sample_average);
    criterion("epsilon-greedy-rate", 1, epsilon_rate);
    criterion("reward-scheme-exactness", 1, reward_scheme);
    criterion("adaptation-full-scale", 30, adaptation);
    criterion("random-mode-null", 30, random_null);
    criterion("calibration", 1, calibration);
    criterion("replay-determinism", 10, replay_determinism);
    criterion("q-update-arithmetic", 1, q_update);
    std::printf("%d failed\n", failures);
    return failures == 0 ? 0 : 1;
}
