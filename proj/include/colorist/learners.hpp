#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "colorist/grid.hpp"
#include "colorist/rng.hpp"

namespace colorist {

/// k-armed bandit with sample-average value estimates and epsilon-greedy
/// selection. All arms start at Q = 0, N = 0.
class Bandit {
public:
    Bandit(int arms, double epsilon, std::uint64_t seed);

    /// Epsilon-greedy choice. Consumes one draw for the explore test and one
    /// more only when exploring; the exploring draw is uniform over all arms.
    /// The greedy branch returns the lowest index among maximal values.
    int select();

    /// Lowest-index argmax of the current estimates; draws nothing.
    int greedy_arm() const;

    /// N[arm] += 1, then Q[arm] += (reward - Q[arm]) / N[arm].
    void update(int arm, double reward);

    int arms() const { return static_cast<int>(q_.size()); }
    double epsilon() const { return epsilon_; }
    const std::vector<double>& values() const { return q_; }
    const std::vector<std::uint64_t>& counts() const { return n_; }
    const RngStream& rng() const { return rng_; }

    /// Single-line key-value record: k, epsilon, seed, draws, q, n.
    /// Doubles use shortest round-trip form, so equal states give equal text.
    std::string snapshot() const;
    static Bandit from_snapshot(const std::string& record);

    friend bool operator==(const Bandit&, const Bandit&) = default;

private:
    Bandit() = default;

    std::vector<double> q_;
    std::vector<std::uint64_t> n_;
    double epsilon_ = 0.0;
    RngStream rng_;
};

/// Tabular Q-learning update over integer-coded states and actions.
/// Unseen pairs read as 0.
class QLearner {
public:
    using State = std::int64_t;
    using Action = std::int64_t;

    QLearner(double alpha, double gamma);

    double value(State s, Action a) const;
    void set_value(State s, Action a, double v) { table_[{s, a}] = v; }

    /// Q(s,a) += alpha * (reward + gamma * max_a' Q(next, a') - Q(s,a)).
    /// An empty `next_actions` marks a terminal transition (max taken as 0).
    void update(State s, Action a, double reward, State next, std::span<const Action> next_actions);

    double alpha() const { return alpha_; }
    double gamma() const { return gamma_; }

private:
    double alpha_;
    double gamma_;
    std::map<std::pair<State, Action>, double> table_;
};

}  // namespace colorist
