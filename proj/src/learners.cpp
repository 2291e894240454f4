#include "colorist/learners.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <string_view>

namespace colorist {

namespace {

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

template <typename T>
T parse_number(std::string_view text) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw DomainError("bad number in bandit snapshot: '" + std::string(text) + "'");
    }
    return value;
}

template <typename T>
std::vector<T> parse_list(std::string_view text) {
    std::vector<T> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        out.push_back(parse_number<T>(text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

}  // namespace

Bandit::Bandit(int arms, double epsilon, std::uint64_t seed)
    : q_(static_cast<std::size_t>(std::max(arms, 0)), 0.0),
      n_(static_cast<std::size_t>(std::max(arms, 0)), 0),
      epsilon_(epsilon),
      rng_(seed) {
    if (arms < 1) throw DomainError("bandit needs at least one arm");
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw DomainError("epsilon must lie in [0,1]");
}

int Bandit::greedy_arm() const {
    return static_cast<int>(std::max_element(q_.begin(), q_.end()) - q_.begin());
}

int Bandit::select() {
    if (q_.empty()) throw DomainError("bandit has no arms");
    if (rng_.uniform01() < epsilon_) return rng_.uniform_index(arms());
    return greedy_arm();
}

void Bandit::update(int arm, double reward) {
    if (arm < 0 || arm >= arms()) {
        throw DomainError("arm " + std::to_string(arm) + " out of range for " + std::to_string(arms()) +
                          "-armed bandit");
    }
    const auto i = static_cast<std::size_t>(arm);
    n_[i] += 1;
    q_[i] += (reward - q_[i]) / static_cast<double>(n_[i]);
}

std::string Bandit::snapshot() const {
    std::ostringstream out;
    out << "k=" << arms() << ";epsilon=" << format_double(epsilon_) << ";seed=" << rng_.seed()
        << ";draws=" << rng_.draws() << ";q=";
    for (std::size_t i = 0; i < q_.size(); ++i) out << (i ? "," : "") << format_double(q_[i]);
    out << ";n=";
    for (std::size_t i = 0; i < n_.size(); ++i) out << (i ? "," : "") << n_[i];
    return out.str();
}

Bandit Bandit::from_snapshot(const std::string& record) {
    std::map<std::string, std::string, std::less<>> fields;
    std::string_view rest = record;
    while (!rest.empty()) {
        const auto semi = rest.find(';');
        const auto item = rest.substr(0, semi);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) throw DomainError("bad bandit snapshot field '" + std::string(item) + "'");
        fields.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
        if (semi == std::string_view::npos) break;
        rest.remove_prefix(semi + 1);
    }
    for (const char* key : {"k", "epsilon", "seed", "draws", "q", "n"}) {
        if (!fields.contains(key)) throw DomainError(std::string("bandit snapshot missing '") + key + "'");
    }

    Bandit b;
    const int k = parse_number<int>(fields["k"]);
    b.epsilon_ = parse_number<double>(fields["epsilon"]);
    b.rng_ = RngStream::restore(parse_number<std::uint64_t>(fields["seed"]),
                                parse_number<std::uint64_t>(fields["draws"]));
    b.q_ = parse_list<double>(fields["q"]);
    b.n_ = parse_list<std::uint64_t>(fields["n"]);
    if (k < 1 || b.q_.size() != static_cast<std::size_t>(k) || b.n_.size() != b.q_.size()) {
        throw DomainError("bandit snapshot arm count mismatch");
    }
    return b;
}

QLearner::QLearner(double alpha, double gamma) : alpha_(alpha), gamma_(gamma) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0,1]");
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw DomainError("gamma must lie in [0,1]");
}

double QLearner::value(State s, Action a) const {
    auto it = table_.find({s, a});
    return it == table_.end() ? 0.0 : it->second;
}

void QLearner::update(State s, Action a, double reward, State next, std::span<const Action> next_actions) {
    double best_next = 0.0;
    if (!next_actions.empty()) {
        best_next = value(next, next_actions.front());
        for (Action na : next_actions.subspan(1)) best_next = std::max(best_next, value(next, na));
    }
    const double current = value(s, a);
    table_[{s, a}] = current + alpha_ * (reward + gamma_ * best_next - current);
}

}  // namespace colorist
